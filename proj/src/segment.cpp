// Copyright 2026 the rlseg authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rlseg/segment.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace rlseg {

std::size_t SegmentationResult::total_words() const {
    std::size_t n = 0;
    for (const SegmentedLine& l : lines) n += l.words.size();
    return n;
}

std::size_t SegmentationResult::total_chars() const {
    std::size_t n = 0;
    for (const SegmentedLine& l : lines)
        for (const WordSegment& w : l.words) n += w.chars.size();
    return n;
}

std::vector<LineSegment> segment_lines(const ProfileCurve& profile, int tau, CostLedger* ledger) {
    if (profile.axis != Axis::Rows)
        throw std::invalid_argument("segment_lines expects a row profile");
    if (tau < 0) throw std::invalid_argument("noise tolerance must be non-negative");

    std::vector<LineSegment> lines;
    int start = 0;
    int prev_end = 0;
    const int m = static_cast<int>(profile.values.size());
    for (int x = 1; x <= m; ++x) {
        bool ink = profile.values[static_cast<std::size_t>(x - 1)] > tau;
        if (ink && start == 0) {
            start = x;
        } else if (!ink && start != 0) {
            lines.push_back({{start, x - 1}, start - prev_end - 1});
            prev_end = x - 1;
            start = 0;
        }
    }
    if (start != 0) lines.push_back({{start, m}, start - prev_end - 1});
    if (ledger) ledger->line_scan_steps += static_cast<std::uint64_t>(m);
    return lines;
}

ThresholdEstimate estimate_word_space_threshold(const std::vector<int>& gaps) {
    for (int g : gaps)
        if (g < 1) throw std::invalid_argument("gap widths must be >= 1");
    if (gaps.empty()) return {2, ThresholdSource::NoGaps};

    if (gaps.size() >= 4) {
        double c1 = static_cast<double>(*std::min_element(gaps.begin(), gaps.end()));
        double c2 = static_cast<double>(*std::max_element(gaps.begin(), gaps.end()));
        if (c1 < c2) {
            for (int iter = 0; iter < 100; ++iter) {
                double sum1 = 0, sum2 = 0;
                int n1 = 0, n2 = 0;
                for (int g : gaps) {
                    if (std::abs(g - c1) <= std::abs(g - c2)) {
                        sum1 += g;
                        ++n1;
                    } else {
                        sum2 += g;
                        ++n2;
                    }
                }
                if (n1 == 0 || n2 == 0) break;
                double m1 = sum1 / n1, m2 = sum2 / n2;
                if (m1 == c1 && m2 == c2) break;
                c1 = m1;
                c2 = m2;
            }
            if (c1 < c2 && c2 >= 2.0 * c1)
                return {static_cast<int>(std::ceil((c1 + c2) / 2.0)),
                        ThresholdSource::Clustered};
        }
    }

    std::vector<int> sorted = gaps;
    std::sort(sorted.begin(), sorted.end());
    std::size_t mid = sorted.size() / 2;
    double median = sorted.size() % 2 ? sorted[mid]
                                      : (sorted[mid - 1] + sorted[mid]) / 2.0;
    int threshold = std::max(2, static_cast<int>(std::ceil(2.5 * median)));
    return {threshold, ThresholdSource::Fallback};
}

namespace {

// Space/ink classification of a line band: character column runs and the
// blank gaps between consecutive runs, from one scanner pass.
struct LineColumns {
    std::vector<Interval> chars;
    std::vector<int> gaps;
};

LineColumns scan_line_columns(const RleDocument& doc, Interval band, CostLedger* ledger) {
    ColumnScanner scanner(doc, band);
    LineColumns out;
    int run_start = 0;
    int last_end = 0;
    for (int y = 1; y <= doc.width; ++y) {
        bool ink = !scanner.advance().is_space();
        if (ink && run_start == 0) {
            run_start = y;
            if (last_end != 0) out.gaps.push_back(y - last_end - 1);
        } else if (!ink && run_start != 0) {
            out.chars.push_back({run_start, y - 1});
            last_end = y - 1;
            run_start = 0;
        }
    }
    if (run_start != 0) out.chars.push_back({run_start, doc.width});
    if (ledger) {
        ledger->scanner_pops += scanner.pops();
        ledger->scanner_advances += static_cast<std::uint64_t>(scanner.columns_emitted());
    }
    return out;
}

std::vector<WordSegment> group_words(const LineColumns& columns, Interval rows, int threshold) {
    std::vector<WordSegment> words;
    for (std::size_t i = 0; i < columns.chars.size(); ++i) {
        Interval cols = columns.chars[i];
        bool new_word = words.empty() || columns.gaps[i - 1] >= threshold;
        if (new_word) {
            words.push_back({cols, rows, {CharSegment{cols, rows}}});
        } else {
            words.back().cols.hi = cols.hi;
            words.back().chars.push_back({cols, rows});
        }
    }
    return words;
}

}  // namespace

std::vector<WordSegment> segment_words_chars(const RleDocument& doc, const LineSegment& line,
                                             int threshold, CostLedger* ledger) {
    if (threshold < 1) throw std::invalid_argument("word-space threshold must be >= 1");
    LineColumns columns = scan_line_columns(doc, line.rows, ledger);
    return group_words(columns, line.rows, threshold);
}

SegmentationResult segment_document(const RleDocument& doc, const SegmentConfig& config) {
    validate(doc);
    if (config.threshold && *config.threshold < 1)
        throw std::invalid_argument("word-space threshold must be >= 1");
    SegmentationResult result;
    result.height = doc.height();
    result.width = doc.width;
    result.config = config;

    ProfileCurve profile = row_profile(doc);
    result.cost.profile_additions += profile.addition_count;
    std::vector<LineSegment> lines = segment_lines(profile, config.tau, &result.cost);

    for (const LineSegment& line : lines) {
        LineColumns columns = scan_line_columns(doc, line.rows, &result.cost);
        int threshold = config.threshold ? *config.threshold
                                         : estimate_word_space_threshold(columns.gaps).threshold;
        result.lines.push_back({line, threshold, group_words(columns, line.rows, threshold)});
    }
    return result;
}

bool same_boxes(const SegmentationResult& a, const SegmentationResult& b) {
    return a.height == b.height && a.width == b.width && a.lines == b.lines;
}

// ---------------------------------------------------------------- JSON

namespace {

using nlohmann::json;

json interval_json(Interval v) { return json::array({v.lo, v.hi}); }

Interval interval_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a [lo, hi] pair");
    return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

std::string seg_to_json(const SegmentationResult& result) {
    json lines = json::array();
    for (const SegmentedLine& l : result.lines) {
        json words = json::array();
        for (const WordSegment& w : l.words) {
            json chars = json::array();
            for (const CharSegment& c : w.chars) chars.push_back({{"cols", interval_json(c.cols)}});
            words.push_back({{"cols", interval_json(w.cols)}, {"chars", std::move(chars)}});
        }
        lines.push_back({{"rows", interval_json(l.line.rows)},
                         {"gap_above", l.line.gap_above},
                         {"threshold", l.threshold},
                         {"words", std::move(words)}});
    }
    json config{{"tau", result.config.tau}};
    config["threshold"] = result.config.threshold ? json(*result.config.threshold) : json("auto");
    json cost{{"profile_additions", result.cost.profile_additions},
              {"scanner_pops", result.cost.scanner_pops},
              {"scanner_advances", result.cost.scanner_advances},
              {"line_scan_steps", result.cost.line_scan_steps},
              {"pixel_ops", result.cost.pixel_ops}};
    json doc{{"height", result.height},
             {"width", result.width},
             {"lines", std::move(lines)},
             {"config", std::move(config)},
             {"cost", std::move(cost)}};
    return doc.dump(2) + "\n";
}

SegmentationResult seg_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("segmentation JSON: ") + e.what(), e.byte);
    }
    SegmentationResult result;
    result.height = doc.at("height").get<int>();
    result.width = doc.at("width").get<int>();
    if (doc.contains("config")) {
        const json& config = doc["config"];
        result.config.tau = config.value("tau", 0);
        if (config.contains("threshold") && config["threshold"].is_number_integer())
            result.config.threshold = config["threshold"].get<int>();
    }
    if (doc.contains("cost")) {
        const json& cost = doc["cost"];
        result.cost.profile_additions = cost.value("profile_additions", std::uint64_t{0});
        result.cost.scanner_pops = cost.value("scanner_pops", std::uint64_t{0});
        result.cost.scanner_advances = cost.value("scanner_advances", std::uint64_t{0});
        result.cost.line_scan_steps = cost.value("line_scan_steps", std::uint64_t{0});
        result.cost.pixel_ops = cost.value("pixel_ops", std::uint64_t{0});
    }
    for (const json& jl : doc.value("lines", json::array())) {
        SegmentedLine line;
        line.line.rows = interval_from(jl.at("rows"));
        line.line.gap_above = jl.value("gap_above", 0);
        line.threshold = jl.value("threshold", 0);
        for (const json& jw : jl.value("words", json::array())) {
            WordSegment word;
            word.cols = interval_from(jw.at("cols"));
            word.rows = line.line.rows;
            for (const json& jc : jw.value("chars", json::array()))
                word.chars.push_back({interval_from(jc.at("cols")), line.line.rows});
            line.words.push_back(std::move(word));
        }
        result.lines.push_back(std::move(line));
    }
    return result;
}

}  // namespace rlseg
