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

#include "rlseg/eval.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <vector>

#include <json.hpp>

namespace rlseg {

double f_measure(double precision, double recall) {
    return (precision + recall) > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

// ------------------------------------------------- pixel-domain oracle

SegmentationResult reference_segment(const BitImage& img, const SegmentConfig& config) {
    if (config.tau < 0) throw std::invalid_argument("noise tolerance must be non-negative");
    if (config.threshold && *config.threshold < 1)
        throw std::invalid_argument("word-space threshold must be >= 1");

    SegmentationResult result;
    result.height = img.height();
    result.width = img.width();
    result.config = config;
    CostLedger& cost = result.cost;
    const int m = img.height(), n = img.width();

    // Row sums straight from pixels.
    std::vector<int> row_sum(static_cast<std::size_t>(m), 0);
    for (int x = 1; x <= m; ++x) {
        int sum = 0;
        for (int y = 1; y <= n; ++y) {
            sum += img.black(x, y) ? 1 : 0;
            ++cost.pixel_ops;
        }
        row_sum[static_cast<std::size_t>(x - 1)] = sum;
    }

    // Maximal bands with sum > tau.
    struct Band {
        Interval rows;
        int gap_above;
    };
    std::vector<Band> bands;
    int start = 0, prev_end = 0;
    for (int x = 1; x <= m; ++x) {
        bool ink = row_sum[static_cast<std::size_t>(x - 1)] > config.tau;
        if (ink && start == 0) start = x;
        if (!ink && start != 0) {
            bands.push_back({{start, x - 1}, start - prev_end - 1});
            prev_end = x - 1;
            start = 0;
        }
    }
    if (start != 0) bands.push_back({{start, m}, start - prev_end - 1});

    for (const Band& band : bands) {
        // Blank-column classification inside the band.
        std::vector<Interval> chars;
        std::vector<int> gaps;
        int run_start = 0, last_end = 0;
        for (int y = 1; y <= n; ++y) {
            bool ink = false;
            for (int x = band.rows.lo; x <= band.rows.hi; ++x) {
                ++cost.pixel_ops;
                if (img.black(x, y)) {
                    ink = true;
                    break;
                }
            }
            if (ink && run_start == 0) {
                run_start = y;
                if (last_end != 0) gaps.push_back(y - last_end - 1);
            } else if (!ink && run_start != 0) {
                chars.push_back({run_start, y - 1});
                last_end = y - 1;
                run_start = 0;
            }
        }
        if (run_start != 0) chars.push_back({run_start, n});

        int threshold = config.threshold ? *config.threshold
                                         : estimate_word_space_threshold(gaps).threshold;

        SegmentedLine line;
        line.line = {band.rows, band.gap_above};
        line.threshold = threshold;
        for (std::size_t i = 0; i < chars.size(); ++i) {
            bool new_word = line.words.empty() || gaps[i - 1] >= threshold;
            if (new_word)
                line.words.push_back({chars[i], band.rows, {CharSegment{chars[i], band.rows}}});
            else {
                line.words.back().cols.hi = chars[i].hi;
                line.words.back().chars.push_back({chars[i], band.rows});
            }
        }
        result.lines.push_back(std::move(line));
    }
    return result;
}

// ------------------------------------------------------------ matching

namespace {

// A box is up to four boundaries; lines use only the two row bounds.
using Box = std::array<int, 4>;

std::vector<Box> line_boxes(const SegmentationResult& r) {
    std::vector<Box> out;
    for (const SegmentedLine& l : r.lines) out.push_back({l.line.rows.lo, l.line.rows.hi, 0, 0});
    return out;
}

std::vector<Box> line_boxes(const GroundTruth& t) {
    std::vector<Box> out;
    for (const TruthLine& l : t.lines) out.push_back({l.rows.lo, l.rows.hi, 0, 0});
    return out;
}

std::vector<Box> word_boxes(const SegmentationResult& r) {
    std::vector<Box> out;
    for (const SegmentedLine& l : r.lines)
        for (const WordSegment& w : l.words)
            out.push_back({w.rows.lo, w.rows.hi, w.cols.lo, w.cols.hi});
    return out;
}

std::vector<Box> word_boxes(const GroundTruth& t) {
    std::vector<Box> out;
    for (const TruthLine& l : t.lines)
        for (const TruthWord& w : l.words)
            out.push_back({l.rows.lo, l.rows.hi, w.cols.lo, w.cols.hi});
    return out;
}

std::vector<Box> char_boxes(const SegmentationResult& r) {
    std::vector<Box> out;
    for (const SegmentedLine& l : r.lines)
        for (const WordSegment& w : l.words)
            for (const CharSegment& c : w.chars)
                out.push_back({c.rows.lo, c.rows.hi, c.cols.lo, c.cols.hi});
    return out;
}

std::vector<Box> char_boxes(const GroundTruth& t) {
    std::vector<Box> out;
    for (const TruthLine& l : t.lines)
        for (const TruthWord& w : l.words)
            for (const TruthChar& c : w.chars)
                out.push_back({l.rows.lo, l.rows.hi, c.cols.lo, c.cols.hi});
    return out;
}

Metrics match_greedy(const std::vector<Box>& pred, const std::vector<Box>& truth, int tol) {
    std::vector<bool> taken(truth.size(), false);
    std::int64_t tp = 0;
    for (const Box& p : pred) {
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (taken[i]) continue;
            const Box& t = truth[i];
            bool hit = true;
            for (int k = 0; k < 4; ++k)
                if (std::abs(p[k] - t[k]) > tol) {
                    hit = false;
                    break;
                }
            if (hit) {
                taken[i] = true;
                ++tp;
                break;
            }
        }
    }
    Metrics m;
    m.tp = tp;
    m.fp = static_cast<std::int64_t>(pred.size()) - tp;
    m.fn = static_cast<std::int64_t>(truth.size()) - tp;
    m.precision = (m.tp + m.fp) > 0 ? 100.0 * m.tp / (m.tp + m.fp) : 100.0;
    m.recall = (m.tp + m.fn) > 0 ? 100.0 * m.tp / (m.tp + m.fn) : 100.0;
    m.f_measure = f_measure(m.precision, m.recall);
    return m;
}

}  // namespace

EvalReport evaluate(const SegmentationResult& pred, const GroundTruth& truth, int tol) {
    if (pred.height != truth.height || pred.width != truth.width)
        throw std::invalid_argument("prediction and truth disagree on page dimensions");
    if (tol < 0) throw std::invalid_argument("boundary tolerance must be non-negative");
    EvalReport report;
    report.lines = match_greedy(line_boxes(pred), line_boxes(truth), tol);
    report.words = match_greedy(word_boxes(pred), word_boxes(truth), tol);
    report.chars = match_greedy(char_boxes(pred), char_boxes(truth), tol);
    return report;
}

SegmentationResult as_segmentation(const GroundTruth& truth) {
    SegmentationResult result;
    result.height = truth.height;
    result.width = truth.width;
    int prev_end = 0;
    for (const TruthLine& tl : truth.lines) {
        SegmentedLine line;
        line.line = {tl.rows, tl.rows.lo - prev_end - 1};
        prev_end = tl.rows.hi;
        for (const TruthWord& tw : tl.words) {
            WordSegment word{tw.cols, tl.rows, {}};
            for (const TruthChar& tc : tw.chars) word.chars.push_back({tc.cols, tl.rows});
            line.words.push_back(std::move(word));
        }
        result.lines.push_back(std::move(line));
    }
    return result;
}

// --------------------------------------------------------- cost report

CostReport cost_report(const RleDocument& doc, const SegmentationResult& result) {
    if (result.height != doc.height() || result.width != doc.width)
        throw std::invalid_argument("result was not produced from this document");
    CostReport report;
    report.height = doc.height();
    report.width = doc.width;
    for (const RleRow& row : doc.rows) report.run_entries += row.runs.size();
    report.profile_additions = result.cost.profile_additions;
    report.scanner_pops = result.cost.scanner_pops;
    report.scanner_advances = result.cost.scanner_advances;
    report.pixel_ops = result.cost.pixel_ops;
    report.naive_pixel_ops =
        static_cast<std::uint64_t>(doc.height()) * static_cast<std::uint64_t>(doc.width);
    report.addition_ratio = report.naive_pixel_ops
                                ? static_cast<double>(report.profile_additions) /
                                      static_cast<double>(report.naive_pixel_ops)
                                : 0.0;
    return report;
}

std::string cost_to_json(const CostReport& r) {
    nlohmann::json j{{"height", r.height},
                     {"width", r.width},
                     {"run_entries", r.run_entries},
                     {"profile_additions", r.profile_additions},
                     {"scanner_pops", r.scanner_pops},
                     {"scanner_advances", r.scanner_advances},
                     {"pixel_ops", r.pixel_ops},
                     {"naive_pixel_ops", r.naive_pixel_ops},
                     {"addition_ratio", r.addition_ratio}};
    return j.dump(2) + "\n";
}

std::string cost_to_csv(const CostReport& r) {
    std::string out =
        "height,width,run_entries,profile_additions,scanner_pops,scanner_advances,"
        "pixel_ops,naive_pixel_ops,addition_ratio\n";
    out += std::to_string(r.height) + "," + std::to_string(r.width) + "," +
           std::to_string(r.run_entries) + "," + std::to_string(r.profile_additions) + "," +
           std::to_string(r.scanner_pops) + "," + std::to_string(r.scanner_advances) + "," +
           std::to_string(r.pixel_ops) + "," + std::to_string(r.naive_pixel_ops) + "," +
           std::to_string(r.addition_ratio) + "\n";
    return out;
}

}  // namespace rlseg
