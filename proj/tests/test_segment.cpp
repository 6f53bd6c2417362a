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

#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "rlseg/segment.hpp"

using namespace rlseg;
using namespace rlseg::testing;

namespace {

ProfileCurve curve_of(std::vector<int> values) {
    ProfileCurve p;
    p.axis = Axis::Rows;
    p.values = std::move(values);
    return p;
}

// Box-only comparison against ground truth (thresholds and gaps aside).
bool boxes_match_truth(const SegmentationResult& result, const GroundTruth& truth) {
    if (result.lines.size() != truth.lines.size()) return false;
    for (std::size_t l = 0; l < truth.lines.size(); ++l) {
        if (result.lines[l].line.rows != truth.lines[l].rows) return false;
        if (result.lines[l].words.size() != truth.lines[l].words.size()) return false;
        for (std::size_t w = 0; w < truth.lines[l].words.size(); ++w) {
            const WordSegment& pw = result.lines[l].words[w];
            const TruthWord& tw = truth.lines[l].words[w];
            if (pw.cols != tw.cols || pw.chars.size() != tw.chars.size()) return false;
            for (std::size_t c = 0; c < tw.chars.size(); ++c)
                if (pw.chars[c].cols != tw.chars[c].cols) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("line tracing on the sample page profile") {
    RleDocument doc = compress(sample_page());
    std::vector<LineSegment> lines = segment_lines(row_profile(doc), 0);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].rows == Interval{2, 12});
    CHECK(lines[0].gap_above == 1);
}

TEST_CASE("line tracing corner cases") {
    CHECK(segment_lines(curve_of({0, 0, 0, 0}), 0).empty());

    std::vector<LineSegment> lines = segment_lines(curve_of({0, 5, 0, 4, 0}), 0);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].rows == Interval{2, 2});
    CHECK(lines[0].gap_above == 1);
    CHECK(lines[1].rows == Interval{4, 4});
    CHECK(lines[1].gap_above == 1);

    // band running to the page bottom
    lines = segment_lines(curve_of({0, 3, 3}), 0);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].rows == Interval{2, 3});

    // tau masks weak rows
    lines = segment_lines(curve_of({1, 5, 1, 6, 1}), 1);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].rows == Interval{2, 2});

    CHECK_THROWS_AS(segment_lines(curve_of({1}), -1), std::invalid_argument);
    ProfileCurve cols;
    cols.axis = Axis::Cols;
    CHECK_THROWS_AS(segment_lines(cols, 0), std::invalid_argument);
}

TEST_CASE("word-space threshold estimation") {
    ThresholdEstimate est = estimate_word_space_threshold({1, 1, 1, 4, 1, 4});
    CHECK(est.threshold == 3);
    CHECK(est.source == ThresholdSource::Clustered);

    est = estimate_word_space_threshold({});
    CHECK(est.threshold == 2);
    CHECK(est.source == ThresholdSource::NoGaps);

    // unimodal gaps fall back to the median rule
    est = estimate_word_space_threshold({2, 2, 2, 2});
    CHECK(est.threshold == 5);
    CHECK(est.source == ThresholdSource::Fallback);

    // too few samples for clustering
    est = estimate_word_space_threshold({1, 4, 1});
    CHECK(est.threshold == 3);
    CHECK(est.source == ThresholdSource::Fallback);

    // close modes are not trusted as a char/word split
    est = estimate_word_space_threshold({3, 3, 4, 4});
    CHECK(est.threshold == 9);
    CHECK(est.source == ThresholdSource::Fallback);

    CHECK_THROWS_AS(estimate_word_space_threshold({1, 0, 2, 3}), std::invalid_argument);
}

TEST_CASE("word and character extraction on the sample page") {
    RleDocument doc = compress(sample_page());
    LineSegment line{{2, 12}, 1};

    // the single interior blank column (7) is narrower than threshold 2
    std::vector<WordSegment> words = segment_words_chars(doc, line, 2);
    REQUIRE(words.size() == 1);
    CHECK(words[0].cols == Interval{1, 13});
    CHECK(words[0].rows == Interval{2, 12});
    REQUIRE(words[0].chars.size() == 2);
    CHECK(words[0].chars[0].cols == Interval{1, 6});
    CHECK(words[0].chars[1].cols == Interval{8, 13});

    // threshold 1 turns the same gap into a word break
    words = segment_words_chars(doc, line, 1);
    REQUIRE(words.size() == 2);
    CHECK(words[0].cols == Interval{1, 6});
    CHECK(words[1].cols == Interval{8, 13});
    CHECK(words[0].chars.size() == 1);
    CHECK(words[1].chars.size() == 1);
}

TEST_CASE("word extraction edge cases") {
    RleDocument doc = compress(sample_page());
    CHECK(segment_words_chars(doc, {{1, 1}, 0}, 2).empty());  // blank band
    CHECK_THROWS_AS(segment_words_chars(doc, {{2, 12}, 0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(segment_words_chars(doc, {{2, 14}, 0}, 2), std::invalid_argument);
}

TEST_CASE("full pipeline on the sample page") {
    RleDocument doc = compress(sample_page());
    SegmentConfig config;
    config.threshold = 2;
    SegmentationResult result = segment_document(doc, config);
    REQUIRE(result.lines.size() == 1);
    CHECK(result.lines[0].line.rows == Interval{2, 12});
    CHECK(result.lines[0].threshold == 2);
    REQUIRE(result.lines[0].words.size() == 1);
    CHECK(result.lines[0].words[0].chars.size() == 2);
    CHECK(result.total_words() == 1);
    CHECK(result.total_chars() == 2);
}

TEST_CASE("pipeline recovers synthetic ground truth exactly") {
    SynthLayout layout;
    layout.lines = 2;
    layout.words_per_line = 3;
    layout.chars_per_word = 4;
    layout.char_gap = 1;
    layout.word_gap = 5;
    auto [img, truth] = synth_doc(layout, 4242);
    SegmentationResult result = segment_document(compress(img));
    CHECK(boxes_match_truth(result, truth));
}

TEST_CASE("empty page segments to nothing") {
    SegmentationResult result = segment_document(compress(BitImage(6, 9)));
    CHECK(result.lines.empty());
    CHECK(result.cost.scanner_advances == 0);
    CHECK(result.cost.line_scan_steps == 6);

    SegmentConfig bad;
    bad.threshold = 0;
    CHECK_THROWS_AS(segment_document(compress(BitImage(6, 9)), bad), std::invalid_argument);
}

TEST_CASE("chars cover every black pixel and words partition the chars") {
    std::mt19937_64 rng(2718);
    for (int i = 0; i < 10; ++i) {
        BitImage img = random_image(rng, 40);
        SegmentationResult result = segment_document(compress(img));
        for (const SegmentedLine& line : result.lines) {
            // flatten word chars; they must be sorted and disjoint
            std::vector<Interval> chars;
            for (const WordSegment& word : line.words) {
                CHECK(!word.chars.empty());
                CHECK(word.cols.lo == word.chars.front().cols.lo);
                CHECK(word.cols.hi == word.chars.back().cols.hi);
                for (const CharSegment& ch : word.chars) chars.push_back(ch.cols);
            }
            for (std::size_t c = 1; c < chars.size(); ++c) CHECK(chars[c].lo > chars[c - 1].hi);
            // every black pixel of the band falls inside exactly one char
            for (int y = 1; y <= img.width(); ++y) {
                bool ink = false;
                for (int x = line.line.rows.lo; x <= line.line.rows.hi && !ink; ++x)
                    ink = img.black(x, y);
                if (!ink) continue;
                int holders = 0;
                for (const Interval& ch : chars) holders += ch.contains(y) ? 1 : 0;
                CHECK(holders == 1);
            }
        }
    }
}

TEST_CASE("raising the threshold never splits words further") {
    std::mt19937_64 rng(31415);
    SynthLayout layout;
    layout.lines = 2;
    layout.words_per_line = 3;
    layout.chars_per_word = 3;
    auto [img, truth] = synth_doc(layout, 31415);
    RleDocument doc = compress(img);
    std::size_t previous = SIZE_MAX;
    for (int threshold : {1, 2, 3, 4, 5, 7, 9, 1000}) {
        SegmentConfig config;
        config.threshold = threshold;
        std::size_t words = segment_document(doc, config).total_words();
        CHECK(words <= previous);
        previous = words;
    }

    // threshold 1: every character is its own word
    SegmentConfig one;
    one.threshold = 1;
    SegmentationResult r1 = segment_document(doc, one);
    CHECK(r1.total_words() == r1.total_chars());

    // threshold wider than the page: one word per non-empty line
    SegmentConfig wide;
    wide.threshold = doc.width + 1;
    SegmentationResult rw = segment_document(doc, wide);
    for (const SegmentedLine& line : rw.lines) CHECK(line.words.size() == 1);
}

TEST_CASE("line boxes shift uniformly under blank padding") {
    BitImage base = sample_page();
    const int pad = 3;
    BitImage padded(base.height() + 2 * pad, base.width());
    for (int x = 1; x <= base.height(); ++x)
        for (int y = 1; y <= base.width(); ++y) padded.set(x + pad, y, base.black(x, y));

    std::vector<LineSegment> before = segment_lines(row_profile(compress(base)), 0);
    std::vector<LineSegment> after = segment_lines(row_profile(compress(padded)), 0);
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(after[i].rows.lo == before[i].rows.lo + pad);
        CHECK(after[i].rows.hi == before[i].rows.hi + pad);
        if (i == 0)
            CHECK(after[i].gap_above == before[i].gap_above + pad);
        else
            CHECK(after[i].gap_above == before[i].gap_above);
    }
}

TEST_CASE("cost ledger stays within the compressed bounds") {
    SynthLayout layout;
    auto [img, truth] = synth_doc(layout, 777);
    RleDocument doc = compress(img);
    SegmentationResult result = segment_document(doc);

    const std::uint64_t n = static_cast<std::uint64_t>(doc.width);
    CHECK(result.cost.line_scan_steps == static_cast<std::uint64_t>(doc.height()));
    CHECK(result.cost.scanner_advances == result.lines.size() * n);
    std::uint64_t pop_budget = 0;
    for (const SegmentedLine& line : result.lines)
        pop_budget += n * static_cast<std::uint64_t>(line.line.rows.length());
    CHECK(result.cost.scanner_pops <= pop_budget);
    CHECK(result.cost.profile_additions <=
          static_cast<std::uint64_t>(doc.height()) * ((n + 1) / 2));
    CHECK(result.cost.pixel_ops == 0);  // the compressed path never reads a pixel
}

TEST_CASE("segmentation JSON roundtrip") {
    RleDocument doc = compress(sample_page());
    SegmentationResult result = segment_document(doc);
    SegmentationResult parsed = seg_from_json(seg_to_json(result));
    CHECK(same_boxes(parsed, result));
    CHECK(parsed.config == result.config);
    CHECK(parsed.cost.scanner_pops == result.cost.scanner_pops);

    SegmentConfig fixed;
    fixed.threshold = 4;
    result = segment_document(doc, fixed);
    parsed = seg_from_json(seg_to_json(result));
    CHECK(parsed.config.threshold == 4);

    CHECK_THROWS_AS(seg_from_json("not json"), FormatError);
}
