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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlseg/common.hpp"
#include "rlseg/profile.hpp"
#include "rlseg/rle.hpp"

namespace rlseg {

/// Row band of one text line plus the blank gap separating it from the
/// previous line (from the page top for the first line).
struct LineSegment {
    Interval rows;
    int gap_above = 0;
    bool operator==(const LineSegment&) const = default;
};

/// A character's column span. The vertical extent is the parent line's
/// full row band.
struct CharSegment {
    Interval cols;
    Interval rows;
    bool operator==(const CharSegment&) const = default;
};

struct WordSegment {
    Interval cols;
    Interval rows;
    std::vector<CharSegment> chars;
    bool operator==(const WordSegment&) const = default;
};

enum class ThresholdSource { Clustered, Fallback, NoGaps };

struct ThresholdEstimate {
    int threshold = 2;
    ThresholdSource source = ThresholdSource::NoGaps;
};

struct SegmentConfig {
    int tau = 0;                    ///< noise tolerance on profile counts
    std::optional<int> threshold;   ///< fixed word-space threshold; auto per line when absent
    bool operator==(const SegmentConfig&) const = default;
};

struct SegmentedLine {
    LineSegment line;
    int threshold = 0;  ///< word-space threshold applied to this line
    std::vector<WordSegment> words;
    bool operator==(const SegmentedLine&) const = default;
};

struct SegmentationResult {
    int height = 0;
    int width = 0;
    SegmentConfig config;
    std::vector<SegmentedLine> lines;
    CostLedger cost;

    std::size_t total_words() const;
    std::size_t total_chars() const;
};

/// Maximal row intervals whose profile value exceeds tau, in top-to-bottom
/// order, found in a single pass over the curve.
std::vector<LineSegment> segment_lines(const ProfileCurve& profile, int tau,
                                       CostLedger* ledger = nullptr);

/// Word-space threshold from the blank-gap widths of one line (or page).
/// With at least 4 samples, 2-means clustering (centers seeded at min and
/// max, ties to the lower center) is tried first; it is accepted when the
/// centers satisfy c1 < c2 and c2 >= 2*c1, giving ceil((c1+c2)/2).
/// Otherwise the fallback is max(2, ceil(2.5 * median)); no gaps at all
/// yield the constant 2.
ThresholdEstimate estimate_word_space_threshold(const std::vector<int>& gaps);

/// Simultaneous word and character extraction for one line band: a single
/// scanner pass classifies each of the width() columns as space or ink,
/// characters are the maximal ink column runs, and a character whose
/// preceding blank gap is >= threshold (or which comes first) starts a
/// new word.
std::vector<WordSegment> segment_words_chars(const RleDocument& doc, const LineSegment& line,
                                             int threshold, CostLedger* ledger = nullptr);

/// Full pipeline: row profile -> line tracing -> per line, one column
/// scan feeding gap collection, threshold selection and word/character
/// grouping. Never touches pixels.
SegmentationResult segment_document(const RleDocument& doc, const SegmentConfig& config = {});

/// Structural equality of two results (boxes, gaps and thresholds),
/// ignoring the cost ledgers.
bool same_boxes(const SegmentationResult& a, const SegmentationResult& b);

// --- SegmentationResult JSON: the GroundTruth schema plus "config" and
// "cost" objects (and per-line gap/threshold fields).

std::string seg_to_json(const SegmentationResult& result);
SegmentationResult seg_from_json(std::string_view text);

}  // namespace rlseg
