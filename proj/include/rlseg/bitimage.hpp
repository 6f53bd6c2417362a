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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rlseg/common.hpp"

namespace rlseg {

/// Binary raster of `height` rows by `width` columns, row-major.
/// Pixel value 1 is black ink, 0 is white background. Coordinates are
/// 1-based throughout: x indexes rows, y indexes columns.
class BitImage {
public:
    BitImage() = default;
    BitImage(int height, int width);  // all white

    int height() const { return height_; }
    int width() const { return width_; }

    bool black(int x, int y) const { return bits_[index(x, y)] != 0; }
    void set(int x, int y, bool black) { bits_[index(x, y)] = black ? 1 : 0; }

    bool operator==(const BitImage&) const = default;

private:
    std::size_t index(int x, int y) const;

    int height_ = 0;
    int width_ = 0;
    std::vector<std::uint8_t> bits_;
};

struct TruthChar {
    Interval cols;
    bool operator==(const TruthChar&) const = default;
};

struct TruthWord {
    Interval cols;
    std::vector<TruthChar> chars;
    bool operator==(const TruthWord&) const = default;
};

struct TruthLine {
    Interval rows;
    std::vector<TruthWord> words;
    bool operator==(const TruthLine&) const = default;
};

/// Exact layout boxes of a page: line row bands with nested word and
/// character column spans. Children are sorted, disjoint and contained
/// in their parent interval.
struct GroundTruth {
    int height = 0;
    int width = 0;
    std::vector<TruthLine> lines;
    bool operator==(const GroundTruth&) const = default;
};

/// Throws std::invalid_argument when `truth` violates the containment or
/// ordering rules above.
void validate_truth(const GroundTruth& truth);

// --- PBM I/O (Netpbm P1 ASCII and P4 packed, MSB first, rows padded to
// whole bytes). PBM's 1 = black convention matches BitImage.

BitImage load_pbm(std::string_view bytes);
std::string save_pbm(const BitImage& img, bool ascii = false);

BitImage load_pbm_file(const std::string& path);
void save_pbm_file(const BitImage& img, const std::string& path, bool ascii = false);

// --- Synthetic ground-truthed pages.

/// Layout description for a synthetic page. All units are pixels; gaps
/// count the blank columns/rows between neighboring boxes. When the page
/// dimensions are absent they are computed from the layout.
struct SynthLayout {
    int lines = 3;
    int words_per_line = 4;
    int chars_per_word = 5;
    int glyph_width = 4;
    int glyph_height = 6;
    int char_gap = 1;
    int word_gap = 4;
    int line_gap = 3;
    int margin = 2;
    std::optional<int> page_width;
    std::optional<int> page_height;
};

/// Renders a page of solid or randomly perforated rectangle glyphs whose
/// borders always touch their ground-truth box, and returns the exact
/// boxes alongside. Deterministic for a given layout and seed.
std::pair<BitImage, GroundTruth> synth_doc(const SynthLayout& layout, std::uint64_t seed);

// --- GroundTruth JSON (schema shared with SegmentationResult).

std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(std::string_view text);

}  // namespace rlseg
