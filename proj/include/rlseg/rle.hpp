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

#include <string>
#include <string_view>
#include <vector>

#include "rlseg/bitimage.hpp"
#include "rlseg/common.hpp"

namespace rlseg {

/// One raster row as alternating white/black run lengths, white first.
/// runs[0] may be 0 when the row starts black; every later entry is >= 1
/// and the entries sum to the document width. An all-white row is the
/// single run {width}.
struct RleRow {
    std::vector<int> runs;

    /// Black pixel count: sum of the entries at odd 0-based positions.
    int black_pixels() const;

    bool operator==(const RleRow&) const = default;
};

/// A compressed page: one RleRow per raster row, all of width `width`.
struct RleDocument {
    int width = 0;
    std::vector<RleRow> rows;

    int height() const { return static_cast<int>(rows.size()); }
    bool operator==(const RleDocument&) const = default;
};

/// Throws std::invalid_argument naming the first offending row when the
/// document breaks the run invariants.
void validate(const RleDocument& doc);

RleDocument compress(const BitImage& img);
BitImage decompress(const RleDocument& doc);

/// The display form of a compressed page: every row right-padded with
/// zeros to the maximum run count over all rows.
std::vector<std::vector<int>> to_padded_matrix(const RleDocument& doc);

// --- RLC text fixture format: header "RLC1 <width> <height>", then one
// line of space-separated run lengths per row.

std::string rlc_serialize(const RleDocument& doc);
RleDocument rlc_parse(std::string_view text);

}  // namespace rlseg
