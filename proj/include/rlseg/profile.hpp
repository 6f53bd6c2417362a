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
#include <vector>

#include "rlseg/common.hpp"
#include "rlseg/rle.hpp"

namespace rlseg {

enum class Axis { Rows, Cols };

/// Histogram of black pixels accumulated along one axis, together with
/// the number of additions spent building it.
struct ProfileCurve {
    Axis axis = Axis::Rows;
    std::vector<int> values;
    std::uint64_t addition_count = 0;
};

/// Black pixel count per row, read straight off the run lengths: one
/// addition per black run entry, no pixel is ever touched.
ProfileCurve row_profile(const RleDocument& doc);

/// The 0/1 transitions of one virtual column, restricted to a row band.
class ColumnTransitions {
public:
    ColumnTransitions(int column, Interval band, std::vector<std::uint8_t> bits);

    int column() const { return column_; }
    const Interval& band() const { return band_; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    /// Transition of absolute row x (must lie in the band).
    bool black(int x) const;

    int black_count() const { return black_count_; }

    /// True when the column carries no ink inside the band - the cue for
    /// a space between characters or words.
    bool is_space() const { return black_count_ == 0; }

private:
    int column_;
    Interval band_;
    std::vector<std::uint8_t> bits_;
    int black_count_ = 0;
};

/// Virtual-column cursor over the compressed rows of one band. Each
/// advance pops exactly one pixel from the head run of every row in the
/// band and emits that column's transitions; after width() advances the
/// scanner is exhausted. Rows outside the band are never touched.
class ColumnScanner {
public:
    ColumnScanner(const RleDocument& doc, Interval band);

    ColumnTransitions advance();

    int width() const { return width_; }
    int columns_emitted() const { return emitted_; }
    bool exhausted() const { return emitted_ >= width_; }
    std::uint64_t pops() const { return pops_; }

private:
    // Head of the current white/black run pair of one row.
    struct Cursor {
        const std::vector<int>* runs;
        std::size_t pair;
        int white_left;
        int black_left;
    };

    static void load_pair(Cursor& c);

    Interval band_;
    int width_;
    std::vector<Cursor> cursors_;
    int emitted_ = 0;
    std::uint64_t pops_ = 0;
};

/// Black pixel count per column within the band, built from width()
/// scanner advances. The addition count tallies one addition per black
/// transition accumulated; `ledger`, when given, also receives the pop
/// and advance counts.
ProfileCurve column_profile(const RleDocument& doc, Interval band, CostLedger* ledger = nullptr);

}  // namespace rlseg
