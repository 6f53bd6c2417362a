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

#include "rlseg/profile.hpp"

#include <cassert>

namespace rlseg {

ProfileCurve row_profile(const RleDocument& doc) {
    ProfileCurve curve;
    curve.axis = Axis::Rows;
    curve.values.reserve(doc.rows.size());
    for (const RleRow& row : doc.rows) {
        int sum = 0;
        for (std::size_t i = 1; i < row.runs.size(); i += 2) {
            sum += row.runs[i];
            ++curve.addition_count;
        }
        curve.values.push_back(sum);
    }
    return curve;
}

ColumnTransitions::ColumnTransitions(int column, Interval band, std::vector<std::uint8_t> bits)
    : column_(column), band_(band), bits_(std::move(bits)) {
    for (std::uint8_t b : bits_) black_count_ += b;
}

bool ColumnTransitions::black(int x) const {
    if (!band_.contains(x))
        throw std::out_of_range("row " + std::to_string(x) + " outside band [" +
                                std::to_string(band_.lo) + "," + std::to_string(band_.hi) + "]");
    return bits_[static_cast<std::size_t>(x - band_.lo)] != 0;
}

ColumnScanner::ColumnScanner(const RleDocument& doc, Interval band)
    : band_(band), width_(doc.width) {
    if (band.lo < 1 || band.hi > doc.height() || band.lo > band.hi)
        throw std::invalid_argument("scan band [" + std::to_string(band.lo) + "," +
                                    std::to_string(band.hi) + "] outside rows [1," +
                                    std::to_string(doc.height()) + "]");
    cursors_.reserve(static_cast<std::size_t>(band.length()));
    for (int x = band.lo; x <= band.hi; ++x) {
        Cursor c{&doc.rows[static_cast<std::size_t>(x - 1)].runs, 0, 0, 0};
        load_pair(c);
        cursors_.push_back(c);
    }
}

void ColumnScanner::load_pair(Cursor& c) {
    c.white_left = c.pair < c.runs->size() ? (*c.runs)[c.pair] : 0;
    c.black_left = c.pair + 1 < c.runs->size() ? (*c.runs)[c.pair + 1] : 0;
}

ColumnTransitions ColumnScanner::advance() {
    if (exhausted())
        throw std::out_of_range("column scanner exhausted after " + std::to_string(emitted_) +
                                " advances");
    std::vector<std::uint8_t> bits(cursors_.size());
    for (std::size_t i = 0; i < cursors_.size(); ++i) {
        Cursor& c = cursors_[i];
        if (c.white_left == 0 && c.black_left == 0) {
            // Both heads exhausted: shift to the next white/black pair.
            c.pair += 2;
            load_pair(c);
        }
        if (c.white_left > 0) {
            --c.white_left;
            bits[i] = 0;
        } else {
            assert(c.black_left > 0);
            --c.black_left;
            bits[i] = 1;
        }
        ++pops_;
    }
    ++emitted_;
    return ColumnTransitions(emitted_, band_, std::move(bits));
}

ProfileCurve column_profile(const RleDocument& doc, Interval band, CostLedger* ledger) {
    ColumnScanner scanner(doc, band);
    ProfileCurve curve;
    curve.axis = Axis::Cols;
    curve.values.reserve(static_cast<std::size_t>(doc.width));
    while (!scanner.exhausted()) {
        ColumnTransitions column = scanner.advance();
        curve.values.push_back(column.black_count());
        curve.addition_count += static_cast<std::uint64_t>(column.black_count());
    }
    if (ledger) {
        ledger->scanner_pops += scanner.pops();
        ledger->scanner_advances += static_cast<std::uint64_t>(scanner.columns_emitted());
    }
    return curve;
}

}  // namespace rlseg
