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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rlseg {

/// Inclusive 1-based interval. Used for row bands (text lines) and for
/// column spans (words, characters).
struct Interval {
    int lo = 0;
    int hi = 0;

    int length() const { return hi - lo + 1; }
    bool contains(int v) const { return v >= lo && v <= hi; }
    bool operator==(const Interval&) const = default;
};

/// Operation counters kept by the compressed-domain and pixel-domain
/// execution paths, so their costs can be compared.
struct CostLedger {
    std::uint64_t profile_additions = 0;  ///< run entries accumulated into profile sums
    std::uint64_t scanner_pops = 0;       ///< single-pixel pops performed by column scanners
    std::uint64_t scanner_advances = 0;   ///< column advances over all line bands
    std::uint64_t line_scan_steps = 0;    ///< profile entries visited while tracing lines
    std::uint64_t pixel_ops = 0;          ///< raw pixel reads (pixel-domain path only)

    CostLedger& operator+=(const CostLedger& other) {
        profile_additions += other.profile_additions;
        scanner_pops += other.scanner_pops;
        scanner_advances += other.scanner_advances;
        line_scan_steps += other.line_scan_steps;
        pixel_ops += other.pixel_ops;
        return *this;
    }
};

/// Parse or serialization failure. `offset` is a byte offset for binary
/// formats (PBM, MH) and a line number for text formats (RLC).
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace rlseg
