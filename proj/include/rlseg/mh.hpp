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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rlseg/common.hpp"
#include "rlseg/rle.hpp"

namespace rlseg::mh {

/// One prefix codeword. The code occupies the low `length` bits of
/// `bits`, most significant coded bit first.
struct Codeword {
    std::uint16_t bits;
    std::uint8_t length;
    std::uint16_t run;
};

// T.4 code alphabets. Each color combines terminating codes (runs 0-63)
// with make-up codes (multiples of 64); the extended make-up codes
// 1792-2560 are shared by both colors and included in both spans.
std::span<const Codeword> white_terminating();
std::span<const Codeword> black_terminating();
std::span<const Codeword> white_makeup();
std::span<const Codeword> black_makeup();
Codeword eol();

/// G3-1D coded rows. Every row is preceded by an EOL codeword and a
/// final EOL terminates the stream (absent when height is 0); the last
/// byte is zero padded. No fill bits, no byte alignment between rows.
struct MhBitstream {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> payload;
    bool operator==(const MhBitstream&) const = default;
};

/// Encodes runs row by row, white codeword first (a white run of length
/// 0 is coded explicitly when the row starts black). Runs past 2623 emit
/// repeated 2560 make-up codes.
MhBitstream encode(const RleDocument& doc);

/// Partial decoding: recovers run lengths only, never touching a pixel
/// buffer. Row run sums are validated against the declared width.
RleDocument decode(const MhBitstream& stream);

// --- .mh container: magic "MH1D", then width and height as 32-bit
// big-endian unsigned, then the payload, bit-exact.

std::string serialize(const MhBitstream& stream);
MhBitstream parse(std::string_view bytes);

}  // namespace rlseg::mh
