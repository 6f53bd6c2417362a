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

#include <array>
#include <random>
#include <string_view>
#include <vector>

#include "rlseg/bitimage.hpp"
#include "rlseg/rle.hpp"

namespace rlseg::testing {

// 13x14 worked example used across the suites: two small glyph-like
// blobs over rows 2-6 and 9-12, plus two rows starting with black ink,
// framed by blank rows. Chosen so every run shape occurs: all-white
// rows, leading-black rows, and trailing white runs.
inline constexpr std::array<std::string_view, 13> kSamplePageBits = {
    "00000000000000",
    "00110000111110",
    "01111000111110",
    "01111000111110",
    "01111000111110",
    "00110000000000",
    "10000000000000",
    "10000000000000",
    "00100001111100",
    "01110001111100",
    "01111001111100",
    "01111100000000",
    "00000000000000",
};

// Run matrix of the sample page, rows padded with zeros to 5 entries.
inline const std::vector<std::vector<int>> kSamplePageRuns = {
    {14, 0, 0, 0, 0},
    {2, 2, 4, 5, 1},
    {1, 4, 3, 5, 1},
    {1, 4, 3, 5, 1},
    {1, 4, 3, 5, 1},
    {2, 2, 10, 0, 0},
    {0, 1, 13, 0, 0},
    {0, 1, 13, 0, 0},
    {2, 1, 4, 5, 2},
    {1, 3, 3, 5, 2},
    {1, 4, 2, 5, 2},
    {1, 5, 8, 0, 0},
    {14, 0, 0, 0, 0},
};

// Black pixels per row of the sample page.
inline const std::vector<int> kSamplePageRowProfile = {0, 7, 9, 9, 9, 2, 1, 1, 6, 8, 9, 5, 0};

template <std::size_t N>
BitImage image_from_bits(const std::array<std::string_view, N>& rows) {
    BitImage img(static_cast<int>(N), static_cast<int>(rows[0].size()));
    for (int x = 1; x <= img.height(); ++x)
        for (int y = 1; y <= img.width(); ++y)
            img.set(x, y, rows[static_cast<std::size_t>(x - 1)][static_cast<std::size_t>(y - 1)] == '1');
    return img;
}

inline BitImage sample_page() { return image_from_bits(kSamplePageBits); }

// Random pages for roundtrip and oracle properties: a mix of uniform
// noise densities so both long and unit-length runs appear.
inline BitImage random_image(std::mt19937_64& rng, int max_dim = 256) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    int m = dim(rng), n = dim(rng);
    static constexpr double kDensities[] = {0.02, 0.1, 0.3, 0.5, 0.8, 0.97};
    std::bernoulli_distribution ink(kDensities[rng() % 6]);
    BitImage img(m, n);
    for (int x = 1; x <= m; ++x)
        for (int y = 1; y <= n; ++y) img.set(x, y, ink(rng));
    return img;
}

// Pixel-domain reference: black count of column y within the row band.
inline int brute_column_count(const BitImage& img, Interval band, int y) {
    int count = 0;
    for (int x = band.lo; x <= band.hi; ++x) count += img.black(x, y) ? 1 : 0;
    return count;
}

}  // namespace rlseg::testing
