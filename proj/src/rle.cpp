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

#include "rlseg/rle.hpp"

#include <algorithm>
#include <sstream>

namespace rlseg {

int RleRow::black_pixels() const {
    int total = 0;
    for (std::size_t i = 1; i < runs.size(); i += 2) total += runs[i];
    return total;
}

void validate(const RleDocument& doc) {
    if (doc.width < 0) throw std::invalid_argument("document width must be non-negative");
    for (std::size_t r = 0; r < doc.rows.size(); ++r) {
        const std::vector<int>& runs = doc.rows[r].runs;
        std::string where = "row " + std::to_string(r + 1);
        if (runs.empty()) throw std::invalid_argument(where + ": no runs");
        if (runs[0] < 0) throw std::invalid_argument(where + ": negative run length");
        long sum = runs[0];
        for (std::size_t i = 1; i < runs.size(); ++i) {
            if (runs[i] < 1)
                throw std::invalid_argument(where + ": run " + std::to_string(i + 1) +
                                            " must be >= 1");
            sum += runs[i];
        }
        if (sum != doc.width)
            throw std::invalid_argument(where + ": runs sum to " + std::to_string(sum) +
                                        ", width is " + std::to_string(doc.width));
    }
}

RleDocument compress(const BitImage& img) {
    RleDocument doc;
    doc.width = img.width();
    doc.rows.reserve(img.height());
    for (int x = 1; x <= img.height(); ++x) {
        RleRow row;
        bool color = false;  // white first
        int length = 0;
        for (int y = 1; y <= img.width(); ++y) {
            if (img.black(x, y) == color) {
                ++length;
            } else {
                row.runs.push_back(length);
                color = !color;
                length = 1;
            }
        }
        row.runs.push_back(length);
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

BitImage decompress(const RleDocument& doc) {
    validate(doc);
    BitImage img(doc.height(), doc.width);
    for (int x = 1; x <= doc.height(); ++x) {
        int y = 1;
        bool color = false;
        for (int run : doc.rows[x - 1].runs) {
            for (int k = 0; k < run; ++k) img.set(x, y++, color);
            color = !color;
        }
    }
    return img;
}

std::vector<std::vector<int>> to_padded_matrix(const RleDocument& doc) {
    std::size_t width = 0;
    for (const RleRow& row : doc.rows) width = std::max(width, row.runs.size());
    std::vector<std::vector<int>> grid;
    grid.reserve(doc.rows.size());
    for (const RleRow& row : doc.rows) {
        std::vector<int> padded = row.runs;
        padded.resize(width, 0);
        grid.push_back(std::move(padded));
    }
    return grid;
}

std::string rlc_serialize(const RleDocument& doc) {
    validate(doc);
    std::string out = "RLC1 " + std::to_string(doc.width) + " " + std::to_string(doc.height()) + "\n";
    for (const RleRow& row : doc.rows) {
        for (std::size_t i = 0; i < row.runs.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(row.runs[i]);
        }
        out += '\n';
    }
    return out;
}

RleDocument rlc_parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string header_line;
    if (!std::getline(in, header_line)) throw FormatError("empty RLC stream", 1);
    std::istringstream header(header_line);
    std::string magic;
    int width = 0, height = 0;
    if (!(header >> magic >> width >> height) || magic != "RLC1")
        throw FormatError("malformed RLC header, expected \"RLC1 <width> <height>\"", 1);
    if (width < 1) throw FormatError("RLC width must be positive", 1);
    if (height < 0) throw FormatError("RLC height must be non-negative", 1);

    RleDocument doc;
    doc.width = width;
    std::string line;
    std::size_t lineno = 1;
    while (static_cast<int>(doc.rows.size()) < height) {
        if (!std::getline(in, line))
            throw FormatError("RLC stream ends after " + std::to_string(doc.rows.size()) +
                                  " of " + std::to_string(height) + " rows",
                              lineno);
        ++lineno;
        std::istringstream fields(line);
        RleRow row;
        long value;
        while (fields >> value) {
            if (value < 0 || value > width)
                throw FormatError("RLC run length out of range", lineno);
            if (!row.runs.empty() && value == 0)
                throw FormatError("RLC zero run length past the first position", lineno);
            row.runs.push_back(static_cast<int>(value));
        }
        if (!fields.eof()) throw FormatError("RLC row contains a non-integer token", lineno);
        if (row.runs.empty()) continue;  // blank lines are ignorable
        long sum = 0;
        for (int run : row.runs) sum += run;
        if (sum != width)
            throw FormatError("RLC runs sum to " + std::to_string(sum) + ", width is " +
                                  std::to_string(width),
                              lineno);
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

}  // namespace rlseg
