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

#include "rlseg/bitimage.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace rlseg {

BitImage::BitImage(int height, int width) : height_(height), width_(width) {
    if (height < 0 || width < 0)
        throw std::invalid_argument("image dimensions must be non-negative");
    bits_.assign(static_cast<std::size_t>(height) * static_cast<std::size_t>(width), 0);
}

std::size_t BitImage::index(int x, int y) const {
    if (x < 1 || x > height_ || y < 1 || y > width_)
        throw std::out_of_range("pixel (" + std::to_string(x) + "," + std::to_string(y) +
                                ") outside " + std::to_string(height_) + "x" +
                                std::to_string(width_) + " image");
    return static_cast<std::size_t>(x - 1) * width_ + (y - 1);
}

// ---------------------------------------------------------------- truth

namespace {

void check_children_sorted(const std::vector<Interval>& kids, Interval parent,
                           const char* what) {
    int prev_hi = parent.lo - 1;
    for (const Interval& k : kids) {
        if (k.lo > k.hi)
            throw std::invalid_argument(std::string(what) + " interval inverted");
        if (k.lo <= prev_hi)
            throw std::invalid_argument(std::string(what) +
                                        " intervals overlap or are out of order");
        if (k.lo < parent.lo || k.hi > parent.hi)
            throw std::invalid_argument(std::string(what) + " interval outside its parent");
        prev_hi = k.hi;
    }
}

}  // namespace

void validate_truth(const GroundTruth& truth) {
    if (truth.height < 0 || truth.width < 0)
        throw std::invalid_argument("ground truth has negative page dimensions");
    std::vector<Interval> line_rows;
    for (const TruthLine& line : truth.lines) line_rows.push_back(line.rows);
    check_children_sorted(line_rows, {1, truth.height}, "line row");
    for (const TruthLine& line : truth.lines) {
        std::vector<Interval> word_cols;
        for (const TruthWord& w : line.words) word_cols.push_back(w.cols);
        check_children_sorted(word_cols, {1, truth.width}, "word column");
        for (const TruthWord& w : line.words) {
            std::vector<Interval> char_cols;
            for (const TruthChar& c : w.chars) char_cols.push_back(c.cols);
            check_children_sorted(char_cols, w.cols, "character column");
        }
    }
}

// ---------------------------------------------------------------- PBM

namespace {

struct ByteCursor {
    std::string_view data;
    std::size_t pos = 0;

    bool eof() const { return pos >= data.size(); }
    char peek() const { return data[pos]; }
    char take() { return data[pos++]; }
};

// Skips whitespace and '#' comments (comment runs to end of line).
void skip_separators(ByteCursor& c) {
    while (!c.eof()) {
        char ch = c.peek();
        if (std::isspace(static_cast<unsigned char>(ch))) {
            c.take();
        } else if (ch == '#') {
            while (!c.eof() && c.take() != '\n') {
            }
        } else {
            return;
        }
    }
}

int parse_dimension(ByteCursor& c, const char* what) {
    skip_separators(c);
    std::size_t start = c.pos;
    long value = 0;
    while (!c.eof() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        value = value * 10 + (c.take() - '0');
        if (value > 1'000'000'000)
            throw FormatError(std::string("PBM ") + what + " out of range", start);
    }
    if (c.pos == start)
        throw FormatError(std::string("malformed PBM header: expected ") + what, c.pos);
    if (value <= 0)
        throw FormatError(std::string("PBM ") + what + " must be positive", start);
    return static_cast<int>(value);
}

}  // namespace

BitImage load_pbm(std::string_view bytes) {
    ByteCursor c{bytes};
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '1' && bytes[1] != '4'))
        throw FormatError("not a PBM stream: bad magic", 0);
    bool ascii = bytes[1] == '1';
    c.pos = 2;

    int width = parse_dimension(c, "width");
    int height = parse_dimension(c, "height");
    BitImage img(height, width);

    if (ascii) {
        for (int x = 1; x <= height; ++x) {
            for (int y = 1; y <= width; ++y) {
                skip_separators(c);
                if (c.eof())
                    throw FormatError("truncated PBM pixel data", c.pos);
                char ch = c.take();
                if (ch != '0' && ch != '1')
                    throw FormatError("PBM P1 pixel must be 0 or 1", c.pos - 1);
                img.set(x, y, ch == '1');
            }
        }
        return img;
    }

    // P4: exactly one separator byte after the header, then packed rows.
    if (c.eof() || !std::isspace(static_cast<unsigned char>(c.peek())))
        throw FormatError("malformed PBM P4 header: missing separator", c.pos);
    c.take();
    std::size_t stride = (static_cast<std::size_t>(width) + 7) / 8;
    for (int x = 1; x <= height; ++x) {
        if (c.pos + stride > bytes.size())
            throw FormatError("truncated PBM pixel data", bytes.size());
        for (int y = 1; y <= width; ++y) {
            unsigned byte = static_cast<unsigned char>(bytes[c.pos + (y - 1) / 8]);
            img.set(x, y, (byte >> (7 - (y - 1) % 8)) & 1);
        }
        c.pos += stride;
    }
    return img;
}

std::string save_pbm(const BitImage& img, bool ascii) {
    if (img.height() < 1 || img.width() < 1)
        throw std::invalid_argument("cannot save an empty image as PBM");
    std::string out;
    if (ascii) {
        out = "P1\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n";
        for (int x = 1; x <= img.height(); ++x) {
            int emitted = 0;
            for (int y = 1; y <= img.width(); ++y) {
                out += img.black(x, y) ? '1' : '0';
                if (++emitted == 70 && y != img.width()) {  // netpbm line-length limit
                    out += '\n';
                    emitted = 0;
                }
            }
            out += '\n';
        }
        return out;
    }
    out = "P4\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n";
    std::size_t stride = (static_cast<std::size_t>(img.width()) + 7) / 8;
    for (int x = 1; x <= img.height(); ++x) {
        std::string row(stride, '\0');
        for (int y = 1; y <= img.width(); ++y)
            if (img.black(x, y)) row[(y - 1) / 8] |= static_cast<char>(0x80 >> ((y - 1) % 8));
        out += row;
    }
    return out;
}

BitImage load_pbm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_pbm(buf.str());
}

void save_pbm_file(const BitImage& img, const std::string& path, bool ascii) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    std::string data = save_pbm(img, ascii);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------- synth

namespace {

void require_layout(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("synth layout: " + what);
}

}  // namespace

std::pair<BitImage, GroundTruth> synth_doc(const SynthLayout& layout, std::uint64_t seed) {
    require_layout(layout.lines >= 0, "line count must be non-negative");
    require_layout(layout.words_per_line >= 1, "words per line must be >= 1");
    require_layout(layout.chars_per_word >= 1, "chars per word must be >= 1");
    require_layout(layout.glyph_width >= 1 && layout.glyph_height >= 1,
                   "glyph dimensions must be >= 1");
    require_layout(layout.char_gap >= 1 && layout.word_gap >= 1 && layout.line_gap >= 1,
                   "gaps must be >= 1");
    require_layout(layout.char_gap < layout.word_gap,
                   "inter-char gap must be strictly less than inter-word gap");
    require_layout(layout.margin >= 0, "margin must be non-negative");

    const int word_w =
        layout.chars_per_word * layout.glyph_width + (layout.chars_per_word - 1) * layout.char_gap;
    const int line_w = layout.words_per_line * word_w + (layout.words_per_line - 1) * layout.word_gap;
    const int content_w = layout.lines > 0 ? line_w : 0;
    const int content_h =
        layout.lines > 0 ? layout.lines * layout.glyph_height + (layout.lines - 1) * layout.line_gap
                         : 0;
    int page_w = 2 * layout.margin + content_w;
    int page_h = 2 * layout.margin + content_h;
    if (layout.page_width) {
        require_layout(*layout.page_width >= page_w,
                       "page width " + std::to_string(*layout.page_width) + " < required " +
                           std::to_string(page_w));
        page_w = *layout.page_width;
    }
    if (layout.page_height) {
        require_layout(*layout.page_height >= page_h,
                       "page height " + std::to_string(*layout.page_height) + " < required " +
                           std::to_string(page_h));
        page_h = *layout.page_height;
    }
    require_layout(page_w >= 1 && page_h >= 1, "page dimensions must be positive");

    BitImage img(page_h, page_w);
    GroundTruth truth;
    truth.height = page_h;
    truth.width = page_w;

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution solid(0.5);
    std::bernoulli_distribution hole(0.35);

    for (int li = 0; li < layout.lines; ++li) {
        TruthLine line;
        int r0 = layout.margin + li * (layout.glyph_height + layout.line_gap) + 1;
        line.rows = {r0, r0 + layout.glyph_height - 1};
        for (int wi = 0; wi < layout.words_per_line; ++wi) {
            TruthWord word;
            int w0 = layout.margin + wi * (word_w + layout.word_gap) + 1;
            word.cols = {w0, w0 + word_w - 1};
            for (int ci = 0; ci < layout.chars_per_word; ++ci) {
                int c0 = w0 + ci * (layout.glyph_width + layout.char_gap);
                Interval cols{c0, c0 + layout.glyph_width - 1};
                bool perforate = !solid(rng);
                for (int x = line.rows.lo; x <= line.rows.hi; ++x) {
                    for (int y = cols.lo; y <= cols.hi; ++y) {
                        bool border = x == line.rows.lo || x == line.rows.hi || y == cols.lo ||
                                      y == cols.hi;
                        // Border pixels stay black so the truth box stays tight.
                        bool ink = border || !perforate || !hole(rng);
                        img.set(x, y, ink);
                    }
                }
                word.chars.push_back({cols});
            }
            line.words.push_back(std::move(word));
        }
        truth.lines.push_back(std::move(line));
    }
    return {std::move(img), std::move(truth)};
}

// ---------------------------------------------------------------- JSON

namespace {

using nlohmann::json;

json interval_to_json(Interval v) { return json::array({v.lo, v.hi}); }

Interval interval_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw std::invalid_argument(std::string("ground truth JSON: ") + what +
                                    " must be a [lo, hi] integer pair");
    return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

std::string truth_to_json(const GroundTruth& truth) {
    json lines = json::array();
    for (const TruthLine& line : truth.lines) {
        json words = json::array();
        for (const TruthWord& w : line.words) {
            json chars = json::array();
            for (const TruthChar& c : w.chars) chars.push_back({{"cols", interval_to_json(c.cols)}});
            words.push_back({{"cols", interval_to_json(w.cols)}, {"chars", std::move(chars)}});
        }
        lines.push_back({{"rows", interval_to_json(line.rows)}, {"words", std::move(words)}});
    }
    json doc{{"height", truth.height}, {"width", truth.width}, {"lines", std::move(lines)}};
    return doc.dump(2) + "\n";
}

GroundTruth truth_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("ground truth JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object() || !doc.contains("height") || !doc.contains("width") ||
        !doc.contains("lines"))
        throw std::invalid_argument("ground truth JSON: expected height, width and lines");
    GroundTruth truth;
    truth.height = doc["height"].get<int>();
    truth.width = doc["width"].get<int>();
    for (const json& jl : doc["lines"]) {
        TruthLine line;
        line.rows = interval_from_json(jl.at("rows"), "rows");
        for (const json& jw : jl.value("words", json::array())) {
            TruthWord word;
            word.cols = interval_from_json(jw.at("cols"), "cols");
            for (const json& jc : jw.value("chars", json::array()))
                word.chars.push_back({interval_from_json(jc.at("cols"), "cols")});
            line.words.push_back(std::move(word));
        }
        truth.lines.push_back(std::move(line));
    }
    validate_truth(truth);
    return truth;
}

}  // namespace rlseg
