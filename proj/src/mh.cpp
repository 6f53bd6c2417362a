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

#include "rlseg/mh.hpp"

#include <array>
#include <unordered_map>

namespace rlseg::mh {

namespace {

// Table 2/T.4 terminating codes, white runs 0-63.
constexpr std::array<Codeword, 64> kWhiteTerminating = {{
    {0b00110101, 8, 0},   {0b000111, 6, 1},    {0b0111, 4, 2},      {0b1000, 4, 3},
    {0b1011, 4, 4},       {0b1100, 4, 5},      {0b1110, 4, 6},      {0b1111, 4, 7},
    {0b10011, 5, 8},      {0b10100, 5, 9},     {0b00111, 5, 10},    {0b01000, 5, 11},
    {0b001000, 6, 12},    {0b000011, 6, 13},   {0b110100, 6, 14},   {0b110101, 6, 15},
    {0b101010, 6, 16},    {0b101011, 6, 17},   {0b0100111, 7, 18},  {0b0001100, 7, 19},
    {0b0001000, 7, 20},   {0b0010111, 7, 21},  {0b0000011, 7, 22},  {0b0000100, 7, 23},
    {0b0101000, 7, 24},   {0b0101011, 7, 25},  {0b0010011, 7, 26},  {0b0100100, 7, 27},
    {0b0011000, 7, 28},   {0b00000010, 8, 29}, {0b00000011, 8, 30}, {0b00011010, 8, 31},
    {0b00011011, 8, 32},  {0b00010010, 8, 33}, {0b00010011, 8, 34}, {0b00010100, 8, 35},
    {0b00010101, 8, 36},  {0b00010110, 8, 37}, {0b00010111, 8, 38}, {0b00101000, 8, 39},
    {0b00101001, 8, 40},  {0b00101010, 8, 41}, {0b00101011, 8, 42}, {0b00101100, 8, 43},
    {0b00101101, 8, 44},  {0b00000100, 8, 45}, {0b00000101, 8, 46}, {0b00001010, 8, 47},
    {0b00001011, 8, 48},  {0b01010010, 8, 49}, {0b01010011, 8, 50}, {0b01010100, 8, 51},
    {0b01010101, 8, 52},  {0b00100100, 8, 53}, {0b00100101, 8, 54}, {0b01011000, 8, 55},
    {0b01011001, 8, 56},  {0b01011010, 8, 57}, {0b01011011, 8, 58}, {0b01001010, 8, 59},
    {0b01001011, 8, 60},  {0b00110010, 8, 61}, {0b00110011, 8, 62}, {0b00110100, 8, 63},
}};

// Table 2/T.4 terminating codes, black runs 0-63.
constexpr std::array<Codeword, 64> kBlackTerminating = {{
    {0b0000110111, 10, 0},    {0b010, 3, 1},            {0b11, 2, 2},
    {0b10, 2, 3},             {0b011, 3, 4},            {0b0011, 4, 5},
    {0b0010, 4, 6},           {0b00011, 5, 7},          {0b000101, 6, 8},
    {0b000100, 6, 9},         {0b0000100, 7, 10},       {0b0000101, 7, 11},
    {0b0000111, 7, 12},       {0b00000100, 8, 13},      {0b00000111, 8, 14},
    {0b000011000, 9, 15},     {0b0000010111, 10, 16},   {0b0000011000, 10, 17},
    {0b0000001000, 10, 18},   {0b00001100111, 11, 19},  {0b00001101000, 11, 20},
    {0b00001101100, 11, 21},  {0b00000110111, 11, 22},  {0b00000101000, 11, 23},
    {0b00000010111, 11, 24},  {0b00000011000, 11, 25},  {0b000011001010, 12, 26},
    {0b000011001011, 12, 27}, {0b000011001100, 12, 28}, {0b000011001101, 12, 29},
    {0b000001101000, 12, 30}, {0b000001101001, 12, 31}, {0b000001101010, 12, 32},
    {0b000001101011, 12, 33}, {0b000011010010, 12, 34}, {0b000011010011, 12, 35},
    {0b000011010100, 12, 36}, {0b000011010101, 12, 37}, {0b000011010110, 12, 38},
    {0b000011010111, 12, 39}, {0b000001101100, 12, 40}, {0b000001101101, 12, 41},
    {0b000011011010, 12, 42}, {0b000011011011, 12, 43}, {0b000001010100, 12, 44},
    {0b000001010101, 12, 45}, {0b000001010110, 12, 46}, {0b000001010111, 12, 47},
    {0b000001100100, 12, 48}, {0b000001100101, 12, 49}, {0b000001010010, 12, 50},
    {0b000001010011, 12, 51}, {0b000000100100, 12, 52}, {0b000000110111, 12, 53},
    {0b000000111000, 12, 54}, {0b000000100111, 12, 55}, {0b000000101000, 12, 56},
    {0b000001011000, 12, 57}, {0b000001011001, 12, 58}, {0b000000101011, 12, 59},
    {0b000000101100, 12, 60}, {0b000001011010, 12, 61}, {0b000001100110, 12, 62},
    {0b000001100111, 12, 63},
}};

// Table 3a/T.4 make-up codes plus the shared table 3b extension.
constexpr std::array<Codeword, 40> kWhiteMakeup = {{
    {0b11011, 5, 64},          {0b10010, 5, 128},         {0b010111, 6, 192},
    {0b0110111, 7, 256},       {0b00110110, 8, 320},      {0b00110111, 8, 384},
    {0b01100100, 8, 448},      {0b01100101, 8, 512},      {0b01101000, 8, 576},
    {0b01100111, 8, 640},      {0b011001100, 9, 704},     {0b011001101, 9, 768},
    {0b011010010, 9, 832},     {0b011010011, 9, 896},     {0b011010100, 9, 960},
    {0b011010101, 9, 1024},    {0b011010110, 9, 1088},    {0b011010111, 9, 1152},
    {0b011011000, 9, 1216},    {0b011011001, 9, 1280},    {0b011011010, 9, 1344},
    {0b011011011, 9, 1408},    {0b010011000, 9, 1472},    {0b010011001, 9, 1536},
    {0b010011010, 9, 1600},    {0b011000, 6, 1664},       {0b010011011, 9, 1728},
    {0b00000001000, 11, 1792}, {0b00000001100, 11, 1856}, {0b00000001101, 11, 1920},
    {0b000000010010, 12, 1984}, {0b000000010011, 12, 2048}, {0b000000010100, 12, 2112},
    {0b000000010101, 12, 2176}, {0b000000010110, 12, 2240}, {0b000000010111, 12, 2304},
    {0b000000011100, 12, 2368}, {0b000000011101, 12, 2432}, {0b000000011110, 12, 2496},
    {0b000000011111, 12, 2560},
}};

constexpr std::array<Codeword, 40> kBlackMakeup = {{
    {0b0000001111, 10, 64},     {0b000011001000, 12, 128},  {0b000011001001, 12, 192},
    {0b000001011011, 12, 256},  {0b000000110011, 12, 320},  {0b000000110100, 12, 384},
    {0b000000110101, 12, 448},  {0b0000001101100, 13, 512}, {0b0000001101101, 13, 576},
    {0b0000001001010, 13, 640}, {0b0000001001011, 13, 704}, {0b0000001001100, 13, 768},
    {0b0000001001101, 13, 832}, {0b0000001110010, 13, 896}, {0b0000001110011, 13, 960},
    {0b0000001110100, 13, 1024}, {0b0000001110101, 13, 1088}, {0b0000001110110, 13, 1152},
    {0b0000001110111, 13, 1216}, {0b0000001010010, 13, 1280}, {0b0000001010011, 13, 1344},
    {0b0000001010100, 13, 1408}, {0b0000001010101, 13, 1472}, {0b0000001011010, 13, 1536},
    {0b0000001011011, 13, 1600}, {0b0000001100100, 13, 1664}, {0b0000001100101, 13, 1728},
    {0b00000001000, 11, 1792},  {0b00000001100, 11, 1856},  {0b00000001101, 11, 1920},
    {0b000000010010, 12, 1984}, {0b000000010011, 12, 2048}, {0b000000010100, 12, 2112},
    {0b000000010101, 12, 2176}, {0b000000010110, 12, 2240}, {0b000000010111, 12, 2304},
    {0b000000011100, 12, 2368}, {0b000000011101, 12, 2432}, {0b000000011110, 12, 2496},
    {0b000000011111, 12, 2560},
}};

constexpr Codeword kEol = {0b000000000001, 12, 0};
constexpr int kMaxCodeLength = 13;
constexpr int kMaxSingleMakeup = 2560;

class BitWriter {
public:
    void put(const Codeword& code) {
        for (int i = code.length - 1; i >= 0; --i) put_bit((code.bits >> i) & 1);
    }

    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    void put_bit(int bit) {
        if (used_ == 0) bytes_.push_back(0);
        if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80 >> used_);
        used_ = (used_ + 1) % 8;
    }

    std::vector<std::uint8_t> bytes_;
    int used_ = 0;
};

// Reads MSB-first bits; offsets reported by FormatError are bit offsets.
class BitReader {
public:
    explicit BitReader(const std::vector<std::uint8_t>& bytes)
        : bytes_(bytes), total_(bytes.size() * 8) {}

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return total_ - pos_; }

    int read_bit() {
        if (pos_ >= total_) throw FormatError("unexpected end of MH stream", pos_);
        int bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1;
        ++pos_;
        return bit;
    }

private:
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
    std::size_t total_;
};

using CodeMap = std::unordered_map<std::uint32_t, std::uint16_t>;

std::uint32_t code_key(std::uint16_t bits, int length) {
    return (static_cast<std::uint32_t>(length) << 16) | bits;
}

CodeMap build_map(std::span<const Codeword> codes) {
    CodeMap map;
    for (const Codeword& c : codes) map.emplace(code_key(c.bits, c.length), c.run);
    return map;
}

const CodeMap& terminating_map(bool black) {
    static const CodeMap white = build_map(kWhiteTerminating);
    static const CodeMap black_map = build_map(kBlackTerminating);
    return black ? black_map : white;
}

const CodeMap& makeup_map(bool black) {
    static const CodeMap white = build_map(kWhiteMakeup);
    static const CodeMap black_map = build_map(kBlackMakeup);
    return black ? black_map : white;
}

void encode_run(BitWriter& out, int run, bool black) {
    const auto& makeups = black ? kBlackMakeup : kWhiteMakeup;
    while (run > kMaxSingleMakeup + 63) {
        out.put(makeups[kMaxSingleMakeup / 64 - 1]);
        run -= kMaxSingleMakeup;
    }
    if (run >= 64) {
        out.put(makeups[run / 64 - 1]);
        run %= 64;
    }
    out.put(black ? kBlackTerminating[run] : kWhiteTerminating[run]);
}

struct RunToken {
    bool is_eol = false;
    int run = 0;
    std::size_t offset = 0;  // bit offset where the token started
};

// Reads make-up codes (accumulating) until a terminating code closes the
// run, or reports an EOL seen instead of a codeword.
RunToken read_run(BitReader& in, bool black) {
    RunToken token;
    token.offset = in.pos();
    int total = 0;
    for (;;) {
        std::uint16_t bits = 0;
        int length = 0;
        std::size_t start = in.pos();
        for (;;) {
            bits = static_cast<std::uint16_t>((bits << 1) | in.read_bit());
            ++length;
            if (length == kEol.length && bits == kEol.bits) {
                token.is_eol = true;
                return token;
            }
            if (auto it = terminating_map(black).find(code_key(bits, length));
                it != terminating_map(black).end()) {
                token.run = total + it->second;
                return token;
            }
            if (auto it = makeup_map(black).find(code_key(bits, length));
                it != makeup_map(black).end()) {
                total += it->second;
                break;  // continue with the next codeword of the same run
            }
            if (length > kMaxCodeLength)
                throw FormatError("unknown MH codeword", start);
        }
    }
}

void expect_eol(BitReader& in, const std::string& where) {
    std::size_t start = in.pos();
    std::uint16_t bits = 0;
    for (int i = 0; i < kEol.length; ++i)
        bits = static_cast<std::uint16_t>((bits << 1) | in.read_bit());
    if (bits != kEol.bits) throw FormatError("missing EOL " + where, start);
}

void expect_padding_only(BitReader& in) {
    if (in.remaining() >= 8)
        throw FormatError("trailing data after final EOL", in.pos());
    while (in.remaining() > 0)
        if (in.read_bit()) throw FormatError("nonzero padding after final EOL", in.pos() - 1);
}

void put_be32(std::string& out, std::uint32_t v) {
    out += static_cast<char>((v >> 24) & 0xff);
    out += static_cast<char>((v >> 16) & 0xff);
    out += static_cast<char>((v >> 8) & 0xff);
    out += static_cast<char>(v & 0xff);
}

std::uint32_t get_be32(std::string_view bytes, std::size_t pos) {
    return (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos])) << 24) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + 1])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + 2])) << 8) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + 3]));
}

}  // namespace

std::span<const Codeword> white_terminating() { return kWhiteTerminating; }
std::span<const Codeword> black_terminating() { return kBlackTerminating; }
std::span<const Codeword> white_makeup() { return kWhiteMakeup; }
std::span<const Codeword> black_makeup() { return kBlackMakeup; }
Codeword eol() { return kEol; }

MhBitstream encode(const RleDocument& doc) {
    validate(doc);
    MhBitstream stream;
    stream.width = doc.width;
    stream.height = doc.height();
    BitWriter out;
    for (const RleRow& row : doc.rows) {
        out.put(kEol);
        bool black = false;
        for (int run : row.runs) {
            encode_run(out, run, black);
            black = !black;
        }
    }
    if (!doc.rows.empty()) out.put(kEol);  // terminates the stream
    stream.payload = out.take();
    return stream;
}

RleDocument decode(const MhBitstream& stream) {
    if (stream.height > 0 && stream.width < 1)
        throw std::invalid_argument("MH stream declares rows but no width");
    RleDocument doc;
    doc.width = stream.width;
    BitReader in(stream.payload);
    for (int r = 1; r <= stream.height; ++r) {
        expect_eol(in, "before row " + std::to_string(r));
        RleRow row;
        long sum = 0;
        bool black = false;
        while (sum < stream.width) {
            RunToken token = read_run(in, black);
            if (token.is_eol)
                throw FormatError("row " + std::to_string(r) + " runs sum to " +
                                      std::to_string(sum) + ", declared width is " +
                                      std::to_string(stream.width),
                                  token.offset);
            if (token.run == 0 && !row.runs.empty())
                throw FormatError("row " + std::to_string(r) + ": zero-length run inside row",
                                  token.offset);
            row.runs.push_back(token.run);
            sum += token.run;
            black = !black;
            if (sum > stream.width)
                throw FormatError("row " + std::to_string(r) + " runs sum to " +
                                      std::to_string(sum) + ", declared width is " +
                                      std::to_string(stream.width),
                                  token.offset);
        }
        doc.rows.push_back(std::move(row));
    }
    if (stream.height > 0) expect_eol(in, "terminating the stream");
    expect_padding_only(in);
    return doc;
}

std::string serialize(const MhBitstream& stream) {
    std::string out = "MH1D";
    put_be32(out, static_cast<std::uint32_t>(stream.width));
    put_be32(out, static_cast<std::uint32_t>(stream.height));
    out.append(reinterpret_cast<const char*>(stream.payload.data()), stream.payload.size());
    return out;
}

MhBitstream parse(std::string_view bytes) {
    if (bytes.size() < 12 || bytes.substr(0, 4) != "MH1D")
        throw FormatError("not an MH container: bad magic", 0);
    MhBitstream stream;
    std::uint32_t w = get_be32(bytes, 4);
    std::uint32_t h = get_be32(bytes, 8);
    if (w > 1'000'000'000u) throw FormatError("MH width out of range", 4);
    if (h > 1'000'000'000u) throw FormatError("MH height out of range", 8);
    stream.width = static_cast<int>(w);
    stream.height = static_cast<int>(h);
    stream.payload.assign(bytes.begin() + 12, bytes.end());
    return stream;
}

}  // namespace rlseg::mh
