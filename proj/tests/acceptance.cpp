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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "rlseg/bitimage.hpp"
#include "rlseg/eval.hpp"
#include "rlseg/mh.hpp"
#include "rlseg/profile.hpp"
#include "rlseg/rle.hpp"
#include "rlseg/segment.hpp"

using namespace rlseg;
using namespace rlseg::testing;

namespace {

struct CheckFailure {
    std::string what;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure{what};
}

int g_failures = 0;

template <typename Body>
void criterion(int id, const char* name, Body&& body) {
    try {
        std::string detail = body();
        std::printf("PASS  criterion %d: %s%s%s\n", id, name, detail.empty() ? "" : " - ",
                    detail.c_str());
    } catch (const CheckFailure& f) {
        ++g_failures;
        std::printf("FAIL  criterion %d: %s - %s\n", id, name, f.what.c_str());
    } catch (const std::exception& e) {
        ++g_failures;
        std::printf("FAIL  criterion %d: %s - unexpected error: %s\n", id, name, e.what());
    }
}

// The synthetic corpus shared by criteria 4, 5, 7 and 8: char gaps {1,2},
// word gaps {4,6,8}, square glyphs of side 3..8, six page shapes each.
struct CorpusPage {
    SynthLayout layout;
    BitImage image;
    GroundTruth truth;
    RleDocument doc;
};

const std::vector<CorpusPage>& corpus() {
    static const std::vector<CorpusPage> pages = [] {
        std::vector<CorpusPage> out;
        const int line_counts[] = {2, 3, 4};
        const int word_counts[] = {2, 3, 4};
        const int char_counts[] = {2, 3, 4, 5};
        for (int char_gap : {1, 2})
            for (int word_gap : {4, 6, 8})
                for (int glyph = 3; glyph <= 8; ++glyph)
                    for (int variant = 0; variant < 6; ++variant) {
                        SynthLayout layout;
                        layout.lines = line_counts[variant % 3];
                        layout.words_per_line = word_counts[(variant + glyph) % 3];
                        layout.chars_per_word = char_counts[(variant + char_gap) % 4];
                        layout.glyph_width = glyph;
                        layout.glyph_height = glyph;
                        layout.char_gap = char_gap;
                        layout.word_gap = word_gap;
                        layout.line_gap = 3;
                        layout.margin = 2;
                        std::uint64_t seed =
                            static_cast<std::uint64_t>(100000 * char_gap + 1000 * word_gap +
                                                       100 * glyph + variant);
                        auto [img, truth] = synth_doc(layout, seed);
                        RleDocument doc = compress(img);
                        out.push_back({layout, std::move(img), std::move(truth), std::move(doc)});
                    }
        return out;
    }();
    return pages;
}

std::string count(std::size_t n, const char* what) {
    return std::to_string(n) + " " + what;
}

}  // namespace

int main() {
    criterion(1, "13x14 sample page is compressed bit-exactly", [] {
        BitImage img = sample_page();
        double best_ns = 1e18;
        RleDocument doc;
        for (int rep = 0; rep < 5; ++rep) {
            auto t0 = std::chrono::steady_clock::now();
            doc = compress(img);
            auto grid = to_padded_matrix(doc);
            BitImage back = decompress(doc);
            auto t1 = std::chrono::steady_clock::now();
            require(grid == kSamplePageRuns, "padded run matrix differs from the expected 13x5 grid");
            require(back == img, "decompression failed to invert compression");
            best_ns = std::min(
                best_ns,
                static_cast<double>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
        }
        require(best_ns < 1e6, "round trip took " + std::to_string(best_ns) + " ns (limit 1 ms)");
        return "exact 13x5 matrix, round trip in " + std::to_string(static_cast<long>(best_ns)) +
               " ns";
    });

    criterion(2, "codec roundtrips are identities on 1000 random images", [] {
        std::mt19937_64 rng(0x5EED0002);
        for (int i = 0; i < 1000; ++i) {
            BitImage img = random_image(rng, 256);
            require(load_pbm(save_pbm(img, true)) == img, "P1 roundtrip broke image " +
                                                              std::to_string(i));
            require(load_pbm(save_pbm(img, false)) == img, "P4 roundtrip broke image " +
                                                               std::to_string(i));
            RleDocument doc = compress(img);
            require(decompress(doc) == img, "RLE roundtrip broke image " + std::to_string(i));
            mh::MhBitstream stream = mh::encode(doc);
            require(mh::decode(stream) == doc, "MH roundtrip broke image " + std::to_string(i));
            require(mh::parse(mh::serialize(stream)) == stream,
                    "MH container roundtrip broke image " + std::to_string(i));
        }
        return std::string("1000 images up to 256x256, bit-exact");
    });

    criterion(3, "virtual columns equal the decompressed columns", [] {
        std::mt19937_64 rng(0x5EED0003);
        for (int i = 0; i < 100; ++i) {
            BitImage img = random_image(rng, 128);
            RleDocument doc = compress(img);
            ColumnScanner scanner(doc, {1, img.height()});
            for (int y = 1; y <= img.width(); ++y) {
                ColumnTransitions col = scanner.advance();
                for (int x = 1; x <= img.height(); ++x)
                    require(col.black(x) == img.black(x, y),
                            "document " + std::to_string(i) + " column " + std::to_string(y) +
                                " row " + std::to_string(x) + " mismatch");
            }
            require(scanner.exhausted(), "scanner not exhausted after width advances");
        }
        return std::string("100 documents up to 128x128, every column exact");
    });

    criterion(4, "compressed and pixel paths segment identically", [] {
        std::size_t pages = 0;
        for (const CorpusPage& page : corpus()) {
            SegmentationResult compressed = segment_document(page.doc);
            SegmentationResult pixel = reference_segment(page.image);
            require(same_boxes(compressed, pixel),
                    "auto-threshold mismatch on corpus page " + std::to_string(pages));
            SegmentConfig fixed;
            fixed.threshold = 3;
            require(same_boxes(segment_document(page.doc, fixed),
                               reference_segment(page.image, fixed)),
                    "fixed-threshold mismatch on corpus page " + std::to_string(pages));
            ++pages;
        }
        require(pages >= 200, "corpus too small: " + std::to_string(pages));
        return count(pages, "pages, exact box equality on both configs");
    });

    criterion(5, "auto threshold recovers synthetic truth perfectly", [] {
        std::size_t asserted = 0;
        for (const CorpusPage& page : corpus()) {
            if (!(page.layout.char_gap * 2 < page.layout.word_gap)) continue;
            SegmentationResult pred = segment_document(page.doc);
            EvalReport report = evaluate(pred, page.truth, 0);
            for (const Metrics* m : {&report.lines, &report.words, &report.chars})
                require(m->precision == 100.0 && m->recall == 100.0 && m->f_measure == 100.0,
                        "page with char gap " + std::to_string(page.layout.char_gap) +
                            ", word gap " + std::to_string(page.layout.word_gap) +
                            " scored below 100");
            ++asserted;
        }
        require(asserted >= 100, "too few qualifying pages: " + std::to_string(asserted));
        return count(asserted, "qualifying pages at P=R=F=100 on all three levels");
    });

    criterion(6, "published F-measures follow from their P/R pairs", [] {
        const struct {
            double p, r, f;
        } rows[] = {{96.19, 100.0, 98.06},
                    {99.09, 100.0, 99.54},
                    {100.0, 100.0, 100.0},
                    {96.96, 99.43, 98.18},
                    {94.39, 88.68, 91.45}};
        for (const auto& row : rows) {
            double f = f_measure(row.p, row.r);
            require(std::abs(f - row.f) <= 0.01, "P=" + std::to_string(row.p) +
                                                     " R=" + std::to_string(row.r) + " gave F=" +
                                                     std::to_string(f));
        }
        return std::string("5 published P/R/F rows reproduced within 0.01");
    });

    criterion(7, "operation counts respect the compressed-domain bounds", [] {
        // the worked 13x14 example
        RleDocument sample = compress(sample_page());
        ProfileCurve curve = row_profile(sample);
        require(curve.addition_count == 18, "sample page additions: expected 18, got " +
                                                std::to_string(curve.addition_count));
        require(curve.addition_count <= 91, "sample page additions exceed 91");
        CostReport report = cost_report(sample, segment_document(sample));
        require(report.naive_pixel_ops == 182, "sample page baseline is not 182");

        // bound holds on arbitrary content
        std::mt19937_64 rng(0x5EED0007);
        for (int i = 0; i < 100; ++i) {
            BitImage img = random_image(rng, 128);
            ProfileCurve p = row_profile(compress(img));
            require(p.addition_count <= static_cast<std::uint64_t>(img.height()) *
                                            ((static_cast<std::uint64_t>(img.width()) + 1) / 2),
                    "addition bound violated on random image " + std::to_string(i));
        }

        // ledger shape on the synthetic corpus
        for (const CorpusPage& page : corpus()) {
            SegmentationResult result = segment_document(page.doc);
            const std::uint64_t m = static_cast<std::uint64_t>(page.doc.height());
            const std::uint64_t n = static_cast<std::uint64_t>(page.doc.width);
            require(result.cost.line_scan_steps == m, "line tracing is not a single profile pass");
            require(result.cost.profile_additions <= m * ((n + 1) / 2),
                    "profile additions exceed m*ceil(n/2)");
            require(result.cost.scanner_advances <= result.lines.size() * n,
                    "more than n' advances for some line band");
            std::uint64_t pop_budget = 0;
            for (const SegmentedLine& line : result.lines)
                pop_budget += n * static_cast<std::uint64_t>(line.line.rows.length());
            require(result.cost.scanner_pops <= pop_budget,
                    "pop count exceeds the lines * n' * band budget");
            require(result.cost.pixel_ops == 0, "compressed path touched pixels");
        }
        return std::string("sample page at 18/91 additions vs 182; bounds hold on " +
                           std::to_string(corpus().size() + 100) + " inputs");
    });

    criterion(8, "threshold behavior is monotone with exact extremes", [] {
        for (const CorpusPage& page : corpus()) {
            SegmentConfig config;
            config.threshold = 1;
            SegmentationResult per_char = segment_document(page.doc, config);
            require(per_char.total_words() == per_char.total_chars(),
                    "threshold 1 did not make words equal chars");
            for (const SegmentedLine& line : per_char.lines)
                for (const WordSegment& word : line.words)
                    require(word.chars.size() == 1 && word.cols == word.chars[0].cols,
                            "threshold 1 word is not a single char");

            config.threshold = page.doc.width + 1;
            SegmentationResult one_word = segment_document(page.doc, config);
            for (const SegmentedLine& line : one_word.lines)
                require(line.words.size() == 1, "oversized threshold left multiple words");

            std::vector<std::size_t> previous;
            for (int threshold : {1, 2, 3, 5, 8, 12, page.doc.width + 1}) {
                config.threshold = threshold;
                SegmentationResult result = segment_document(page.doc, config);
                std::vector<std::size_t> counts;
                for (const SegmentedLine& line : result.lines) counts.push_back(line.words.size());
                if (!previous.empty()) {
                    require(counts.size() == previous.size(), "line count changed with threshold");
                    for (std::size_t i = 0; i < counts.size(); ++i)
                        require(counts[i] <= previous[i],
                                "word count increased when the threshold grew");
                }
                previous = std::move(counts);
            }
        }
        return count(corpus().size(), "pages: monotone word counts, exact extremes");
    });

    if (g_failures == 0) {
        std::printf("all %d criteria passed\n", 8);
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
