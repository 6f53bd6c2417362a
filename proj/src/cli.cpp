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

#include "rlseg/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlseg/bitimage.hpp"
#include "rlseg/eval.hpp"
#include "rlseg/mh.hpp"
#include "rlseg/profile.hpp"
#include "rlseg/rle.hpp"
#include "rlseg/segment.hpp"

namespace fs = std::filesystem;

namespace rlseg::cli {

namespace {

enum class FileFormat { Pbm, Rlc, Mh };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

FileFormat parse_format_name(const std::string& name, const std::string& path) {
    if (name == "pbm") return FileFormat::Pbm;
    if (name == "rlc") return FileFormat::Rlc;
    if (name == "mh") return FileFormat::Mh;
    throw std::runtime_error("cannot infer format of " + path +
                             " (expected extension .pbm, .rlc or .mh; use --format)");
}

FileFormat resolve_format(const std::string& path, const std::string& override_name) {
    if (!override_name.empty()) return parse_format_name(override_name, path);
    std::string ext = fs::path(path).extension().string();
    if (!ext.empty() && ext.front() == '.') ext.erase(ext.begin());
    return parse_format_name(ext, path);
}

RleDocument load_document(const std::string& path, const std::string& override_name) {
    std::string bytes = read_file(path);
    switch (resolve_format(path, override_name)) {
        case FileFormat::Pbm: return compress(load_pbm(bytes));
        case FileFormat::Rlc: return rlc_parse(bytes);
        case FileFormat::Mh: return mh::decode(mh::parse(bytes));
    }
    throw std::logic_error("unreachable");
}

std::optional<int> parse_threshold(const std::string& text) {
    if (text == "auto") return std::nullopt;
    return std::stoi(text);
}

const CLI::Validator kThresholdRule(
    [](std::string& s) -> std::string {
        if (s == "auto") return {};
        try {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used == s.size() && v >= 1) return {};
        } catch (...) {
        }
        return std::string("must be \"auto\" or an integer >= 1");
    },
    "auto|N", "THRESHOLD");

Interval parse_band(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw std::runtime_error("band must be <lo>:<hi>, got \"" + text + "\"");
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

void draw_border(BitImage& img, Interval rows, Interval cols) {
    for (int y = cols.lo; y <= cols.hi; ++y) {
        img.set(rows.lo, y, true);
        img.set(rows.hi, y, true);
    }
    for (int x = rows.lo; x <= rows.hi; ++x) {
        img.set(x, cols.lo, true);
        img.set(x, cols.hi, true);
    }
}

BitImage overlay_image(const RleDocument& doc, const SegmentationResult& result) {
    BitImage img = decompress(doc);
    for (const SegmentedLine& line : result.lines) {
        if (!line.words.empty())
            draw_border(img, line.line.rows,
                        {line.words.front().cols.lo, line.words.back().cols.hi});
        for (const WordSegment& word : line.words) {
            draw_border(img, word.rows, word.cols);
            for (const CharSegment& ch : word.chars) draw_border(img, ch.rows, ch.cols);
        }
    }
    return img;
}

// --------------------------------------------------------- subcommands

struct CompressOpts {
    std::string in, out, in_format, out_format;
};

int run_compress(const CompressOpts& opt) {
    RleDocument doc = load_document(opt.in, opt.in_format);
    switch (resolve_format(opt.out, opt.out_format)) {
        case FileFormat::Rlc: write_file(opt.out, rlc_serialize(doc)); break;
        case FileFormat::Mh: write_file(opt.out, mh::serialize(mh::encode(doc))); break;
        case FileFormat::Pbm:
            throw std::runtime_error("compress writes .rlc or .mh (use decompress for .pbm)");
    }
    return 0;
}

struct DecompressOpts {
    std::string in, out, in_format;
    bool ascii = false;
};

int run_decompress(const DecompressOpts& opt) {
    RleDocument doc = load_document(opt.in, opt.in_format);
    save_pbm_file(decompress(doc), opt.out, opt.ascii);
    return 0;
}

struct SegmentOpts {
    std::string in, in_dir, out, out_dir, overlay, in_format;
    int tau = 0;
    std::string threshold = "auto";
    int jobs = 0;
};

int segment_one(const std::string& in_path, const std::string& in_format, int tau,
                const std::optional<int>& threshold, const std::string& out_path,
                const std::string& overlay_path) {
    RleDocument doc = load_document(in_path, in_format);
    SegmentationResult result = segment_document(doc, {tau, threshold});
    if (out_path.empty())
        std::cout << seg_to_json(result);
    else
        write_file(out_path, seg_to_json(result));
    if (!overlay_path.empty()) save_pbm_file(overlay_image(doc, result), overlay_path);
    return 0;
}

int run_segment(const SegmentOpts& opt) {
    std::optional<int> threshold = parse_threshold(opt.threshold);
    if (opt.in_dir.empty())
        return segment_one(opt.in, opt.in_format, opt.tau, threshold, opt.out, opt.overlay);

    // Batch mode: every recognized file in the directory, outputs named
    // by stem, processed in parallel, reported in filename order.
    std::vector<fs::path> files;
    for (const fs::directory_entry& entry : fs::directory_iterator(opt.in_dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        if (ext == ".pbm" || ext == ".rlc" || ext == ".mh") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no .pbm/.rlc/.mh files in " + opt.in_dir);
    fs::create_directories(opt.out_dir);

    std::vector<std::string> failures(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
            try {
                std::string out = (fs::path(opt.out_dir) / files[i].stem()).string() + ".json";
                segment_one(files[i].string(), opt.in_format, opt.tau, threshold, out, "");
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    unsigned n_threads = opt.jobs > 0 ? static_cast<unsigned>(opt.jobs)
                                      : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(files.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    int rc = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (failures[i].empty()) {
            std::cout << files[i].string() << " -> "
                      << (fs::path(opt.out_dir) / files[i].stem()).string() + ".json"
                      << "\n";
        } else {
            std::cerr << files[i].string() << ": " << failures[i] << "\n";
            rc = 1;
        }
    }
    return rc;
}

struct ProfileOpts {
    std::string in, out, in_format, axis = "rows", band;
};

int run_profile(const ProfileOpts& opt) {
    RleDocument doc = load_document(opt.in, opt.in_format);
    ProfileCurve curve;
    if (opt.axis == "rows") {
        curve = row_profile(doc);
    } else {
        Interval band = opt.band.empty() ? Interval{1, doc.height()} : parse_band(opt.band);
        curve = column_profile(doc, band);
    }
    std::string csv = "index,value\n";
    for (std::size_t i = 0; i < curve.values.size(); ++i)
        csv += std::to_string(i + 1) + "," + std::to_string(curve.values[i]) + "\n";
    if (opt.out.empty())
        std::cout << csv;
    else
        write_file(opt.out, csv);
    std::cerr << "additions: " << curve.addition_count << "\n";
    return 0;
}

struct SynthOpts {
    SynthLayout layout;
    int page_width = 0, page_height = 0;
    std::uint64_t seed = 1;
    std::string out, truth;
    bool ascii = false;
};

int run_synth(SynthOpts opt) {
    if (opt.page_width > 0) opt.layout.page_width = opt.page_width;
    if (opt.page_height > 0) opt.layout.page_height = opt.page_height;
    auto [img, truth] = synth_doc(opt.layout, opt.seed);
    save_pbm_file(img, opt.out, opt.ascii);
    if (!opt.truth.empty()) write_file(opt.truth, truth_to_json(truth));
    return 0;
}

struct EvalOpts {
    std::string pred, truth, out;
    int tol = 0;
    bool json = false;
};

nlohmann::json metrics_json(const Metrics& m) {
    return {{"samples", m.samples()}, {"tp", m.tp},
            {"fp", m.fp},             {"fn", m.fn},
            {"precision", m.precision}, {"recall", m.recall},
            {"f_measure", m.f_measure}};
}

int run_eval(const EvalOpts& opt) {
    SegmentationResult pred = seg_from_json(read_file(opt.pred));
    GroundTruth truth = truth_from_json(read_file(opt.truth));
    EvalReport report = evaluate(pred, truth, opt.tol);

    std::string out;
    if (opt.json) {
        nlohmann::json j{{"tol", opt.tol},
                         {"lines", metrics_json(report.lines)},
                         {"words", metrics_json(report.words)},
                         {"chars", metrics_json(report.chars)}};
        out = j.dump(2) + "\n";
    } else {
        char buf[128];
        out = "Level       Samples  Precision(%)  Recall(%)  F-Measure\n";
        const std::pair<const char*, const Metrics*> rows[] = {
            {"Lines", &report.lines}, {"Words", &report.words}, {"Characters", &report.chars}};
        for (const auto& [name, m] : rows) {
            std::snprintf(buf, sizeof buf, "%-10s %8lld %13.2f %10.2f %10.2f\n", name,
                          static_cast<long long>(m->samples()), m->precision, m->recall,
                          m->f_measure);
            out += buf;
        }
    }
    if (opt.out.empty())
        std::cout << out;
    else
        write_file(opt.out, out);
    return 0;
}

struct BenchOpts {
    std::string in, out, in_format;
    int tau = 0;
    std::string threshold = "auto";
    bool csv = false;
};

int run_bench(const BenchOpts& opt) {
    RleDocument doc = load_document(opt.in, opt.in_format);
    SegmentationResult result = segment_document(doc, {opt.tau, parse_threshold(opt.threshold)});
    CostReport report = cost_report(doc, result);
    std::string out = opt.csv ? cost_to_csv(report) : cost_to_json(report);
    if (opt.out.empty())
        std::cout << out;
    else
        write_file(opt.out, out);
    return 0;
}

}  // namespace

int dispatch(std::vector<std::string> args) {
    CLI::App app{"Line, word and character segmentation of run-length compressed "
                 "printed-text document images"};
    app.require_subcommand(1);
    int rc = 0;

    CompressOpts compress_opts;
    CLI::App* sc = app.add_subcommand("compress", "Convert a page to .rlc or .mh");
    sc->add_option("--in", compress_opts.in, "input page (.pbm, .rlc or .mh)")->required();
    sc->add_option("--out", compress_opts.out, "output file (.rlc or .mh)")->required();
    sc->add_option("--in-format", compress_opts.in_format, "override input format")
        ->check(CLI::IsMember({"pbm", "rlc", "mh"}));
    sc->add_option("--format", compress_opts.out_format, "override output format")
        ->check(CLI::IsMember({"rlc", "mh"}));
    sc->callback([&] { rc = run_compress(compress_opts); });

    DecompressOpts decompress_opts;
    sc = app.add_subcommand("decompress", "Expand a compressed page to .pbm");
    sc->add_option("--in", decompress_opts.in, "input page (.rlc or .mh)")->required();
    sc->add_option("--out", decompress_opts.out, "output .pbm")->required();
    sc->add_option("--format", decompress_opts.in_format, "override input format")
        ->check(CLI::IsMember({"pbm", "rlc", "mh"}));
    sc->add_flag("--ascii", decompress_opts.ascii, "write P1 instead of P4");
    sc->callback([&] { rc = run_decompress(decompress_opts); });

    SegmentOpts segment_opts;
    sc = app.add_subcommand("segment", "Segment a page into lines, words and characters");
    auto* in_opt = sc->add_option("--in", segment_opts.in, "input page (.pbm, .rlc or .mh)");
    auto* dir_opt = sc->add_option("--in-dir", segment_opts.in_dir, "batch: segment every page in a directory");
    in_opt->excludes(dir_opt);
    dir_opt->excludes(in_opt);
    sc->add_option("--out", segment_opts.out, "output JSON path");
    sc->add_option("--out-dir", segment_opts.out_dir, "batch: output directory")->needs(dir_opt);
    sc->add_option("--overlay", segment_opts.overlay, "write a PBM with box borders drawn");
    sc->add_option("--format", segment_opts.in_format, "override input format")
        ->check(CLI::IsMember({"pbm", "rlc", "mh"}));
    sc->add_option("--tau", segment_opts.tau, "noise tolerance on profile counts")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sc->add_option("--threshold", segment_opts.threshold, "word-space threshold")
        ->check(kThresholdRule)
        ->capture_default_str();
    sc->add_option("--jobs", segment_opts.jobs, "batch worker threads (default: hardware)")
        ->check(CLI::PositiveNumber);
    sc->callback([&] {
        if (segment_opts.in.empty() && segment_opts.in_dir.empty())
            throw CLI::RequiredError("--in or --in-dir");
        if (!segment_opts.in_dir.empty() && segment_opts.out_dir.empty())
            throw CLI::RequiredError("--out-dir");
        rc = run_segment(segment_opts);
    });

    ProfileOpts profile_opts;
    sc = app.add_subcommand("profile", "Emit a projection profile as CSV");
    sc->add_option("--in", profile_opts.in, "input page (.pbm, .rlc or .mh)")->required();
    sc->add_option("--out", profile_opts.out, "output CSV path (default: stdout)");
    sc->add_option("--format", profile_opts.in_format, "override input format")
        ->check(CLI::IsMember({"pbm", "rlc", "mh"}));
    sc->add_option("--axis", profile_opts.axis, "profile axis")
        ->check(CLI::IsMember({"rows", "cols"}))
        ->capture_default_str();
    sc->add_option("--band", profile_opts.band, "row band <lo>:<hi> for --axis cols");
    sc->callback([&] { rc = run_profile(profile_opts); });

    SynthOpts synth_opts;
    sc = app.add_subcommand("synth", "Generate a ground-truthed synthetic page");
    sc->add_option("--lines", synth_opts.layout.lines)->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sc->add_option("--words", synth_opts.layout.words_per_line)->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc->add_option("--chars", synth_opts.layout.chars_per_word)->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc->add_option("--glyph-w", synth_opts.layout.glyph_width)->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc->add_option("--glyph-h", synth_opts.layout.glyph_height)->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc->add_option("--char-gap", synth_opts.layout.char_gap)->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc->add_option("--word-gap", synth_opts.layout.word_gap)->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc->add_option("--line-gap", synth_opts.layout.line_gap)->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc->add_option("--margin", synth_opts.layout.margin)->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sc->add_option("--page-width", synth_opts.page_width, "fixed page width")
        ->check(CLI::PositiveNumber);
    sc->add_option("--page-height", synth_opts.page_height, "fixed page height")
        ->check(CLI::PositiveNumber);
    sc->add_option("--seed", synth_opts.seed, "rng seed")->capture_default_str();
    sc->add_option("--out", synth_opts.out, "output .pbm")->required();
    sc->add_option("--truth", synth_opts.truth, "ground-truth JSON path");
    sc->add_flag("--ascii", synth_opts.ascii, "write P1 instead of P4");
    sc->callback([&] { rc = run_synth(synth_opts); });

    EvalOpts eval_opts;
    sc = app.add_subcommand("eval", "Score a segmentation against ground truth");
    sc->add_option("--pred", eval_opts.pred, "segmentation JSON")->required();
    sc->add_option("--truth", eval_opts.truth, "ground-truth JSON")->required();
    sc->add_option("--tol", eval_opts.tol, "boundary tolerance in pixels")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sc->add_flag("--json", eval_opts.json, "emit JSON instead of the table");
    sc->add_option("--out", eval_opts.out, "write the report to a file");
    sc->callback([&] { rc = run_eval(eval_opts); });

    BenchOpts bench_opts;
    sc = app.add_subcommand("bench", "Report compressed-path operation counts");
    sc->add_option("--in", bench_opts.in, "input page (.pbm, .rlc or .mh)")->required();
    sc->add_option("--out", bench_opts.out, "output path (default: stdout)");
    sc->add_option("--format", bench_opts.in_format, "override input format")
        ->check(CLI::IsMember({"pbm", "rlc", "mh"}));
    sc->add_option("--tau", bench_opts.tau)->check(CLI::NonNegativeNumber)->capture_default_str();
    sc->add_option("--threshold", bench_opts.threshold)->check(kThresholdRule)
        ->capture_default_str();
    sc->add_flag("--csv", bench_opts.csv, "emit CSV instead of JSON");
    sc->callback([&] { rc = run_bench(bench_opts); });

    std::reverse(args.begin(), args.end());  // CLI11 takes the vector reversed
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

int dispatch(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return dispatch(std::move(args));
}

}  // namespace rlseg::cli
