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
#include <string>

#include "rlseg/bitimage.hpp"
#include "rlseg/common.hpp"
#include "rlseg/rle.hpp"
#include "rlseg/segment.hpp"

namespace rlseg {

/// Precision/recall/F-measure (as percentages) for one segmentation
/// level. When a side has no items its rate is vacuously 100.
struct Metrics {
    double precision = 0;
    double recall = 0;
    double f_measure = 0;
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t samples() const { return tp + fn; }  // ground-truth items
};

struct EvalReport {
    Metrics lines;
    Metrics words;
    Metrics chars;
};

/// Harmonic mean 2PR/(P+R) of two percentages; 0 when both are 0.
double f_measure(double precision, double recall);

/// The same segmentation semantics re-executed directly on pixels: row
/// sums, maximal ink bands, blank-column classification and gap-driven
/// word grouping, sharing no code with the compressed path. Serves as
/// the independent oracle; its ledger counts pixel reads.
SegmentationResult reference_segment(const BitImage& img, const SegmentConfig& config = {});

/// Greedy one-to-one matching in reading order: a predicted box matches
/// the first unmatched truth box whose every boundary differs by at most
/// tol pixels. Computed per level (lines by rows; words and characters
/// by rows and cols).
EvalReport evaluate(const SegmentationResult& pred, const GroundTruth& truth, int tol = 0);

/// Replays ground truth as a segmentation result (identity predictions).
SegmentationResult as_segmentation(const GroundTruth& truth);

/// Compressed-path operation totals against the naive m*n' pixel budget.
struct CostReport {
    int height = 0;
    int width = 0;
    std::uint64_t run_entries = 0;       ///< total run-length entries in the document
    std::uint64_t profile_additions = 0;
    std::uint64_t scanner_pops = 0;
    std::uint64_t scanner_advances = 0;
    std::uint64_t pixel_ops = 0;
    std::uint64_t naive_pixel_ops = 0;   ///< m * n'
    double addition_ratio = 0;           ///< profile_additions / naive_pixel_ops
};

CostReport cost_report(const RleDocument& doc, const SegmentationResult& result);

std::string cost_to_json(const CostReport& report);
std::string cost_to_csv(const CostReport& report);

}  // namespace rlseg
