// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "tcei/core.hpp"

namespace tcei {

// Division guard for the adjustment-similarity ratio. When both adjustments
// are below this magnitude the pair is treated as mutually absent: sim := 0
// and the calibration delta is zeroed, so absent guidance never perturbs the
// intuitive output.
inline constexpr double kAdjustmentEps = 1e-8;

/// Elementwise adjustment similarity: |ec - tm| / max(|ec|, |tm|), in [0,2].
/// 0 means identical adjustments; values above 1 indicate sign disagreement.
VecX similarity(const VecX& p_ec, const VecX& p_tm);

/// Elementwise calibration delta: ec - (1 - sim) * tm.
VecX calibration_delta(const VecX& p_ec, const VecX& p_tm, const VecX& sim);

/// Uncertainty-gated correction: p_in + u * p_ca in score space.
PredictionMap experiential_predict(const PredictionMap& p_in, const VecX& u, const VecX& p_ca);

struct CalibrationInput {
  PredictionMap raw_map;  // P, normalized
  PredictionMap p_in;     // intuitive score map
  VecX p_tm;              // transient guidance row
  VecX p_ec;              // experiential guidance row
};

struct CalibrationDiag {
  VecX sim;
  VecX p_ca;
  double activation = 0.0;  // sum_i |u_i * p_ca_i|, magnitude of correction
};

/// Full calibration chain for one object: similarity, delta (with the
/// mutual-absence convention), uncertainty gate.
std::pair<PredictionMap, CalibrationDiag> calibrate_object(const CalibrationInput& input);

/// Normalized entropy of a score map after clamping negatives to zero and
/// renormalizing; an all-nonpositive map counts as maximally uncertain (1).
double clamped_renorm_entropy(const VecX& scores);

enum class CalibrationStrategy { kTcei, kAverage, kEntropy, kNone };

CalibrationStrategy parse_strategy(std::string_view name);
std::string_view to_string(CalibrationStrategy strategy);

struct StrategyResult {
  PredictionMap p_final;  // score map consumed by ID assignment
  PredictionMap p_in;     // intuitive map, kept for diagnostics
  CalibrationDiag diag;   // zeros for the non-calibrating strategies
};

/// Applies one calibration strategy to an object's raw map and guidance
/// rows. `average` blends both guidances into the intuitive sum, `entropy`
/// keeps whichever single guidance yields the lower clamped entropy (ties
/// favor the transient side), `none` passes the raw map through.
StrategyResult apply_strategy(CalibrationStrategy strategy, const PredictionMap& raw_map,
                              const VecX& p_tm, const VecX& p_ec);

}  // namespace tcei
