// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#include "tcei/calibrate.hpp"

#include <cmath>

namespace tcei {
namespace {

void check_same_length(Index a, Index b, const char* what) {
  if (a != b) throw ValidationError(std::string(what) + ": lengths differ");
}

}  // namespace

VecX similarity(const VecX& p_ec, const VecX& p_tm) {
  check_same_length(p_ec.size(), p_tm.size(), "similarity");
  VecX sim(p_ec.size());
  for (Index i = 0; i < sim.size(); ++i) {
    const double m = std::max(std::abs(p_ec(i)), std::abs(p_tm(i)));
    sim(i) = m < kAdjustmentEps ? 0.0 : std::abs(p_ec(i) - p_tm(i)) / m;
  }
  return sim;
}

VecX calibration_delta(const VecX& p_ec, const VecX& p_tm, const VecX& sim) {
  check_same_length(p_ec.size(), p_tm.size(), "calibration_delta");
  check_same_length(p_ec.size(), sim.size(), "calibration_delta");
  return p_ec - (VecX::Ones(sim.size()) - sim).cwiseProduct(p_tm);
}

PredictionMap experiential_predict(const PredictionMap& p_in, const VecX& u, const VecX& p_ca) {
  check_same_length(p_in.size(), u.size(), "experiential_predict");
  check_same_length(p_in.size(), p_ca.size(), "experiential_predict");
  if (u.size() > 0 && (u.minCoeff() < 0.0 || u.maxCoeff() > 0.25 + 1e-12)) {
    throw ValidationError("uncertainty entries must lie in [0, 0.25]");
  }
  return PredictionMap{p_in.scores + u.cwiseProduct(p_ca), /*normalized=*/false};
}

std::pair<PredictionMap, CalibrationDiag> calibrate_object(const CalibrationInput& input) {
  validate_map(input.raw_map, /*expect_normalized=*/true);
  const Index n = input.raw_map.size();
  check_same_length(n, input.p_in.size(), "calibrate_object");
  check_same_length(n, input.p_tm.size(), "calibrate_object");
  check_same_length(n, input.p_ec.size(), "calibrate_object");

  CalibrationDiag diag;
  diag.sim = similarity(input.p_ec, input.p_tm);
  diag.p_ca = calibration_delta(input.p_ec, input.p_tm, diag.sim);
  for (Index i = 0; i < n; ++i) {
    // Mutual absence: neither system proposed an adjustment here.
    if (std::max(std::abs(input.p_ec(i)), std::abs(input.p_tm(i))) < kAdjustmentEps) {
      diag.p_ca(i) = 0.0;
    }
  }
  const VecX u = uncertainty(input.raw_map);
  diag.activation = u.cwiseProduct(diag.p_ca).cwiseAbs().sum();
  return {experiential_predict(input.p_in, u, diag.p_ca), std::move(diag)};
}

double clamped_renorm_entropy(const VecX& scores) {
  const VecX clamped = scores.cwiseMax(0.0);
  const double total = clamped.sum();
  if (total <= 0.0) return 1.0;
  return normalized_entropy(VecX(clamped / total));
}

CalibrationStrategy parse_strategy(std::string_view name) {
  if (name == "tcei") return CalibrationStrategy::kTcei;
  if (name == "average") return CalibrationStrategy::kAverage;
  if (name == "entropy") return CalibrationStrategy::kEntropy;
  if (name == "none") return CalibrationStrategy::kNone;
  throw ValidationError("unknown calibration strategy: " + std::string(name));
}

std::string_view to_string(CalibrationStrategy strategy) {
  switch (strategy) {
    case CalibrationStrategy::kTcei: return "tcei";
    case CalibrationStrategy::kAverage: return "average";
    case CalibrationStrategy::kEntropy: return "entropy";
    case CalibrationStrategy::kNone: return "none";
  }
  throw ValidationError("invalid calibration strategy value");
}

StrategyResult apply_strategy(CalibrationStrategy strategy, const PredictionMap& raw_map,
                              const VecX& p_tm, const VecX& p_ec) {
  validate_map(raw_map, /*expect_normalized=*/true);
  const Index n = raw_map.size();
  check_same_length(n, p_tm.size(), "apply_strategy");
  check_same_length(n, p_ec.size(), "apply_strategy");

  StrategyResult out;
  out.p_in = PredictionMap{raw_map.scores + p_tm, /*normalized=*/false};
  out.diag = CalibrationDiag{VecX::Zero(n), VecX::Zero(n), 0.0};

  switch (strategy) {
    case CalibrationStrategy::kTcei: {
      auto [p_ex, diag] = calibrate_object(CalibrationInput{raw_map, out.p_in, p_tm, p_ec});
      out.p_final = std::move(p_ex);
      out.diag = std::move(diag);
      break;
    }
    case CalibrationStrategy::kAverage:
      out.p_final = PredictionMap{raw_map.scores + 0.5 * (p_tm + p_ec), /*normalized=*/false};
      break;
    case CalibrationStrategy::kEntropy: {
      const VecX with_tm = raw_map.scores + p_tm;
      const VecX with_ec = raw_map.scores + p_ec;
      const bool keep_tm = clamped_renorm_entropy(with_tm) <= clamped_renorm_entropy(with_ec);
      out.p_final = PredictionMap{keep_tm ? with_tm : with_ec, /*normalized=*/false};
      break;
    }
    case CalibrationStrategy::kNone:
      out.p_final = raw_map;
      break;
  }
  return out;
}

}  // namespace tcei
