// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#include "tcei/guidance.hpp"

#include <cmath>

namespace tcei {

GuidanceCue make_cue(const PredictionMap& raw_map, CacheRole role, double tau,
                     Index excluded_index) {
  validate_map(raw_map, /*expect_normalized=*/true);
  const VecX& p = raw_map.scores;
  GuidanceCue cue{VecX::Zero(p.size()), role};
  if (role == CacheRole::kConfident) {
    Index best = -1;
    for (Index i = 0; i < p.size(); ++i) {
      if (i == excluded_index) continue;
      if (best < 0 || p(i) > p(best)) best = i;
    }
    if (best >= 0) cue.values(best) = 1.0;
  } else {
    for (Index i = 0; i < p.size(); ++i) {
      if (p(i) > tau) cue.values(i) = -1.0;
    }
  }
  return cue;
}

MatX cue_matrix(const std::vector<GuidanceCue>& cues, Index vocab_size) {
  MatX m(static_cast<Index>(cues.size()), vocab_size);
  for (std::size_t i = 0; i < cues.size(); ++i) {
    if (cues[i].values.size() != vocab_size) {
      throw ValidationError("guidance cue length does not match vocabulary size");
    }
    m.row(static_cast<Index>(i)) = cues[i].values.transpose();
  }
  return m;
}

std::vector<GuidanceCue> cues_from_export(const CacheExport& kv, double tau,
                                          Index excluded_confident) {
  std::vector<GuidanceCue> cues;
  cues.reserve(kv.raw_maps.size());
  for (std::size_t i = 0; i < kv.raw_maps.size(); ++i) {
    const bool confident = kv.roles[i] == CacheRole::kConfident;
    cues.push_back(
        make_cue(kv.raw_maps[i], kv.roles[i], tau, confident ? excluded_confident : Index{-1}));
  }
  return cues;
}

MatX softmax_rows(const MatX& scores) {
  MatX out(scores.rows(), scores.cols());
  if (scores.cols() == 0) return out;
  for (Index i = 0; i < scores.rows(); ++i) {
    const VecX row = scores.row(i).transpose();
    const VecX e = (row.array() - row.maxCoeff()).exp();
    out.row(i) = (e / e.sum()).transpose();
  }
  return out;
}

MatX attention_weights(const MatX& queries, const MatX& keys) {
  if (queries.cols() != keys.cols()) {
    throw ValidationError("query and key feature dimensions differ");
  }
  if (keys.rows() == 0) return MatX(queries.rows(), 0);
  if (queries.cols() == 0) throw ValidationError("feature dimension must be positive");
  const double scale = 1.0 / std::sqrt(static_cast<double>(queries.cols()));
  return softmax_rows(queries * keys.transpose() * scale);
}

MatX attend(const MatX& queries, const MatX& keys, const std::vector<GuidanceCue>& cues,
            Index vocab_size) {
  return attend_weighted(queries, keys, cues, vocab_size).first;
}

std::pair<MatX, MatX> attend_weighted(const MatX& queries, const MatX& keys,
                                      const std::vector<GuidanceCue>& cues, Index vocab_size) {
  if (static_cast<Index>(cues.size()) != keys.rows()) {
    throw ValidationError("one guidance cue required per key row");
  }
  if (keys.rows() == 0) {
    return {MatX::Zero(queries.rows(), vocab_size), MatX(queries.rows(), 0)};
  }
  MatX weights = attention_weights(queries, keys);
  // Rows are convex combinations of {-1,0,+1} cues; the clamp only trims
  // one-ulp float spill when all weight lands on agreeing cues.
  MatX guidance = (weights * cue_matrix(cues, vocab_size)).array().min(1.0).max(-1.0).matrix();
  return {std::move(guidance), std::move(weights)};
}

PredictionMap intuitive_predict(const PredictionMap& raw_map, const VecX& tm_guidance) {
  validate_map(raw_map, /*expect_normalized=*/true);
  if (raw_map.size() != tm_guidance.size()) {
    throw ValidationError("guidance length does not match prediction map");
  }
  return PredictionMap{raw_map.scores + tm_guidance, /*normalized=*/false};
}

}  // namespace tcei
