// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "tcei/core.hpp"
#include "tcei/memory.hpp"

namespace tcei {

/// Masked value vector derived from a cached prediction map. A confident cue
/// carries a single +1 at the map argmax; an uncertain cue carries -1 at
/// every slot whose probability exceeds the threshold tau.
struct GuidanceCue {
  VecX values;  // entries in {-1, 0, +1}
  CacheRole source_role = CacheRole::kConfident;
};

struct GuidanceConfig {
  double tau = 0.03;  // multi-hot threshold
};

inline void validate_guidance_config(const GuidanceConfig& config) {
  if (!(config.tau > 0.0 && config.tau < 1.0)) {
    throw ValidationError("tau must lie in (0,1)");
  }
}

/// Builds the cue for one cached map. If `excluded_index` is nonnegative it
/// never receives the confident +1 (the argmax is taken over the remaining
/// slots); uncertain cues are unaffected by it. Argmax ties break low.
GuidanceCue make_cue(const PredictionMap& raw_map, CacheRole role, double tau,
                     Index excluded_index = -1);

/// Stacks cue value vectors into a (num cues) x vocab matrix.
MatX cue_matrix(const std::vector<GuidanceCue>& cues, Index vocab_size);

/// Cues for every entry of a merged cache export, in export order.
std::vector<GuidanceCue> cues_from_export(const CacheExport& kv, double tau,
                                          Index excluded_confident = -1);

/// Row-wise softmax of an n x r score matrix.
MatX softmax_rows(const MatX& scores);

/// n x r attention weights: per query, softmax over keys of (q.k)/sqrt(D).
MatX attention_weights(const MatX& queries, const MatX& keys);

/// Projection-free cross attention: output row i is the weight-averaged cue
/// vector for query i, clamped to [-1,1]. Zero keys yield zero guidance.
MatX attend(const MatX& queries, const MatX& keys, const std::vector<GuidanceCue>& cues,
            Index vocab_size);

/// As attend, but also returns the n x r weight matrix (0 columns when the
/// memory is empty) for diagnostics.
std::pair<MatX, MatX> attend_weighted(const MatX& queries, const MatX& keys,
                                      const std::vector<GuidanceCue>& cues, Index vocab_size);

/// Intuitive combination: raw map plus transient guidance, in score space.
PredictionMap intuitive_predict(const PredictionMap& raw_map, const VecX& tm_guidance);

}  // namespace tcei
