// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations. These deliberately avoid the library
// code paths they are used to check: plain loops over std::vector<double>,
// exhaustive enumeration instead of selection.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "tcei/core.hpp"
#include "tcei/memory.hpp"

namespace tcei::testing {

// ---------------------------------------------------------------------------
// Exhaustive subset-argmin oracle for the cache update rule: enumerate every
// subset of the pool of size min(capacity, pool) and pick the one minimizing
// the score sum. Equal-sum ties resolve toward the subset whose members rank
// earliest under the documented order (score, then recency, then object
// index), expressed here via per-element ranks so the comparison stays
// independent of the cache's own selection code.
// ---------------------------------------------------------------------------

inline bool oracle_newer(const ObjectRecord& a, const ObjectRecord& b) {
  if (a.video_stamp != b.video_stamp) return a.video_stamp > b.video_stamp;
  if (a.frame_stamp != b.frame_stamp) return a.frame_stamp > b.frame_stamp;
  return a.object_index < b.object_index;
}

inline std::vector<ObjectRecord> subset_argmin_oracle(const std::vector<ObjectRecord>& pool,
                                                      const CacheConfig& config) {
  const std::size_t n = pool.size();
  const std::size_t k = std::min<std::size_t>(n, static_cast<std::size_t>(config.capacity));
  if (k == 0) return {};

  std::vector<double> score(n);
  for (std::size_t i = 0; i < n; ++i) score[i] = entry_score(pool[i], config);

  // Global rank of each element under the documented total order.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  // stable: equal elements keep pool order, matching stable selection
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] < score[b];
    if (oracle_newer(pool[a], pool[b])) return true;
    if (oracle_newer(pool[b], pool[a])) return false;
    return false;
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;

  std::vector<std::size_t> best;
  std::vector<std::size_t> current;
  double best_sum = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_ranks, cur_ranks;

  // Enumerate all C(n, k) index subsets.
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    double sum = 0.0;
    for (std::size_t i : idx) sum += score[i];
    cur_ranks.clear();
    for (std::size_t i : idx) cur_ranks.push_back(rank[i]);
    std::sort(cur_ranks.begin(), cur_ranks.end());
    if (sum < best_sum || (sum == best_sum && cur_ranks < best_ranks)) {
      best_sum = sum;
      best = idx;
      best_ranks = cur_ranks;
    }
    // next combination
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        i = k + 1;
        break;
      }
    }
    if (i != k + 1) break;
  }

  std::vector<ObjectRecord> out;
  out.reserve(best.size());
  for (std::size_t i : best) out.push_back(pool[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Straight-line scalar implementations of the per-frame math, written with
// plain loops. Used as the independent route for attention, guidance and
// calibration checks.
// ---------------------------------------------------------------------------

using Row = std::vector<double>;

inline Row oracle_softmax(const Row& logits) {
  double m = logits[0];
  for (double v : logits) m = std::max(m, v);
  Row e(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    e[i] = std::exp(logits[i] - m);
    sum += e[i];
  }
  for (double& v : e) v /= sum;
  return e;
}

inline Row oracle_attend_one(const Row& query, const std::vector<Row>& keys,
                             const std::vector<Row>& cues, std::size_t vocab) {
  Row out(vocab, 0.0);
  if (keys.empty()) return out;
  const double scale = 1.0 / std::sqrt(static_cast<double>(query.size()));
  Row logits(keys.size(), 0.0);
  for (std::size_t j = 0; j < keys.size(); ++j) {
    double dot = 0.0;
    for (std::size_t d = 0; d < query.size(); ++d) dot += query[d] * keys[j][d];
    logits[j] = dot * scale;
  }
  Row w = oracle_softmax(logits);
  for (std::size_t j = 0; j < keys.size(); ++j) {
    for (std::size_t v = 0; v < vocab; ++v) out[v] += w[j] * cues[j][v];
  }
  for (double& v : out) v = std::min(1.0, std::max(-1.0, v));
  return out;
}

// One-hot at the argmax (lowest index on ties), optionally skipping one
// excluded index; or multi-hot -1 above tau.
inline Row oracle_cue(const Row& map, bool confident, double tau, std::int64_t excluded = -1) {
  Row cue(map.size(), 0.0);
  if (confident) {
    std::int64_t best = -1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (static_cast<std::int64_t>(i) == excluded) continue;
      if (map[i] > best_val) {
        best_val = map[i];
        best = static_cast<std::int64_t>(i);
      }
    }
    cue[static_cast<std::size_t>(best)] = 1.0;
  } else {
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] > tau) cue[i] = -1.0;
    }
  }
  return cue;
}

struct OracleCalibration {
  Row sim;
  Row p_ca;
  Row p_ex;
};

inline OracleCalibration oracle_calibrate(const Row& raw, const Row& p_in, const Row& p_tm,
                                          const Row& p_ec, double eps = 1e-8) {
  const std::size_t n = raw.size();
  OracleCalibration out;
  out.sim.assign(n, 0.0);
  out.p_ca.assign(n, 0.0);
  out.p_ex.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::max(std::abs(p_ec[i]), std::abs(p_tm[i]));
    if (m < eps) {
      out.sim[i] = 0.0;
      out.p_ca[i] = 0.0;  // both adjustments vanish: no correction
    } else {
      out.sim[i] = std::abs(p_ec[i] - p_tm[i]) / m;
      out.p_ca[i] = p_ec[i] - (1.0 - out.sim[i]) * p_tm[i];
    }
    const double u = raw[i] * (1.0 - raw[i]);
    out.p_ex[i] = p_in[i] + u * out.p_ca[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random fixtures.
// ---------------------------------------------------------------------------

inline VecX random_simplex(std::mt19937_64& rng, Index n) {
  std::exponential_distribution<double> expo(1.0);
  VecX v(n);
  for (Index i = 0; i < n; ++i) v(i) = expo(rng);
  return v / v.sum();
}

inline FeatureVec random_unit(std::mt19937_64& rng, Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  VecX v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = gauss(rng);
  return FeatureVec::normalized(std::move(v));
}

inline ObjectRecord random_record(std::mt19937_64& rng, Index vocab, Index dim,
                                  std::int64_t frame, std::int32_t video, std::int32_t obj) {
  FeatureVec f = random_unit(rng, dim);
  ExperienceEmbed e{f.values};
  PredictionMap p{random_simplex(rng, vocab), true};
  return make_record(std::move(f), std::move(e), std::move(p), frame, video, obj);
}

}  // namespace tcei::testing
