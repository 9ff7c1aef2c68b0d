// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "tcei/core.hpp"

namespace tcei {

enum class CacheRole { kConfident, kUncertain };
enum class CacheScope { kTransient, kExperience };

/// Which of the four cache instances this is. Role decides the ranking
/// score, scope decides which vector is exported as the attention key.
struct CacheKind {
  CacheRole role = CacheRole::kConfident;
  CacheScope scope = CacheScope::kTransient;
};

struct CacheConfig {
  int capacity = 1;
  double target_entropy = 0.0;  // ignored for the confident role
  CacheKind kind;
};

inline void validate_cache_config(const CacheConfig& c) {
  if (c.capacity < 1) throw ValidationError("cache capacity must be >= 1");
  if (c.target_entropy < 0.0 || c.target_entropy > 1.0) {
    throw ValidationError("target entropy must lie in [0,1]");
  }
}

/// Ranking score: confident entries rank by raw entropy, uncertain entries
/// by distance from the target entropy level. Lower is better.
double entry_score(const ObjectRecord& record, const CacheConfig& config);

/// Key/value view of a cache: row i of `keys` is entry i's feature
/// (transient scope) or embedding (experience scope), paired with its raw
/// prediction map and role.
struct CacheExport {
  MatX keys;  // rows x D
  std::vector<PredictionMap> raw_maps;
  std::vector<CacheRole> roles;

  Index rows() const { return keys.rows(); }
};

/// Stacks two exports confident-first. Either side may be empty.
CacheExport merge_exports(const CacheExport& confident, const CacheExport& uncertain);

/// Bounded key-value store holding the lowest-scoring records seen so far.
/// After every update the entries are exactly the score-minimizing subset of
/// (previous entries plus candidates) of size min(capacity, pool), stored
/// sorted ascending by score with newer records first on ties.
class RankedCache {
 public:
  explicit RankedCache(CacheConfig config);

  /// Offers candidates to the cache and keeps the best-scoring subset.
  /// Candidates with entropy outside [0,1] are rejected before any mutation.
  void update(std::span<const ObjectRecord> candidates);

  CacheExport export_kv() const;

  /// Clears entries; configuration is retained.
  void reset();

  const std::vector<ObjectRecord>& entries() const { return entries_; }
  const CacheConfig& config() const { return config_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  CacheConfig config_;
  std::vector<ObjectRecord> entries_;  // sorted by (score asc, newer first)
};

}  // namespace tcei
