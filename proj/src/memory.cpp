// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#include "tcei/memory.hpp"

#include <algorithm>
#include <cmath>

namespace tcei {

double entry_score(const ObjectRecord& record, const CacheConfig& config) {
  if (config.kind.role == CacheRole::kConfident) return record.entropy;
  return std::abs(record.entropy - config.target_entropy);
}

namespace {

// Newer records win score ties; same-frame ties fall back to the lower
// in-frame object index.
bool newer(const ObjectRecord& a, const ObjectRecord& b) {
  if (a.video_stamp != b.video_stamp) return a.video_stamp > b.video_stamp;
  if (a.frame_stamp != b.frame_stamp) return a.frame_stamp > b.frame_stamp;
  return a.object_index < b.object_index;
}

}  // namespace

RankedCache::RankedCache(CacheConfig config) : config_(config) {
  validate_cache_config(config_);
}

void RankedCache::update(std::span<const ObjectRecord> candidates) {
  for (const ObjectRecord& c : candidates) {
    if (!(c.entropy >= 0.0 && c.entropy <= 1.0)) {
      throw ValidationError("record entropy outside [0,1]");
    }
  }

  std::vector<ObjectRecord> pool;
  pool.reserve(entries_.size() + candidates.size());
  pool.insert(pool.end(), entries_.begin(), entries_.end());
  pool.insert(pool.end(), candidates.begin(), candidates.end());

  const auto cfg = config_;
  std::stable_sort(pool.begin(), pool.end(),
                   [&cfg](const ObjectRecord& a, const ObjectRecord& b) {
                     const double sa = entry_score(a, cfg);
                     const double sb = entry_score(b, cfg);
                     if (sa != sb) return sa < sb;
                     return newer(a, b);
                   });

  const std::size_t keep = std::min<std::size_t>(pool.size(), config_.capacity);
  pool.resize(keep);
  entries_ = std::move(pool);
}

CacheExport RankedCache::export_kv() const {
  CacheExport out;
  const Index rows = static_cast<Index>(entries_.size());
  const bool experience = config_.kind.scope == CacheScope::kExperience;
  const Index dim =
      rows == 0 ? 0
                : (experience ? entries_.front().embed.dim() : entries_.front().feature.dim());
  out.keys.resize(rows, dim);
  out.raw_maps.reserve(entries_.size());
  out.roles.reserve(entries_.size());
  for (Index i = 0; i < rows; ++i) {
    const ObjectRecord& rec = entries_[static_cast<std::size_t>(i)];
    out.keys.row(i) = experience ? rec.embed.values.transpose() : rec.feature.values.transpose();
    out.raw_maps.push_back(rec.raw_map);
    out.roles.push_back(config_.kind.role);
  }
  return out;
}

void RankedCache::reset() { entries_.clear(); }

CacheExport merge_exports(const CacheExport& confident, const CacheExport& uncertain) {
  if (confident.rows() == 0) return uncertain;
  if (uncertain.rows() == 0) return confident;
  if (confident.keys.cols() != uncertain.keys.cols()) {
    throw ValidationError("cannot merge exports with mismatched key dimensions");
  }
  CacheExport out;
  out.keys.resize(confident.rows() + uncertain.rows(), confident.keys.cols());
  out.keys.topRows(confident.rows()) = confident.keys;
  out.keys.bottomRows(uncertain.rows()) = uncertain.keys;
  out.raw_maps = confident.raw_maps;
  out.raw_maps.insert(out.raw_maps.end(), uncertain.raw_maps.begin(), uncertain.raw_maps.end());
  out.roles = confident.roles;
  out.roles.insert(out.roles.end(), uncertain.roles.begin(), uncertain.roles.end());
  return out;
}

}  // namespace tcei
