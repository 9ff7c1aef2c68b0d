// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "tcei/calibrate.hpp"
#include "tcei/core.hpp"
#include "tcei/guidance.hpp"
#include "tcei/memory.hpp"

namespace tcei {

struct EngineConfig {
  int k_c = 3;   // transient confident capacity
  int k_u = 2;   // transient uncertain capacity
  int m_c = 64;  // experience confident capacity
  int m_u = 64;  // experience uncertain capacity
  double e_u = 0.2;
  double tau = 0.03;
  double ema_momentum = 0.9;
  IdVocab vocab;
  Index feature_dim = 0;
};

void validate_engine_config(const EngineConfig& config);

/// What the engine applies on top of the base predictions. The component
/// switches zero out one system's guidance or hide one cache role from the
/// attention export; caches keep updating either way so that switching a
/// component back on mid-run is well defined.
struct RunStrategy {
  CalibrationStrategy strategy = CalibrationStrategy::kTcei;
  bool use_intuitive = true;
  bool use_experiential = true;
  bool use_confident = true;
  bool use_uncertain = true;
};

struct Observation {
  FeatureVec feature;
  PredictionMap raw_map;  // normalized, length vocab
};

struct ObjectResult {
  Index assigned_id = 0;
  double entropy = 0.0;   // of the raw map
  PredictionMap p_final;  // strategy output consumed by ID assignment
  CalibrationDiag diag;
  VecX raw;      // P
  VecX p_tm;     // transient guidance row
  VecX p_in;     // intuitive score map
  VecX p_ec;     // experiential guidance row
  VecX attn_tm;  // attention weights over the transient export (may be empty)
  VecX attn_ec;  // attention weights over the experience export (may be empty)
};

struct FrameResult {
  std::vector<ObjectResult> objects;
  std::int64_t frame_index = 0;
  std::int32_t video_index = 0;
  // transient confident/uncertain, experience confident/uncertain
  std::array<std::size_t, 4> cache_sizes{};
  // Wall-clock measurement only; never serialized into result files.
  double elapsed_us = 0.0;
};

/// Forward-only calibration engine. Owns the four caches and the per-video
/// embedding tracker; never touches the base predictor.
class Engine {
 public:
  explicit Engine(EngineConfig config, RunStrategy strategy = {});

  /// Starts the next video: transient caches and the embedding tracker are
  /// cleared, experience caches persist.
  void begin_video();

  /// Runs one frame through both systems and updates all caches.
  FrameResult process_frame(std::span<const Observation> observations);

  /// Greedy unique ID assignment over final score maps: repeatedly take the
  /// globally highest unclaimed (object, id) pair, id != newborn; an object
  /// whose best remaining score falls below its own newborn score takes the
  /// newborn slot instead. Ties break toward lower object then id index.
  static std::vector<Index> assign_ids(const std::vector<PredictionMap>& score_maps,
                                       Index newborn_index);

  /// EMA tracker step for one trajectory slot: first sighting adopts the
  /// feature, later sightings blend and renormalize.
  ExperienceEmbed update_embed(Index slot, const FeatureVec& feature);

  const EngineConfig& config() const { return config_; }
  const RunStrategy& strategy() const { return strategy_; }
  const RankedCache& transient_confident() const { return transient_confident_; }
  const RankedCache& transient_uncertain() const { return transient_uncertain_; }
  const RankedCache& experience_confident() const { return experience_confident_; }
  const RankedCache& experience_uncertain() const { return experience_uncertain_; }
  std::int64_t frame_counter() const { return frame_counter_; }
  std::int32_t video_counter() const { return video_counter_; }
  bool video_open() const { return video_open_; }

 private:
  ExperienceEmbed peek_embed(Index slot, const FeatureVec& feature) const;
  CacheExport masked_export(const RankedCache& confident, const RankedCache& uncertain) const;

  EngineConfig config_;
  RunStrategy strategy_;
  RankedCache transient_confident_;
  RankedCache transient_uncertain_;
  RankedCache experience_confident_;
  RankedCache experience_uncertain_;
  std::unordered_map<Index, ExperienceEmbed> embed_tracker_;
  std::int64_t frame_counter_ = 0;
  std::int32_t video_counter_ = -1;  // becomes 0 on the first begin_video
  bool video_open_ = false;
};

}  // namespace tcei
