// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tcei/core.hpp"
#include "tcei/engine.hpp"

namespace tcei {

enum class DriftKind { kNone, kLinear, kStep, kOscillating };

DriftKind parse_drift(std::string_view name);
std::string_view to_string(DriftKind kind);

/// A synthetic streaming workload: per-video object appearances drift away
/// from the clean latents the predictor was enrolled on.
struct Scenario {
  int num_videos = 3;
  int frames_per_video = 200;
  int objects_per_video = 8;
  Index feature_dim = 32;
  DriftKind drift_kind = DriftKind::kLinear;
  double drift_rate = 0.02;
  double noise_sigma = 0.05;
  double occlusion_prob = 0.1;
  std::uint64_t seed = 1;
  // Benchmark operating point: biased enough that late-video drift flips
  // objects to the newborn slot — the identity-loss failure mode the
  // calibration engine is built to fix — and warm enough that mid-drift
  // predictions stay graded rather than saturated.
  double temperature = 0.24;  // predictor softmax temperature
  double newborn_bias = 2.8;  // fixed logit of the newborn slot
};

void validate_scenario(const Scenario& scenario);

/// One vocabulary slot per trajectory plus the newborn slot.
IdVocab scenario_vocab(const Scenario& scenario);

/// FNV-1a over a canonical text rendering of every field; used as run
/// provenance so mismatched summaries cannot be compared.
std::uint64_t scenario_hash(const Scenario& scenario);

/// Stream-splits a seed: uncorrelated generator seeds per video index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

struct SimObservation {
  FeatureVec feature;
  std::int32_t gt_slot = 0;  // ground-truth trajectory index
};

struct VideoStream {
  std::vector<FeatureVec> latents;  // clean appearance per trajectory
  std::vector<std::vector<SimObservation>> frames;
};

/// Deterministic per (scenario.seed, video_index). Frame-t feature of
/// trajectory i is normalize(latent_i + drift(t) * direction + noise) with
/// one shared drift direction per video (the shift is a stream-level domain
/// change). Latents depend on the seed only, so the same identities recur
/// across the videos of a scenario; with zero drift and zero noise the
/// latent is returned bit-exactly.
VideoStream generate_video(const Scenario& scenario, std::int32_t video_index);

/// Stand-in for a trained base model: fixed prototype per ID, softmax over
/// the newborn slot and all enrolled slots, zero elsewhere. Prototypes never
/// change after enrollment.
class FrozenPredictor {
 public:
  explicit FrozenPredictor(IdVocab vocab, double temperature = 0.1, double newborn_bias = 0.0);

  /// Registers a prototype under a non-newborn ID. Each ID enrolls once.
  void enroll(Index id, FeatureVec prototype);

  PredictionMap predict(const FeatureVec& feature) const;

  /// Raw-byte hex dump of configuration and prototypes; byte-stable, used to
  /// prove the predictor is untouched by the engine.
  std::string serialize() const;

  std::size_t enrolled() const { return prototypes_.size(); }

 private:
  IdVocab vocab_;
  double temperature_;
  double newborn_bias_;
  std::map<Index, FeatureVec> prototypes_;
};

/// Predictor for one video, enrolled on the clean latents (trajectory i
/// becomes vocabulary ID i + 1).
FrozenPredictor enrolled_predictor(const Scenario& scenario, const VideoStream& stream);

struct RunRecord {
  std::int32_t video = 0;
  std::int64_t frame = 0;  // within the video
  std::int32_t object_index = 0;
  std::int32_t gt_slot = 0;
  Index assigned_id = 0;
  double entropy = 0.0;     // of the raw map
  double activation = 0.0;  // calibration correction magnitude
};

struct ScenarioRun {
  std::vector<RunRecord> records;
  std::uint64_t scenario_hash = 0;
};

/// Runs every video of the scenario through one engine instance. The
/// engine's vocabulary and feature dimension are derived from the scenario;
/// the remaining config fields are taken as given.
ScenarioRun run_scenario(const Scenario& scenario, EngineConfig config,
                         const RunStrategy& strategy);

}  // namespace tcei
