// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tcei/core.hpp"
#include "tcei/simbench.hpp"

namespace tcei {

// Calibration counts as active above this correction magnitude.
inline constexpr double kActivationFloor = 1e-6;

struct VideoSummary {
  std::int32_t video = 0;
  double id_accuracy = 0.0;
  std::int64_t id_switches = 0;
  double mean_entropy = 0.0;
  double activation_rate = 0.0;
  std::int64_t num_records = 0;
};

/// Association quality over a run. Accuracy anchors each ground-truth
/// trajectory to the ID it was first assigned in its video; switches count
/// frames where a trajectory's ID differs from its previous observed one.
struct RunSummary {
  double id_accuracy = 0.0;
  std::int64_t id_switches = 0;
  double mean_entropy = 0.0;
  double activation_rate = 0.0;
  std::int64_t num_records = 0;
  std::vector<VideoSummary> per_video;
  std::uint64_t scenario_hash = 0;
};

RunSummary summarize(const ScenarioRun& run);

struct MetricDelta {
  std::string name;
  double a = 0.0;
  double b = 0.0;
  double delta = 0.0;  // a - b
};

struct DeltaReport {
  std::vector<MetricDelta> metrics;

  /// Aligned-text rendering, one metric per line.
  std::string text() const;
};

/// Per-metric differences between two summaries of the same scenario.
DeltaReport compare(const RunSummary& a, const RunSummary& b);

/// Summary metrics averaged over a seed set; switches become a mean count.
struct BenchResult {
  double id_accuracy = 0.0;
  double id_switches = 0.0;
  double mean_entropy = 0.0;
  double activation_rate = 0.0;
};

/// Reruns the scenario once per seed (scenario.seed replaced, fresh engine
/// each time) and averages the run summaries.
BenchResult bench_over_seeds(Scenario scenario, const EngineConfig& engine,
                             const RunStrategy& strategy, std::span<const std::uint64_t> seeds);

}  // namespace tcei
