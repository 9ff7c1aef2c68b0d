// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tcei/engine.hpp"
#include "tcei/metrics.hpp"
#include "tcei/simbench.hpp"

// Text renderings of run artifacts. Every format carries schema_version, and
// everything here is a pure function of its inputs — no timestamps, no
// hostnames, no timing — so reruns are byte-identical.
namespace tcei {

inline constexpr int kSchemaVersion = 1;

/// Single-run summary as pretty-printed JSON with stable key order.
std::string summary_json(const RunSummary& summary, const Scenario& scenario,
                         std::string_view strategy);

/// One CSV row per (video, frame, object) record.
std::string frames_csv(const ScenarioRun& run);

struct SweepRow {
  int k_c = 0;
  int k_u = 0;
  double tau = 0.0;
  double e_u = 0.0;
  double id_accuracy = 0.0;
  double id_switches = 0.0;  // mean per-seed total
  double mean_entropy = 0.0;
  double activation_rate = 0.0;
};

/// Rows exactly as given; callers emit them in lexicographic grid order.
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct AblationRow {
  std::string label;
  double id_accuracy = 0.0;
  double id_switches = 0.0;  // mean per-seed total
  double mean_entropy = 0.0;
  double activation_rate = 0.0;
};

struct AblationTable {
  std::string name;
  std::vector<AblationRow> rows;
};

std::string ablation_csv(const std::vector<AblationTable>& tables);

/// Human-readable aligned rendering of the same tables.
std::string ablation_text(const std::vector<AblationTable>& tables);

/// One JSON object per line per object per frame: entropy, cache occupancy,
/// attention weights and every intermediate score map of the calibration.
std::string trace_jsonl(const std::vector<FrameResult>& frames);

/// Current cache contents (entropy, score and stamps per entry).
std::string cache_snapshot_json(const Engine& engine);

/// One line per frame: features as arrays plus ground-truth slots, enough to
/// replay the stream through another engine or implementation.
std::string stream_jsonl(const VideoStream& stream);

/// Inverse of stream_jsonl (frames only). Malformed input raises
/// ValidationError.
std::vector<std::vector<SimObservation>> parse_stream_jsonl(std::string_view text);

}  // namespace tcei
