// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#include "tcei/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace tcei {

RunSummary summarize(const ScenarioRun& run) {
  if (run.records.empty()) throw ValidationError("cannot summarize an empty record set");

  // Group per (video, trajectory), ordered by frame within each group so the
  // input record order cannot affect the result.
  std::map<std::pair<std::int32_t, std::int32_t>, std::vector<const RunRecord*>> tracks;
  std::map<std::int32_t, VideoSummary> videos;
  for (const RunRecord& r : run.records) {
    tracks[{r.video, r.gt_slot}].push_back(&r);
    VideoSummary& v = videos[r.video];
    v.video = r.video;
    v.mean_entropy += r.entropy;
    v.activation_rate += r.activation > kActivationFloor ? 1.0 : 0.0;
    ++v.num_records;
  }
  for (auto& [video, track] : tracks) {
    std::stable_sort(track.begin(), track.end(),
                     [](const RunRecord* a, const RunRecord* b) { return a->frame < b->frame; });
  }

  std::map<std::int32_t, std::int64_t> hits;
  for (const auto& [key, track] : tracks) {
    const Index anchor = track.front()->assigned_id;
    Index prev = anchor;
    for (std::size_t i = 0; i < track.size(); ++i) {
      if (track[i]->assigned_id == anchor) ++hits[key.first];
      if (i > 0 && track[i]->assigned_id != prev) ++videos[key.first].id_switches;
      prev = track[i]->assigned_id;
    }
  }

  RunSummary out;
  out.scenario_hash = run.scenario_hash;
  out.num_records = static_cast<std::int64_t>(run.records.size());
  for (auto& [video, v] : videos) {
    const double n = static_cast<double>(v.num_records);
    v.id_accuracy = static_cast<double>(hits[video]) / n;
    v.mean_entropy /= n;
    v.activation_rate /= n;
    out.id_switches += v.id_switches;
    out.per_video.push_back(v);
  }
  double hit_total = 0.0, entropy_total = 0.0, active_total = 0.0;
  for (const VideoSummary& v : out.per_video) {
    hit_total += v.id_accuracy * static_cast<double>(v.num_records);
    entropy_total += v.mean_entropy * static_cast<double>(v.num_records);
    active_total += v.activation_rate * static_cast<double>(v.num_records);
  }
  const double n = static_cast<double>(out.num_records);
  out.id_accuracy = hit_total / n;
  out.mean_entropy = entropy_total / n;
  out.activation_rate = active_total / n;
  return out;
}

DeltaReport compare(const RunSummary& a, const RunSummary& b) {
  if (a.scenario_hash != b.scenario_hash) {
    throw ValidationError("cannot compare summaries from different scenarios");
  }
  DeltaReport report;
  const auto add = [&report](const char* name, double va, double vb) {
    report.metrics.push_back(MetricDelta{name, va, vb, va - vb});
  };
  add("id_accuracy", a.id_accuracy, b.id_accuracy);
  add("id_switches", static_cast<double>(a.id_switches), static_cast<double>(b.id_switches));
  add("mean_entropy", a.mean_entropy, b.mean_entropy);
  add("activation_rate", a.activation_rate, b.activation_rate);
  return report;
}

std::string DeltaReport::text() const {
  std::string out = "metric            a           b           delta\n";
  char line[128];
  for (const MetricDelta& m : metrics) {
    std::snprintf(line, sizeof line, "%-16s  %10.6f  %10.6f  %+10.6f\n", m.name.c_str(), m.a,
                  m.b, m.delta);
    out += line;
  }
  return out;
}

BenchResult bench_over_seeds(Scenario scenario, const EngineConfig& engine,
                             const RunStrategy& strategy, std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw ValidationError("seed set must not be empty");
  BenchResult mean;
  for (std::uint64_t seed : seeds) {
    scenario.seed = seed;
    const RunSummary s = summarize(run_scenario(scenario, engine, strategy));
    mean.id_accuracy += s.id_accuracy;
    mean.id_switches += static_cast<double>(s.id_switches);
    mean.mean_entropy += s.mean_entropy;
    mean.activation_rate += s.activation_rate;
  }
  const double n = static_cast<double>(seeds.size());
  mean.id_accuracy /= n;
  mean.id_switches /= n;
  mean.mean_entropy /= n;
  mean.activation_rate /= n;
  return mean;
}

}  // namespace tcei
