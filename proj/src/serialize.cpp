// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#include "tcei/serialize.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "tcei/memory.hpp"

namespace tcei {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<double> to_vector(const VecX& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

// Round-trip-safe decimal rendering for CSV cells.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json scenario_json(const Scenario& s) {
  ordered_json out;
  out["num_videos"] = s.num_videos;
  out["frames_per_video"] = s.frames_per_video;
  out["objects_per_video"] = s.objects_per_video;
  out["feature_dim"] = static_cast<std::int64_t>(s.feature_dim);
  out["drift_kind"] = std::string(to_string(s.drift_kind));
  out["drift_rate"] = s.drift_rate;
  out["noise_sigma"] = s.noise_sigma;
  out["occlusion_prob"] = s.occlusion_prob;
  out["seed"] = s.seed;
  out["temperature"] = s.temperature;
  out["newborn_bias"] = s.newborn_bias;
  return out;
}

ordered_json video_summary_json(const VideoSummary& v) {
  ordered_json out;
  out["video"] = v.video;
  out["id_accuracy"] = v.id_accuracy;
  out["id_switches"] = v.id_switches;
  out["mean_entropy"] = v.mean_entropy;
  out["activation_rate"] = v.activation_rate;
  out["num_records"] = v.num_records;
  return out;
}

ordered_json cache_json(const RankedCache& cache) {
  ordered_json out;
  out["capacity"] = cache.config().capacity;
  out["entries"] = ordered_json::array();
  for (const ObjectRecord& record : cache.entries()) {
    ordered_json entry;
    entry["entropy"] = record.entropy;
    entry["score"] = entry_score(record, cache.config());
    entry["video"] = record.video_stamp;
    entry["frame"] = record.frame_stamp;
    entry["object"] = record.object_index;
    out["entries"].push_back(std::move(entry));
  }
  return out;
}

}  // namespace

std::string summary_json(const RunSummary& summary, const Scenario& scenario,
                         std::string_view strategy) {
  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["strategy"] = std::string(strategy);
  out["scenario"] = scenario_json(scenario);
  out["scenario_hash"] = summary.scenario_hash;
  ordered_json metrics;
  metrics["id_accuracy"] = summary.id_accuracy;
  metrics["id_switches"] = summary.id_switches;
  metrics["mean_entropy"] = summary.mean_entropy;
  metrics["activation_rate"] = summary.activation_rate;
  metrics["num_records"] = summary.num_records;
  metrics["per_video"] = ordered_json::array();
  for (const VideoSummary& v : summary.per_video) {
    metrics["per_video"].push_back(video_summary_json(v));
  }
  out["metrics"] = std::move(metrics);
  return out.dump(2) + "\n";
}

std::string frames_csv(const ScenarioRun& run) {
  std::ostringstream out;
  out << "schema_version,video,frame,object,gt_slot,assigned_id,entropy,activation\n";
  for (const RunRecord& r : run.records) {
    out << kSchemaVersion << ',' << r.video << ',' << r.frame << ',' << r.object_index << ','
        << r.gt_slot << ',' << r.assigned_id << ',' << fmt(r.entropy) << ',' << fmt(r.activation)
        << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "schema_version,k_c,k_u,tau,e_u,id_accuracy,id_switches,mean_entropy,activation_rate\n";
  for (const SweepRow& r : rows) {
    out << kSchemaVersion << ',' << r.k_c << ',' << r.k_u << ',' << fmt(r.tau) << ','
        << fmt(r.e_u) << ',' << fmt(r.id_accuracy) << ',' << fmt(r.id_switches) << ','
        << fmt(r.mean_entropy) << ',' << fmt(r.activation_rate) << '\n';
  }
  return out.str();
}

std::string ablation_csv(const std::vector<AblationTable>& tables) {
  std::ostringstream out;
  out << "schema_version,table,row,id_accuracy,id_switches,mean_entropy,activation_rate\n";
  for (const AblationTable& table : tables) {
    for (const AblationRow& r : table.rows) {
      out << kSchemaVersion << ',' << table.name << ',' << r.label << ',' << fmt(r.id_accuracy)
          << ',' << fmt(r.id_switches) << ',' << fmt(r.mean_entropy) << ','
          << fmt(r.activation_rate) << '\n';
    }
  }
  return out.str();
}

std::string ablation_text(const std::vector<AblationTable>& tables) {
  std::ostringstream out;
  char line[160];
  for (const AblationTable& table : tables) {
    out << table.name << '\n';
    std::snprintf(line, sizeof(line), "  %-22s %12s %12s %13s %16s\n", "row", "id_accuracy",
                  "id_switches", "mean_entropy", "activation_rate");
    out << line;
    for (const AblationRow& r : table.rows) {
      std::snprintf(line, sizeof(line), "  %-22s %12.6f %12.3f %13.6f %16.6f\n", r.label.c_str(),
                    r.id_accuracy, r.id_switches, r.mean_entropy, r.activation_rate);
      out << line;
    }
    out << '\n';
  }
  return out.str();
}

std::string trace_jsonl(const std::vector<FrameResult>& frames) {
  std::ostringstream out;
  for (const FrameResult& frame : frames) {
    for (std::size_t i = 0; i < frame.objects.size(); ++i) {
      const ObjectResult& obj = frame.objects[i];
      ordered_json line;
      line["schema_version"] = kSchemaVersion;
      line["video"] = frame.video_index;
      line["frame"] = frame.frame_index;
      line["object"] = i;
      line["assigned_id"] = obj.assigned_id;
      line["entropy"] = obj.entropy;
      line["cache_sizes"] = frame.cache_sizes;
      line["sim"] = to_vector(obj.diag.sim);
      line["activation"] = obj.diag.activation;
      line["p"] = to_vector(obj.raw);
      line["p_tm"] = to_vector(obj.p_tm);
      line["p_in"] = to_vector(obj.p_in);
      line["p_ec"] = to_vector(obj.p_ec);
      line["p_ca"] = to_vector(obj.diag.p_ca);
      line["p_ex"] = to_vector(obj.p_final.scores);
      line["attn_tm"] = to_vector(obj.attn_tm);
      line["attn_ec"] = to_vector(obj.attn_ec);
      out << line.dump() << '\n';
    }
  }
  return out.str();
}

std::string cache_snapshot_json(const Engine& engine) {
  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["frame_counter"] = engine.frame_counter();
  out["video_counter"] = engine.video_counter();
  ordered_json caches;
  caches["transient_confident"] = cache_json(engine.transient_confident());
  caches["transient_uncertain"] = cache_json(engine.transient_uncertain());
  caches["experience_confident"] = cache_json(engine.experience_confident());
  caches["experience_uncertain"] = cache_json(engine.experience_uncertain());
  out["caches"] = std::move(caches);
  return out.dump(2) + "\n";
}

std::string stream_jsonl(const VideoStream& stream) {
  std::ostringstream out;
  for (std::size_t t = 0; t < stream.frames.size(); ++t) {
    ordered_json line;
    line["schema_version"] = kSchemaVersion;
    line["frame"] = t;
    line["objects"] = ordered_json::array();
    for (const SimObservation& obs : stream.frames[t]) {
      ordered_json entry;
      entry["gt_slot"] = obs.gt_slot;
      entry["feature"] = to_vector(obs.feature.values);
      line["objects"].push_back(std::move(entry));
    }
    out << line.dump() << '\n';
  }
  return out.str();
}

std::vector<std::vector<SimObservation>> parse_stream_jsonl(std::string_view text) {
  std::vector<std::vector<SimObservation>> frames;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ordered_json parsed;
    try {
      parsed = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("bad stream line: ") + e.what());
    }
    std::vector<SimObservation> frame;
    try {
      for (const auto& entry : parsed.at("objects")) {
        SimObservation obs;
        obs.gt_slot = entry.at("gt_slot").get<std::int32_t>();
        const auto values = entry.at("feature").get<std::vector<double>>();
        obs.feature.values = Eigen::Map<const VecX>(values.data(),
                                                    static_cast<Index>(values.size()));
        frame.push_back(std::move(obs));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("bad stream line: ") + e.what());
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

}  // namespace tcei
