// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#include "tcei/serialize.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include "tcei/config.hpp"
#include "tcei/metrics.hpp"

namespace tcei {
namespace {

Scenario tiny_scenario() {
  Scenario s;
  s.num_videos = 1;
  s.frames_per_video = 5;
  s.objects_per_video = 3;
  s.feature_dim = 8;
  s.occlusion_prob = 0.0;
  s.seed = 11;
  return s;
}

EngineConfig tiny_engine() {
  EngineConfig config;
  config.m_c = 8;
  config.m_u = 8;
  return config;
}

TEST(SummaryJson, CarriesSchemaMetricsAndScenario) {
  const Scenario scenario = tiny_scenario();
  const ScenarioRun run = run_scenario(scenario, tiny_engine(), RunStrategy{});
  const RunSummary summary = summarize(run);
  const std::string text = summary_json(summary, scenario, "tcei");

  const auto parsed = nlohmann::json::parse(text);
  EXPECT_EQ(parsed.at("schema_version").get<int>(), kSchemaVersion);
  EXPECT_EQ(parsed.at("strategy").get<std::string>(), "tcei");
  EXPECT_EQ(parsed.at("scenario").at("feature_dim").get<int>(), 8);
  EXPECT_EQ(parsed.at("scenario_hash").get<std::uint64_t>(), summary.scenario_hash);
  EXPECT_DOUBLE_EQ(parsed.at("metrics").at("id_accuracy").get<double>(), summary.id_accuracy);
  EXPECT_EQ(parsed.at("metrics").at("id_switches").get<std::int64_t>(), summary.id_switches);
  EXPECT_TRUE(parsed.at("metrics").contains("activation_rate"));
  EXPECT_EQ(parsed.at("metrics").at("per_video").size(), 1u);
}

TEST(SummaryJson, ByteStableAcrossCalls) {
  const Scenario scenario = tiny_scenario();
  const RunSummary a = summarize(run_scenario(scenario, tiny_engine(), RunStrategy{}));
  const RunSummary b = summarize(run_scenario(scenario, tiny_engine(), RunStrategy{}));
  EXPECT_EQ(summary_json(a, scenario, "tcei"), summary_json(b, scenario, "tcei"));
}

TEST(FramesCsv, OneRowPerRecord) {
  const Scenario scenario = tiny_scenario();
  const ScenarioRun run = run_scenario(scenario, tiny_engine(), RunStrategy{});
  const std::string csv = frames_csv(run);

  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  EXPECT_EQ(lines, run.records.size() + 1);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "schema_version,video,frame,object,gt_slot,assigned_id,entropy,activation");
}

TEST(SweepCsv, RowsInGivenOrder) {
  std::vector<SweepRow> rows;
  rows.push_back({1, 1, 0.03, 0.2, 0.9, 1.0, 0.3, 0.1});
  rows.push_back({1, 2, 0.03, 0.2, 0.95, 0.5, 0.3, 0.1});
  const std::string csv = sweep_csv(rows);
  const std::size_t first = csv.find('\n') + 1;
  EXPECT_EQ(csv.substr(first, 4), "1,1,");
  EXPECT_NE(csv.find("\n1,1,2,"), std::string::npos);
}

TEST(AblationOutput, TwelveRowsAcrossThreeTables) {
  std::vector<AblationTable> tables;
  for (const char* name : {"systems", "cache_roles", "strategies"}) {
    AblationTable table;
    table.name = name;
    for (const char* label : {"a", "b", "c", "d"}) {
      table.rows.push_back({label, 0.5, 1.0, 0.3, 0.2});
    }
    tables.push_back(std::move(table));
  }
  const std::string csv = ablation_csv(tables);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  EXPECT_EQ(lines, 13u);  // header + 3 * 4

  const std::string text = ablation_text(tables);
  EXPECT_NE(text.find("systems"), std::string::npos);
  EXPECT_NE(text.find("cache_roles"), std::string::npos);
  EXPECT_NE(text.find("strategies"), std::string::npos);
  EXPECT_NE(text.find("id_accuracy"), std::string::npos);
}

TEST(TraceJsonl, OneLinePerObjectWithAllStages) {
  EngineConfig config = tiny_engine();
  config.vocab = IdVocab{4};
  config.feature_dim = 3;
  Engine engine(config);
  engine.begin_video();

  std::vector<Observation> obs;
  VecX f = VecX::Zero(3);
  f(0) = 1.0;
  VecX p(4);
  p << 0.05, 0.9, 0.03, 0.02;
  obs.push_back({FeatureVec{f}, PredictionMap{p}});
  std::vector<FrameResult> frames;
  frames.push_back(engine.process_frame(obs));

  const std::string text = trace_jsonl(frames);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  EXPECT_EQ(lines, 1u);

  const auto parsed = nlohmann::json::parse(text.substr(0, text.find('\n')));
  for (const char* key : {"schema_version", "video", "frame", "object", "assigned_id", "entropy",
                          "cache_sizes", "sim", "activation", "p", "p_tm", "p_in", "p_ec", "p_ca",
                          "p_ex", "attn_tm", "attn_ec"}) {
    EXPECT_TRUE(parsed.contains(key)) << key;
  }
  EXPECT_EQ(parsed.at("p").size(), 4u);
  EXPECT_EQ(parsed.at("cache_sizes").size(), 4u);
  // Timing must never leak into result files.
  EXPECT_FALSE(parsed.contains("elapsed_us"));
  EXPECT_EQ(text.find("elapsed"), std::string::npos);
}

TEST(CacheSnapshot, ReflectsOccupancy) {
  const Scenario scenario = tiny_scenario();
  EngineConfig config = tiny_engine();
  config.vocab = scenario_vocab(scenario);
  config.feature_dim = scenario.feature_dim;
  Engine engine(config);

  const VideoStream stream = generate_video(scenario, 0);
  const FrozenPredictor predictor = enrolled_predictor(scenario, stream);
  engine.begin_video();
  for (const auto& frame : stream.frames) {
    std::vector<Observation> obs;
    for (const auto& sim_obs : frame) {
      obs.push_back({sim_obs.feature, predictor.predict(sim_obs.feature)});
    }
    engine.process_frame(obs);
  }

  const auto parsed = nlohmann::json::parse(cache_snapshot_json(engine));
  EXPECT_EQ(parsed.at("schema_version").get<int>(), kSchemaVersion);
  const auto& caches = parsed.at("caches");
  EXPECT_EQ(caches.at("transient_confident").at("entries").size(),
            engine.transient_confident().size());
  EXPECT_EQ(caches.at("experience_confident").at("entries").size(),
            engine.experience_confident().size());
  for (const auto& entry : caches.at("transient_confident").at("entries")) {
    EXPECT_TRUE(entry.contains("entropy"));
    EXPECT_TRUE(entry.contains("score"));
  }
}

TEST(StreamJsonl, RoundTripsFeaturesBitExactly) {
  const Scenario scenario = tiny_scenario();
  const VideoStream stream = generate_video(scenario, 0);
  const auto frames = parse_stream_jsonl(stream_jsonl(stream));

  ASSERT_EQ(frames.size(), stream.frames.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    ASSERT_EQ(frames[t].size(), stream.frames[t].size());
    for (std::size_t i = 0; i < frames[t].size(); ++i) {
      EXPECT_EQ(frames[t][i].gt_slot, stream.frames[t][i].gt_slot);
      EXPECT_EQ(frames[t][i].feature.values, stream.frames[t][i].feature.values);
    }
  }
}

TEST(StreamJsonl, ReplayReproducesIdenticalCalibratedScores) {
  const Scenario scenario = tiny_scenario();
  const VideoStream stream = generate_video(scenario, 0);
  const FrozenPredictor predictor = enrolled_predictor(scenario, stream);
  const auto replayed = parse_stream_jsonl(stream_jsonl(stream));

  EngineConfig config = tiny_engine();
  config.vocab = scenario_vocab(scenario);
  config.feature_dim = scenario.feature_dim;
  Engine original(config);
  Engine replay(config);
  original.begin_video();
  replay.begin_video();

  for (std::size_t t = 0; t < stream.frames.size(); ++t) {
    std::vector<Observation> obs_a;
    std::vector<Observation> obs_b;
    for (const auto& o : stream.frames[t]) {
      obs_a.push_back({o.feature, predictor.predict(o.feature)});
    }
    for (const auto& o : replayed[t]) {
      obs_b.push_back({o.feature, predictor.predict(o.feature)});
    }
    const FrameResult a = original.process_frame(obs_a);
    const FrameResult b = replay.process_frame(obs_b);
    ASSERT_EQ(a.objects.size(), b.objects.size());
    for (std::size_t i = 0; i < a.objects.size(); ++i) {
      EXPECT_EQ(a.objects[i].p_final.scores, b.objects[i].p_final.scores);
      EXPECT_EQ(a.objects[i].assigned_id, b.objects[i].assigned_id);
    }
  }
}

TEST(StreamJsonl, MalformedInputIsRejected) {
  EXPECT_THROW(parse_stream_jsonl("not json\n"), ValidationError);
  EXPECT_THROW(parse_stream_jsonl("{\"frame\": 0}\n"), ValidationError);
}

}  // namespace
}  // namespace tcei
