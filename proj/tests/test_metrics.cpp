// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#include "tcei/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace tcei {
namespace {

RunRecord rec(std::int32_t video, std::int64_t frame, std::int32_t slot, Index assigned,
              double entropy = 0.5, double activation = 0.0) {
  return RunRecord{video, frame, /*object_index=*/slot, slot, assigned, entropy, activation};
}

TEST(Summarize, StableAssignmentIsPerfect) {
  ScenarioRun run;
  for (int t = 0; t < 5; ++t) {
    run.records.push_back(rec(0, t, 0, 1));
    run.records.push_back(rec(0, t, 1, 2));
  }
  RunSummary s = summarize(run);
  EXPECT_EQ(s.id_accuracy, 1.0);
  EXPECT_EQ(s.id_switches, 0);
  EXPECT_EQ(s.num_records, 10);
}

TEST(Summarize, HandCountedSwitchAndAccuracy) {
  // One trajectory assigned [1,1,2,2]: anchor 1, hits on frames 0-1 only,
  // one switch at frame 2.
  ScenarioRun run;
  const Index ids[] = {1, 1, 2, 2};
  for (int t = 0; t < 4; ++t) run.records.push_back(rec(0, t, 0, ids[t]));
  RunSummary s = summarize(run);
  EXPECT_EQ(s.id_accuracy, 0.5);
  EXPECT_EQ(s.id_switches, 1);
}

TEST(Summarize, EmptyInputThrows) {
  EXPECT_THROW(summarize(ScenarioRun{}), ValidationError);
}

TEST(Summarize, SwitchCountingSpansOcclusionGaps) {
  ScenarioRun run;
  run.records.push_back(rec(0, 0, 0, 1));
  run.records.push_back(rec(0, 5, 0, 2));  // gap between observations
  run.records.push_back(rec(0, 9, 0, 2));
  RunSummary s = summarize(run);
  EXPECT_EQ(s.id_switches, 1);
  EXPECT_NEAR(s.id_accuracy, 1.0 / 3.0, 1e-12);
}

TEST(Summarize, OrderInsensitiveAcrossVideosAndRecords) {
  ScenarioRun ordered;
  const Index ids0[] = {1, 2, 1};
  const Index ids1[] = {3, 3, 1};
  for (int t = 0; t < 3; ++t) {
    ordered.records.push_back(rec(0, t, 0, ids0[t]));
    ordered.records.push_back(rec(1, t, 0, ids1[t]));
  }
  ScenarioRun shuffled = ordered;
  std::mt19937_64 rng(5);
  std::shuffle(shuffled.records.begin(), shuffled.records.end(), rng);

  RunSummary a = summarize(ordered);
  RunSummary b = summarize(shuffled);
  EXPECT_EQ(a.id_accuracy, b.id_accuracy);
  EXPECT_EQ(a.id_switches, b.id_switches);
  ASSERT_EQ(a.per_video.size(), b.per_video.size());
  for (std::size_t v = 0; v < a.per_video.size(); ++v) {
    EXPECT_EQ(a.per_video[v].id_accuracy, b.per_video[v].id_accuracy);
    EXPECT_EQ(a.per_video[v].id_switches, b.per_video[v].id_switches);
  }
}

TEST(Summarize, PerVideoBreakdownAggregates) {
  ScenarioRun run;
  // video 0: perfect; video 1: anchor 1, then 2,2 -> accuracy 1/3, 1 switch
  for (int t = 0; t < 3; ++t) run.records.push_back(rec(0, t, 0, 4));
  const Index ids1[] = {1, 2, 2};
  for (int t = 0; t < 3; ++t) run.records.push_back(rec(1, t, 0, ids1[t]));
  RunSummary s = summarize(run);
  ASSERT_EQ(s.per_video.size(), 2u);
  EXPECT_EQ(s.per_video[0].id_accuracy, 1.0);
  EXPECT_EQ(s.per_video[0].id_switches, 0);
  EXPECT_NEAR(s.per_video[1].id_accuracy, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(s.per_video[1].id_switches, 1);
  EXPECT_NEAR(s.id_accuracy, (3.0 + 1.0) / 6.0, 1e-12);
  EXPECT_EQ(s.id_switches, 1);
}

TEST(Summarize, EntropyAndActivationAverages) {
  ScenarioRun run;
  run.records.push_back(rec(0, 0, 0, 1, 0.2, 0.0));
  run.records.push_back(rec(0, 1, 0, 1, 0.4, 1e-3));
  RunSummary s = summarize(run);
  EXPECT_NEAR(s.mean_entropy, 0.3, 1e-12);
  EXPECT_NEAR(s.activation_rate, 0.5, 1e-12);
}

TEST(Compare, IdenticalSummariesYieldZeroDeltas) {
  ScenarioRun run;
  run.scenario_hash = 42;
  for (int t = 0; t < 3; ++t) run.records.push_back(rec(0, t, 0, 1));
  DeltaReport report = compare(summarize(run), summarize(run));
  for (const MetricDelta& m : report.metrics) EXPECT_EQ(m.delta, 0.0);
}

TEST(Compare, SignedAccuracyDelta) {
  RunSummary a, b;
  a.scenario_hash = b.scenario_hash = 7;
  a.id_accuracy = 0.80;
  b.id_accuracy = 0.75;
  DeltaReport report = compare(a, b);
  ASSERT_FALSE(report.metrics.empty());
  EXPECT_EQ(report.metrics[0].name, "id_accuracy");
  EXPECT_NEAR(report.metrics[0].delta, 0.05, 1e-12);
}

TEST(Compare, MismatchedScenariosThrow) {
  RunSummary a, b;
  a.scenario_hash = 1;
  b.scenario_hash = 2;
  EXPECT_THROW(compare(a, b), ValidationError);
}

TEST(Compare, TextRenderingListsEveryMetric) {
  RunSummary a, b;
  a.scenario_hash = b.scenario_hash = 7;
  a.id_accuracy = 0.8;
  b.id_accuracy = 0.75;
  const std::string text = compare(a, b).text();
  EXPECT_NE(text.find("id_accuracy"), std::string::npos);
  EXPECT_NE(text.find("id_switches"), std::string::npos);
  EXPECT_NE(text.find("mean_entropy"), std::string::npos);
  EXPECT_NE(text.find("activation_rate"), std::string::npos);
  EXPECT_NE(text.find("+0.05"), std::string::npos);
}

}  // namespace
}  // namespace tcei
