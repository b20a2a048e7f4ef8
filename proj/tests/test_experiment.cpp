// Copyright 2026 The cubeshot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cubeshot/experiment.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cubeshot/errors.hpp"

namespace cubeshot {
namespace {

TEST(WilsonTest, KnownIntervals) {
  auto [lo, hi] = wilson_interval(8, 10);
  EXPECT_NEAR(lo, 0.4902, 1e-4);
  EXPECT_NEAR(hi, 0.9433, 1e-4);
  std::tie(lo, hi) = wilson_interval(0, 10);
  EXPECT_EQ(lo, 0.0);
  EXPECT_NEAR(hi, 0.2775, 1e-4);
  std::tie(lo, hi) = wilson_interval(100, 100);
  EXPECT_NEAR(lo, 0.9630, 1e-4);
  EXPECT_DOUBLE_EQ(hi, 1.0);
}

TEST(SummaryTest, SortsAndCounts) {
  const auto s = summarize({{2, 0, true, 0.0}, {0, 0, false, 0.0}, {1, 0, true, 0.0}});
  ASSERT_EQ(s.trials.size(), 3u);
  EXPECT_EQ(s.trials[0].trial, 0u);
  EXPECT_EQ(s.trials[2].trial, 2u);
  EXPECT_EQ(s.successes, 2u);
  EXPECT_DOUBLE_EQ(s.mean, 2.0 / 3.0);
}

TEST(StatisticTest, NamesRoundTrip) {
  for (Statistic st : {Statistic::kMinPairwiseBallDistance, Statistic::kAllSignaturesDistinct,
                       Statistic::kReconstructionSuccess, Statistic::kPsiEventRate}) {
    EXPECT_EQ(parse_statistic(to_string(st)), st);
  }
  EXPECT_THROW(parse_statistic("nope"), DomainError);
}

TEST(ExperimentTest, ResultsDoNotDependOnThreadCount) {
  ExperimentConfig c;
  c.n = 8;
  c.r = 2;
  c.trials = 12;
  c.seed = Seed{99};
  c.statistic = Statistic::kAllSignaturesDistinct;
  c.threads = 1;
  const auto one = run_experiment(c);
  c.threads = 4;
  const auto four = run_experiment(c);
  ASSERT_EQ(one.trials.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(one.trials[i].seed, four.trials[i].seed);
    EXPECT_EQ(one.trials[i].seed, derive_seed(99, i));
    EXPECT_EQ(one.trials[i].outcome, four.trials[i].outcome);
    EXPECT_EQ(one.trials[i].value, four.trials[i].value);
  }
}

TEST(ExperimentTest, ReconstructionAndDistanceStatistics) {
  ExperimentConfig c;
  c.n = 6;
  c.r = 3;
  c.trials = 4;
  c.statistic = Statistic::kReconstructionSuccess;
  const auto rec = run_experiment(c);
  EXPECT_EQ(rec.successes, 4u);
  c.r = 1;
  c.statistic = Statistic::kMinPairwiseBallDistance;
  const auto dist = run_experiment(c);
  for (const auto& t : dist.trials) EXPECT_GE(t.value, 0.0);
}

TEST(ExperimentTest, UniqueBallsReportsBothIndicators) {
  ExperimentConfig c;
  c.n = 8;
  c.r = 2;
  c.trials = 5;
  const auto report = unique_balls_rate(c);
  EXPECT_EQ(report.distinct.trials.size(), 5u);
  EXPECT_EQ(report.separated.trials.size(), 5u);
}

TEST(CompatibilityTest, ReportShapeAndRates) {
  CompatibilityConfig c;
  c.n = 12;
  c.p = 0.5;
  c.u = Vertex{0};
  c.v = Vertex{0xFFF};
  c.family = spread_set_family(CubeDim(12), 4, 6, 1, 4).front();
  c.trials = 200;
  c.seed = Seed{5};
  const auto r = compatibility_event_rate(c);
  ASSERT_EQ(r.set_rates.size(), 4u);
  EXPECT_EQ(r.pairs.size(), 6u);
  EXPECT_GE(r.family_spread, 6);
  EXPECT_FALSE(r.spread_warning);
  for (double x : r.set_rates) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 1.0);
  }
  for (const auto& pt : r.pairs) {
    EXPECT_GE(pt.p_value, 0.0);
    EXPECT_LE(pt.p_value, 1.0);
  }
  c.pi1 = {0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_THROW(compatibility_event_rate(c), DomainError);
}

TEST(CsvTest, HeaderRowsAndSummary) {
  const auto s = summarize({{0, 11, true, 1.5}, {1, 12, false, 0.0}});
  std::ostringstream out;
  write_csv(out, s);
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "trial,seed,outcome,value");
  EXPECT_EQ(lines[1], "0,11,1,1.5");
  EXPECT_EQ(lines[3].rfind("summary,1/2,0.5,", 0), 0u);
}

TEST(ExperimentTest, SingleColourNeverDistinct) {
  ExperimentConfig c;
  c.n = 6;
  c.r = 1;
  c.trials = 5;
  c.dist = ColourDistribution::uniform(1);
  EXPECT_EQ(run_experiment(c).successes, 0u);
}

TEST(CompatibilityTest, SpreadEventsLookIndependent) {
  CompatibilityConfig c;
  c.n = 12;
  c.p = 0.5;
  c.u = Vertex{0};
  c.v = Vertex{0xFFF};
  c.family = spread_set_family(CubeDim(12), 4, 6, 1, 4).front();
  c.trials = 2000;
  c.seed = Seed{77};
  const auto r = compatibility_event_rate(c);
  // Joint rate of all four events against the product of the single rates.
  const double se = std::sqrt(r.predicted_joint * (1 - r.predicted_joint) / 2000.0) + 1e-3;
  EXPECT_LT(std::abs(r.joint_rate - r.predicted_joint), 4 * se);
  EXPECT_LE(r.rejected_at_5pct, 2u);
}

}  // namespace
}  // namespace cubeshot
