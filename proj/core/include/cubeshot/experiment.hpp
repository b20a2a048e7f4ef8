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

// Seeded Monte Carlo experiments. Trial i always uses the sub-seed
// derive_seed(master, i), so results do not depend on thread count or
// execution order.

#ifndef CUBESHOT_EXPERIMENT_HPP_
#define CUBESHOT_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

#include "cubeshot/colouring.hpp"
#include "cubeshot/hypercube.hpp"

namespace cubeshot {

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  bool outcome = false;
  double value = 0.0;
};

struct TrialSummary {
  std::vector<TrialRecord> trials;  // ascending by trial index
  std::uint64_t successes = 0;
  double mean = 0.0;                // successes / trials
  double wilson_low = 0.0;
  double wilson_high = 0.0;
};

// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials);

TrialSummary summarize(std::vector<TrialRecord> records);

enum class Statistic {
  kMinPairwiseBallDistance,
  kAllSignaturesDistinct,
  kReconstructionSuccess,
  kPsiEventRate,
};

std::string_view to_string(Statistic statistic);
Statistic parse_statistic(std::string_view name);

struct ExperimentConfig {
  int n = 8;
  ColourDistribution dist = ColourDistribution::two_point(0.5);
  int r = 2;
  std::uint64_t trials = 100;
  Seed seed;
  Statistic statistic = Statistic::kAllSignaturesDistinct;
  // 0 picks the hardware concurrency.
  unsigned threads = 0;
  // Separation constant for the r = 1 distance threshold n - nK/ln n.
  double k_constant = 1.0;
};

// Runs `trials` independent trials of the configured statistic.
// all_signatures_distinct: outcome = all 2^n r-ball signatures distinct.
// min_pairwise_ball_distance: value = min over pairs of the r-ball distance
//   (exact d for r = 1, the profile lower bound for r = 2), outcome = value
//   above n - nK/ln n (r = 1) or n^2 p(1-p)/2 (r = 2).
// reconstruction_success: outcome = reconstruction from r-balls succeeds and
//   verifies equivalent; value = placements tried.
// psi_event_rate: compatibility events on a 6-spread weight-4 family,
//   value = fraction of events that hold, outcome = all hold.
TrialSummary run_experiment(const ExperimentConfig& config);

struct UniqueBallsReport {
  TrialSummary distinct;
  // Empty trials when the separation threshold is not computable at this n.
  TrialSummary separated;
};

// Both indicators per trial; separation is evaluated for r = 1 always and
// for r = 2 when n <= 8.
UniqueBallsReport unique_balls_rate(const ExperimentConfig& config);

struct CompatibilityConfig {
  int n = 12;
  double p = 0.5;
  Vertex u;
  Vertex v;
  std::vector<int> pi1;  // empty means identity
  std::vector<int> pi2;
  // Members are the offset sets S as masks.
  VertexSet family{CubeDim(1)};
  std::uint64_t trials = 200;
  Seed seed;
  unsigned threads = 0;
};

struct PairTest {
  std::size_t a = 0;
  std::size_t b = 0;
  double chi_square = 0.0;
  double p_value = 1.0;
};

struct CompatibilityReport {
  TrialSummary per_trial;  // value = fraction of events, outcome = all hold
  std::vector<double> set_rates;
  double event_rate = 0.0;
  double joint_rate = 0.0;
  double predicted_joint = 0.0;  // product of set rates
  std::vector<PairTest> pairs;
  std::size_t rejected_at_5pct = 0;
  int family_spread = 0;  // minimum pairwise distance of the family
  bool spread_warning = false;  // family closer than distance 6
};

// B_S = { psi(u + pi1(S)) in Psi(v + pi2(S)) } per trial, with pairwise
// chi-square independence tests across the family.
CompatibilityReport compatibility_event_rate(const CompatibilityConfig& config);

// "trial,seed,outcome,value" rows, then
// "summary,<successes>/<trials>,<mean>,<wilson_low>;<wilson_high>".
void write_csv(std::ostream& out, const TrialSummary& summary);

}  // namespace cubeshot

#endif  // CUBESHOT_EXPERIMENT_HPP_
