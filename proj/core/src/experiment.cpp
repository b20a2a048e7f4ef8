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

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include <boost/math/distributions/chi_squared.hpp>

#include "cubeshot/ball_canon.hpp"
#include "cubeshot/errors.hpp"
#include "cubeshot/shotgun.hpp"

namespace cubeshot {

namespace {

constexpr double kZ95 = 1.959963984540054;

unsigned worker_count(unsigned requested, std::uint64_t trials) {
  unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency())
                              : requested;
  return static_cast<unsigned>(std::min<std::uint64_t>(w, std::max<std::uint64_t>(trials, 1)));
}

// Runs body(i) for every trial i; trial i lands in slot i whatever the
// schedule.
template <typename T, typename Body>
std::vector<T> run_trials(std::uint64_t trials, unsigned threads, Body body) {
  std::vector<T> out(trials);
  const unsigned workers = worker_count(threads, trials);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < trials; ++i) out[i] = body(i);
    return out;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < trials; i += workers) out[i] = body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

double variance_factor(const ColourDistribution& dist) {
  // p(1-p) for two-point laws; (1 - sum m^2) / 2 in general.
  if (dist.kind() == ColourDistribution::Kind::kTwoPoint) {
    return dist.p() * (1.0 - dist.p());
  }
  double sq = 0.0;
  if (dist.kind() == ColourDistribution::Kind::kUniform) {
    sq = 1.0 / dist.palette_size();
  } else {
    for (double m : dist.masses()) sq += m * m;
  }
  return (1.0 - sq) / 2.0;
}

double separation_threshold(const ExperimentConfig& c) {
  const double n = c.n;
  if (c.r == 1) return n - n * c.k_constant / std::log(n);
  return n * n * variance_factor(c.dist) / 2.0;
}

double min_pairwise_distance(const Colouring& chi, int r) {
  const std::uint32_t order = static_cast<std::uint32_t>(chi.dim().order());
  int best = std::numeric_limits<int>::max();
  if (r == 1) {
    for (std::uint32_t a = 0; a < order; ++a) {
      for (std::uint32_t b = a + 1; b < order; ++b) {
        best = std::min(best, ball_distance_r1(chi, Vertex{a}, chi, Vertex{b}));
      }
    }
  } else if (r == 2) {
    std::vector<Ball2Profile> profiles;
    profiles.reserve(order);
    for (std::uint32_t a = 0; a < order; ++a) {
      profiles.push_back(ball2_profile(chi, Vertex{a}));
    }
    for (std::uint32_t a = 0; a < order; ++a) {
      for (std::uint32_t b = a + 1; b < order; ++b) {
        best = std::min(best, ball2_lower_bound(profiles[a], profiles[b]));
      }
    }
  } else {
    throw DomainError("pairwise ball distance supports r = 1 or 2");
  }
  return best == std::numeric_limits<int>::max() ? 0.0 : best;
}

Colouring trial_colouring(const ExperimentConfig& c, std::uint64_t seed) {
  return sample_colouring(CubeDim(c.n), c.dist, Seed{seed});
}

std::uint32_t permute_bits(std::uint32_t mask, const std::vector<int>& pi) {
  if (pi.empty()) return mask;
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if ((mask >> i) & 1u) out |= 1u << pi[i];
  }
  return out;
}

std::uint64_t neighbour_sum(const Colouring& chi, std::uint32_t w) {
  std::uint64_t sum = 0;
  for (int i = 0; i < chi.dim().n(); ++i) sum += chi.at(w ^ (1u << i));
  return sum;
}

void check_permutation(const std::vector<int>& pi, int n) {
  if (pi.empty()) return;
  std::vector<bool> seen(n, false);
  if (pi.size() != static_cast<std::size_t>(n)) {
    throw DomainError("permutation must have n entries");
  }
  for (int x : pi) {
    if (x < 0 || x >= n || seen[x]) throw DomainError("not a permutation");
    seen[x] = true;
  }
}

std::vector<bool> compatibility_events(const CompatibilityConfig& c,
                                       const Colouring& chi) {
  std::vector<bool> out;
  for (Vertex s : c.family) {
    const std::uint32_t x = c.u.index ^ permute_bits(s.index, c.pi1);
    const std::uint32_t z = c.v.index ^ permute_bits(s.index, c.pi2);
    const std::uint64_t target = neighbour_sum(chi, x);
    bool hit = false;
    for (int i = 0; i < c.n && !hit; ++i) {
      hit = neighbour_sum(chi, z ^ (1u << i)) == target;
    }
    out.push_back(hit);
  }
  return out;
}

CompatibilityConfig default_compatibility(const ExperimentConfig& e) {
  if (e.dist.kind() != ColourDistribution::Kind::kTwoPoint) {
    throw DomainError("psi events need a two-point colour law");
  }
  const CubeDim dim(e.n);
  CompatibilityConfig c;
  c.n = e.n;
  c.p = e.dist.p();
  c.u = Vertex{0};
  c.v = Vertex{dim.full_mask()};
  c.family = spread_set_family(dim, 4, 6, 1, 6).front();
  c.trials = e.trials;
  c.seed = e.seed;
  c.threads = e.threads;
  return c;
}

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      kZ95 / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

TrialSummary summarize(std::vector<TrialRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              return a.trial < b.trial;
            });
  TrialSummary s;
  for (const auto& rec : records) s.successes += rec.outcome ? 1 : 0;
  s.mean = records.empty() ? 0.0
                           : static_cast<double>(s.successes) /
                                 static_cast<double>(records.size());
  std::tie(s.wilson_low, s.wilson_high) =
      wilson_interval(s.successes, records.size());
  s.trials = std::move(records);
  return s;
}

std::string_view to_string(Statistic statistic) {
  switch (statistic) {
    case Statistic::kMinPairwiseBallDistance:
      return "min_pairwise_ball_distance";
    case Statistic::kAllSignaturesDistinct:
      return "all_signatures_distinct";
    case Statistic::kReconstructionSuccess:
      return "reconstruction_success";
    case Statistic::kPsiEventRate:
      return "psi_event_rate";
  }
  return "all_signatures_distinct";
}

Statistic parse_statistic(std::string_view name) {
  for (Statistic s : {Statistic::kMinPairwiseBallDistance,
                      Statistic::kAllSignaturesDistinct,
                      Statistic::kReconstructionSuccess,
                      Statistic::kPsiEventRate}) {
    if (to_string(s) == name) return s;
  }
  throw DomainError("unknown statistic '" + std::string(name) + "'");
}

TrialSummary run_experiment(const ExperimentConfig& config) {
  const CubeDim dim(config.n);
  if (config.statistic == Statistic::kPsiEventRate) {
    return compatibility_event_rate(default_compatibility(config)).per_trial;
  }
  auto body = [&](std::uint64_t i) {
    TrialRecord rec;
    rec.trial = i;
    rec.seed = derive_seed(config.seed.master, i);
    const Colouring chi = trial_colouring(config, rec.seed);
    switch (config.statistic) {
      case Statistic::kAllSignaturesDistinct: {
        const BallMultiset ms = extract_multiset(chi, config.r);
        rec.value = static_cast<double>(ms.distinct());
        rec.outcome = ms.distinct() == dim.order();
        break;
      }
      case Statistic::kMinPairwiseBallDistance: {
        rec.value = min_pairwise_distance(chi, config.r);
        rec.outcome = rec.value > separation_threshold(config);
        break;
      }
      case Statistic::kReconstructionSuccess: {
        const BallMultiset ms = extract_multiset(chi, config.r);
        const ReconstructionResult res = config.r == 3 ? reconstruct_r3(ms)
                                                       : reconstruct_r2(ms);
        rec.value = static_cast<double>(res.placements_tried);
        if (res.status == ReconstructionStatus::kSuccess) {
          const EquivalenceMode mode = config.n <= 8
                                           ? EquivalenceMode::kExact
                                           : EquivalenceMode::kFingerprint;
          rec.outcome = verify_equivalence(chi, *res.colouring, mode).verdict ==
                        Verdict::kEquivalent;
        }
        break;
      }
      case Statistic::kPsiEventRate:
        break;
    }
    return rec;
  };
  if (config.statistic == Statistic::kReconstructionSuccess &&
      config.r != 2 && config.r != 3) {
    throw DomainError("reconstruction needs r = 2 or 3");
  }
  if (config.statistic == Statistic::kMinPairwiseBallDistance && config.r == 2 &&
      config.n > 10) {
    throw BudgetError("pairwise 2-ball distances support n <= 10");
  }
  return summarize(run_trials<TrialRecord>(config.trials, config.threads, body));
}

UniqueBallsReport unique_balls_rate(const ExperimentConfig& config) {
  const CubeDim dim(config.n);
  const bool separation = config.r == 1 || (config.r == 2 && config.n <= 8);
  struct Pair {
    TrialRecord distinct;
    TrialRecord separated;
  };
  auto body = [&](std::uint64_t i) {
    Pair out;
    out.distinct.trial = out.separated.trial = i;
    out.distinct.seed = out.separated.seed = derive_seed(config.seed.master, i);
    const Colouring chi = trial_colouring(config, out.distinct.seed);
    const BallMultiset ms = extract_multiset(chi, config.r);
    out.distinct.value = static_cast<double>(ms.distinct());
    out.distinct.outcome = ms.distinct() == dim.order();
    if (separation) {
      out.separated.value = min_pairwise_distance(chi, config.r);
      out.separated.outcome =
          out.separated.value > separation_threshold(config);
    }
    return out;
  };
  const std::vector<Pair> rows =
      run_trials<Pair>(config.trials, config.threads, body);
  std::vector<TrialRecord> distinct;
  std::vector<TrialRecord> separated;
  for (const Pair& p : rows) {
    distinct.push_back(p.distinct);
    if (separation) separated.push_back(p.separated);
  }
  return {summarize(std::move(distinct)), summarize(std::move(separated))};
}

CompatibilityReport compatibility_event_rate(const CompatibilityConfig& config) {
  const CubeDim dim(config.n);
  if (config.family.dim() != dim) {
    throw DomainError("family lives in a different dimension");
  }
  if (config.family.empty()) throw DomainError("family is empty");
  dim.check(config.u);
  dim.check(config.v);
  check_permutation(config.pi1, config.n);
  check_permutation(config.pi2, config.n);
  const ColourDistribution dist = ColourDistribution::two_point(config.p);
  const std::size_t k = config.family.size();

  auto body = [&](std::uint64_t i) {
    const std::uint64_t seed = derive_seed(config.seed.master, i);
    return compatibility_events(config, sample_colouring(dim, dist, Seed{seed}));
  };
  const std::vector<std::vector<bool>> events =
      run_trials<std::vector<bool>>(config.trials, config.threads, body);

  CompatibilityReport report;
  std::vector<TrialRecord> records;
  std::vector<std::uint64_t> hits(k, 0);
  std::uint64_t joint = 0;
  for (std::uint64_t i = 0; i < config.trials; ++i) {
    const auto& e = events[i];
    const auto count = static_cast<std::uint64_t>(std::count(e.begin(), e.end(), true));
    for (std::size_t a = 0; a < k; ++a) hits[a] += e[a] ? 1 : 0;
    TrialRecord rec;
    rec.trial = i;
    rec.seed = derive_seed(config.seed.master, i);
    rec.value = static_cast<double>(count) / static_cast<double>(k);
    rec.outcome = count == k;
    joint += rec.outcome ? 1 : 0;
    records.push_back(rec);
  }
  report.per_trial = summarize(std::move(records));
  const double trials = static_cast<double>(std::max<std::uint64_t>(config.trials, 1));
  report.predicted_joint = 1.0;
  std::uint64_t total_hits = 0;
  for (std::size_t a = 0; a < k; ++a) {
    report.set_rates.push_back(static_cast<double>(hits[a]) / trials);
    report.predicted_joint *= report.set_rates.back();
    total_hits += hits[a];
  }
  report.event_rate = static_cast<double>(total_hits) / (trials * static_cast<double>(k));
  report.joint_rate = static_cast<double>(joint) / trials;

  const boost::math::chi_squared chi1(1.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
      for (const auto& e : events) {
        if (e[a] && e[b]) {
          ++n11;
        } else if (e[a]) {
          ++n10;
        } else if (e[b]) {
          ++n01;
        } else {
          ++n00;
        }
      }
      PairTest test;
      test.a = a;
      test.b = b;
      const double r1 = n11 + n10, r0 = n01 + n00;
      const double c1 = n11 + n01, c0 = n10 + n00;
      if (r1 > 0 && r0 > 0 && c1 > 0 && c0 > 0) {
        const double d = n11 * n00 - n10 * n01;
        test.chi_square = (r1 + r0) * d * d / (r1 * r0 * c1 * c0);
        test.p_value = boost::math::cdf(boost::math::complement(chi1, test.chi_square));
      }
      if (test.p_value < 0.05) ++report.rejected_at_5pct;
      report.pairs.push_back(test);
    }
  }

  int spread = config.n + 1;
  const auto members = config.family.members();
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      spread = std::min(spread, distance(members[a], members[b]));
    }
  }
  report.family_spread = members.size() < 2 ? config.n : spread;
  report.spread_warning = report.family_spread < 6;
  return report;
}

void write_csv(std::ostream& out, const TrialSummary& summary) {
  out << "trial,seed,outcome,value\n";
  for (const TrialRecord& rec : summary.trials) {
    out << rec.trial << ',' << rec.seed << ',' << (rec.outcome ? 1 : 0) << ','
        << rec.value << '\n';
  }
  out << "summary," << summary.successes << '/' << summary.trials.size() << ','
      << summary.mean << ',' << summary.wilson_low << ';' << summary.wilson_high
      << '\n';
}

}  // namespace cubeshot
