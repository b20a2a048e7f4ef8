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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Every check compares the library against
// an independent brute-force computation or a closed-form value.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cubeshot/ball_canon.hpp"
#include "cubeshot/colouring.hpp"
#include "cubeshot/experiment.hpp"
#include "cubeshot/hypercube.hpp"
#include "cubeshot/probability.hpp"
#include "cubeshot/shotgun.hpp"
#include "cubeshot/structure.hpp"
#include "oracles.hpp"

namespace {

using namespace cubeshot;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Closed neighbourhood of a vertex subset of Q_4 given as a 16-bit mask.
std::uint32_t closed_q4(std::uint32_t subset) {
  std::uint32_t closed = subset;
  for (int x = 0; x < 16; ++x) {
    if ((subset >> x) & 1u) {
      for (int i = 0; i < 4; ++i) closed |= 1u << (x ^ (1 << i));
    }
  }
  return closed;
}

Outcome harper_oracle() {
  const CubeDim dim(4);
  std::vector<int> best(17, 1 << 20);
  for (std::uint32_t subset = 0; subset < (1u << 16); ++subset) {
    const int ell = std::popcount(subset);
    best[ell] = std::min(best[ell], std::popcount(closed_q4(subset)));
  }
  for (std::uint64_t ell = 0; ell <= 16; ++ell) {
    std::uint32_t mask = 0;
    for (Vertex v : harper_initial_segment(dim, ell)) mask |= 1u << v.index;
    const int got = std::popcount(closed_q4(mask));
    if (got != best[ell]) {
      return {false, fmt("ell=%d segment %d, optimum %d", static_cast<int>(ell), got, best[ell])};
    }
  }
  return {true, "17 segments optimal"};
}

// |Γ(A)| for A given by member list, by direct bitmask union.
std::uint64_t open_neighbourhood(const std::vector<std::uint32_t>& members, int n) {
  std::set<std::uint32_t> out;
  for (auto x : members) {
    for (int i = 0; i < n; ++i) out.insert(x ^ (1u << i));
  }
  return out.size();
}

Outcome boundary_bound() {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t mismatches = 0;
  auto check = [&](int n, const std::vector<std::uint32_t>& members) {
    std::vector<Vertex> vs;
    for (auto x : members) vs.push_back(Vertex{x});
    const auto b = vertex_boundary_bound(VertexSet(CubeDim(n), vs));
    const std::uint64_t direct = open_neighbourhood(members, n);
    const std::uint64_t m = members.size();
    const std::uint64_t bound = binomial(n, 2) - binomial(n - static_cast<int>(m), 2);
    if (b.actual != direct || !b.harper_lower_bound || *b.harper_lower_bound != bound) ++mismatches;
    if (direct < bound) ++violations;
    ++checked;
  };
  // n = 5: every nonempty A with |A| <= 5.
  std::vector<std::uint32_t> members;
  std::function<void(std::uint32_t)> grow = [&](std::uint32_t next) {
    if (!members.empty()) check(5, members);
    if (members.size() == 5) return;
    for (std::uint32_t x = next; x < 32; ++x) {
      members.push_back(x);
      grow(x + 1);
      members.pop_back();
    }
  };
  grow(0);
  std::mt19937_64 rng(20260401);
  for (int trial = 0; trial < 10000; ++trial) {
    const int size = 1 + static_cast<int>(rng() % 12);
    std::set<std::uint32_t> s;
    while (static_cast<int>(s.size()) < size) s.insert(static_cast<std::uint32_t>(rng() % 4096));
    check(12, std::vector<std::uint32_t>(s.begin(), s.end()));
  }
  return {violations == 0 && mismatches == 0,
          fmt("%llu sets, %llu violations, %llu mismatches", static_cast<unsigned long long>(checked),
              static_cast<unsigned long long>(violations), static_cast<unsigned long long>(mismatches))};
}

// Brute canonical key of a ball colouring table indexed by offset mask:
// lexicographic minimum over all coordinate permutations.
std::vector<std::int64_t> brute_key(const std::vector<std::int64_t>& table, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::int64_t> best;
  do {
    std::vector<std::int64_t> img(table.size(), -1);
    for (std::uint32_t s = 0; s < table.size(); ++s) {
      if (table[s] >= 0) img[oracle::permute_bits(s, perm)] = table[s];
    }
    if (best.empty() || img < best) best = img;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Outcome signature_correctness() {
  const int n = 4;
  std::uint64_t instances = 0;
  std::uint64_t disagreements = 0;
  for (int r = 1; r <= 3; ++r) {
    const BallLayout& layout = BallLayout::get(n, r);
    const std::size_t slots = layout.size();
    // Every 2-colouring of the r-ball.
    std::map<std::vector<std::int64_t>, std::set<std::string>> by_brute;
    std::map<std::string, std::set<std::vector<std::int64_t>>> by_sig;
    for (std::uint32_t bits = 0; bits < (1u << slots); ++bits) {
      BallView view;
      view.n = n;
      view.radius = r;
      view.colours.resize(slots);
      std::vector<std::int64_t> table(1u << n, -1);
      for (std::size_t s = 0; s < slots; ++s) {
        view.colours[s] = (bits >> s) & 1u;
        table[layout.masks()[s]] = view.colours[s];
      }
      const auto key = brute_key(table, n);
      const std::string sig = signature_general(view).bytes();
      by_brute[key].insert(sig);
      by_sig[sig].insert(key);
      ++instances;
    }
    // Signature equality must coincide with isomorphism: the two partitions
    // of the ball colourings are identical.
    for (const auto& [k, sigs] : by_brute) disagreements += sigs.size() - 1;
    for (const auto& [s, keys] : by_sig) disagreements += keys.size() - 1;
  }
  return {disagreements == 0 && instances >= 1000,
          fmt("%llu ball colourings (r=1..3), %llu disagreements",
              static_cast<unsigned long long>(instances), static_cast<unsigned long long>(disagreements))};
}

Outcome one_ball_counting() {
  for (int n = 1; n <= 4; ++n) {
    for (int q = 1; q <= 3; ++q) {
      const auto got = count_ball_types(n, q);
      const auto expect = oracle::quotient_ball_types(n, q);
      if (got != expect) {
        return {false, fmt("n=%d q=%d: %s vs %llu", n, q, got.str().c_str(),
                           static_cast<unsigned long long>(expect))};
      }
    }
  }
  return {true, "12 (n, q) pairs exact"};
}

Outcome reconstruction_r3() {
  std::ostringstream detail;
  bool pass = true;
  for (int n : {8, 9, 10}) {
    const auto t0 = Clock::now();
    int successes = 0;
    int unverified = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto chi = sample_colouring(CubeDim(n), ColourDistribution::two_point(0.5),
                                        Seed{derive_seed(0xC0FFEE, seed)});
      const auto res = reconstruct_r3(extract_multiset(chi, 3));
      if (res.status != ReconstructionStatus::kSuccess) continue;
      ++successes;
      const auto mode = n == 8 ? EquivalenceMode::kExact : EquivalenceMode::kFingerprint;
      const auto v = verify_equivalence(chi, *res.colouring, mode);
      bool ok = v.verdict == Verdict::kEquivalent && v.witness.has_value();
      for (std::uint32_t x = 0; ok && x < chi.dim().order(); ++x) {
        ok = (*res.colouring)[(*v.witness)(Vertex{x})] == chi.at(x);
      }
      if (!ok) ++unverified;
    }
    const double elapsed = seconds_since(t0);
    const bool ok = successes >= 90 && unverified == 0 && elapsed <= 600.0;
    pass = pass && ok;
    detail << (detail.tellp() > 0 ? "; " : "") << "n=" << n << " " << successes
           << "/100 verified-fail " << unverified << " " << fmt("%.1fs", elapsed);
  }
  return {pass, detail.str()};
}

Outcome distinct_rate(int n, ColourDistribution dist, int r, double threshold) {
  ExperimentConfig c;
  c.n = n;
  c.dist = dist;
  c.r = r;
  c.trials = 100;
  c.seed = Seed{0xBA11};
  c.statistic = Statistic::kAllSignaturesDistinct;
  const auto s = run_experiment(c);
  return {s.mean >= threshold,
          fmt("rate %.2f (Wilson %.3f..%.3f), need >= %.2f", s.mean, s.wilson_low, s.wilson_high, threshold)};
}

Outcome dual_machinery() {
  const auto f = BijectionTable::antipodal_odd(CubeDim(4));
  const auto dual = compute_dual(f, 0);
  const auto diag = diagonal_and_self(f, 0);
  const bool local = dual.local(0);
  const bool automorphism = is_automorphism(f);
  const bool pass = local && diag.status == DualChainStatus::kOk && diag.is_diagonal &&
                    !diag.is_self_dual && !automorphism;
  return {pass, fmt("local0=%d diagonal=%d self_dual=%d automorphism=%d", local, diag.is_diagonal,
                    diag.is_self_dual, automorphism)};
}

Outcome inverse_dual_suite() {
  const int n = 5;
  const CubeDim dim(n);
  std::mt19937_64 rng(51);
  int kept = 0;
  int attempts = 0;
  int failures = 0;
  std::map<int, int> by_defect;
  while (kept < 1000 && attempts < 200000) {
    ++attempts;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto f = BijectionTable::from_automorphism(
        CubeAutomorphism(dim, perm, static_cast<std::uint32_t>(rng() % 32)));
    const int swaps = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < swaps; ++k) {
      const auto a = static_cast<std::uint32_t>(rng() % 32);
      // Mostly nearby swaps, so small defects are well represented.
      const auto b = rng() % 2 ? a ^ (1u << (rng() % n)) : static_cast<std::uint32_t>(rng() % 32);
      if (a != b) f = f.then_swap(Vertex{a}, Vertex{b});
    }
    const auto dual = compute_dual(f, n);
    if (!dual.bijective()) continue;
    const int s = dual.max_defect();
    ++kept;
    ++by_defect[s];
    if (inverse_dual_check(f, s).status != PropertyStatus::kPasses) ++failures;
  }
  std::string spread;
  for (auto [s, c] : by_defect) spread += fmt(" s=%d:%d", s, c);
  return {kept == 1000 && failures == 0,
          fmt("%d maps (%d drawn), %d failures;", kept, attempts, failures) + spread};
}

Outcome rigid_layer_bound() {
  const int n = 10;
  const CubeDim dim(n);
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::uint64_t oracle_mismatch = 0;
  for (int s = 1; s <= 3; ++s) {
    for (std::uint64_t g_idx = 0; g_idx < 100; ++g_idx) {
      const auto g = random_min_degree_subgraph(dim, s, derive_seed(1000 + s, g_idx));
      if (g.min_degree() < n - s) ++violations;
      for (std::uint32_t v = 0; v < dim.order(); ++v) {
        const auto layers = rigid_layers(g, Vertex{v}, 4);
        for (int k = 1; k <= 4; ++k) {
          const double bound = static_cast<double>(binomial(n, k)) -
                               std::numbers::e * std::pow(n, k - 1) * s;
          if (static_cast<double>(layers.layers[k].size()) < bound) ++violations;
          ++checks;
        }
        // Spot-check layer membership against monotone-path enumeration.
        if (v % 97 == 0) {
          for (int k = 1; k <= 4; ++k) {
            std::uint64_t count = 0;
            for_each_mask_of_weight(n, k, [&](std::uint32_t m) {
              std::vector<int> bits;
              for (int i = 0; i < n; ++i) {
                if ((m >> i) & 1u) bits.push_back(i);
              }
              bool all = true;
              do {
                std::uint32_t x = v;
                for (int b : bits) {
                  all = all && g.has_edge(Vertex{x}, b);
                  x ^= 1u << b;
                }
              } while (all && std::next_permutation(bits.begin(), bits.end()));
              count += all;
            });
            if (count != layers.layers[k].size()) ++oracle_mismatch;
          }
        }
      }
    }
  }
  return {violations == 0 && oracle_mismatch == 0,
          fmt("%llu (graph, base, k) checks, %llu violations, %llu oracle mismatches",
              static_cast<unsigned long long>(checks), static_cast<unsigned long long>(violations),
              static_cast<unsigned long long>(oracle_mismatch))};
}

Outcome chernoff_dominance() {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  double worst = -1.0;
  for (std::uint64_t n = 1; n <= 60; ++n) {
    for (int pi = 1; pi <= 5; ++pi) {
      const double p = pi / 10.0;
      for (int ei = 1; ei < 100; ++ei) {
        const double eps = ei / 100.0;
        const double exact = chernoff_exact_tail(n, p, eps);
        const double bound = chernoff_upper(n, p, eps);
        worst = std::max(worst, exact - bound);
        if (exact > bound) ++violations;
        ++checks;
      }
    }
  }
  // Cross-check the tail itself against exact rational arithmetic.
  std::uint64_t tail_mismatch = 0;
  for (unsigned n : {10u, 33u, 60u}) {
    for (unsigned num : {1u, 3u, 5u}) {
      double exact = 0.0;
      for (unsigned k = 0; k <= n / 2; ++k) {
        exact += oracle::exact_binomial_point(n, k, num, 10);
        if (std::abs(binomial_lower_tail(n, num / 10.0, k) - exact) > 1e-12) ++tail_mismatch;
      }
    }
  }
  return {violations == 0 && tail_mismatch == 0,
          fmt("%llu grid points, %llu violations, max(exact-bound)=%.3g, %llu tail mismatches",
              static_cast<unsigned long long>(checks), static_cast<unsigned long long>(violations), worst,
              static_cast<unsigned long long>(tail_mismatch))};
}

Outcome exponent_echo() {
  const double p = 0.5;
  bool pass = true;
  std::ostringstream detail;
  for (double c : {0.0, 0.5, 1.0}) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (int e = 6; e <= 14; ++e) {
      const auto r = bounds_asymptotic_ratio(std::uint64_t{1} << e, p, c);
      if (!r.applicable || r.point <= 0.0) continue;
      xs.push_back(std::log(std::ldexp(p, e)));
      ys.push_back(std::log(r.point));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    const double expect = -(0.5 + c * c / (2.0 * (1.0 - p)));
    const double rel = std::abs(slope - expect) / std::abs(expect);
    pass = pass && xs.size() == 9 && rel <= 0.10;
    detail << (detail.tellp() > 0 ? "; " : "") << fmt("c=%.1f slope %.4f vs %.4f (%.1f%%)", c, slope, expect, 100 * rel);
  }
  return {pass, detail.str()};
}

Outcome atlas_consistency() {
  const int n = 3;
  const auto atlas = indistinguishability_search(n, 1);
  const auto autos = oracle::all_automorphisms(n);
  if (autos.size() != 48) return {false, "automorphism oracle size"};
  auto colours = [](std::uint32_t bits) {
    std::vector<std::uint32_t> c(8);
    for (int v = 0; v < 8; ++v) c[v] = (bits >> v) & 1u;
    return c;
  };
  // Independent multiset of 1-balls: sorted (centre, number of 1-neighbours).
  auto multiset = [](std::uint32_t bits) {
    std::vector<int> key;
    for (int v = 0; v < 8; ++v) {
      int ones = 0;
      for (int i = 0; i < 3; ++i) ones += (bits >> (v ^ (1 << i))) & 1u;
      key.push_back(static_cast<int>((bits >> v) & 1u) * 4 + ones);
    }
    std::sort(key.begin(), key.end());
    return key;
  };
  std::set<std::pair<std::uint32_t, std::uint32_t>> expected;
  std::uint64_t equal_pairs = 0;
  for (std::uint32_t a = 0; a < 256; ++a) {
    for (std::uint32_t b = a + 1; b < 256; ++b) {
      if (multiset(a) != multiset(b)) continue;
      ++equal_pairs;
      if (!oracle::equivalent_brute(colours(a), colours(b), autos)) expected.insert({a, b});
    }
  }
  const auto listed = witness_pairs(atlas);
  const std::set<std::pair<std::uint32_t, std::uint32_t>> got(listed.begin(), listed.end());
  std::uint64_t bad_listed = 0;
  for (const auto& [a, b] : listed) {
    const bool equal_ms = extract_multiset(atlas_colouring(n, a), 1) == extract_multiset(atlas_colouring(n, b), 1);
    if (!equal_ms || oracle::equivalent_brute(colours(a), colours(b), autos)) ++bad_listed;
  }
  const bool pass = got == expected && listed.size() == got.size() && bad_listed == 0 && atlas.colourings == 256;
  return {pass, fmt("%zu witness pairs listed, %zu expected, %llu equal-multiset pairs, %llu bad, distinguishable %.4f",
                    listed.size(), expected.size(), static_cast<unsigned long long>(equal_pairs),
                    static_cast<unsigned long long>(bad_listed), atlas.distinguishable_fraction())};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "harper initial segments are optimal at n=4", harper_oracle},
      {2, "vertex boundary lower bound", boundary_bound},
      {3, "ball signature equals brute-force isomorphism at n=4", signature_correctness},
      {4, "1-ball type count", one_ball_counting},
      {5, "reconstruction from 3-balls at n=8,9,10", reconstruction_r3},
      {6, "2-ball signatures distinct at n=12",
       [] { return distinct_rate(12, ColourDistribution::two_point(0.5), 2, 0.99); }},
      {7, "1-ball signatures distinct at n=10, q=1000",
       [] { return distinct_rate(10, ColourDistribution::uniform(1000), 1, 0.95); }},
      {8, "antipodal-odd map classification", dual_machinery},
      {9, "inverse of a local map with bijective dual", inverse_dual_suite},
      {10, "rigid layer sizes at n=10", rigid_layer_bound},
      {11, "chernoff bound dominates the exact tail", chernoff_dominance},
      {12, "point probability exponent", exponent_echo},
      {13, "indistinguishability atlas at n=3, r=1", atlas_consistency},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail
              << fmt(" (%.1fs)", seconds_since(t0)) << std::endl;
  }
  std::cout << (failed == 0 ? "ALL PASS" : fmt("%d FAILED", failed)) << std::endl;
  return failed == 0 ? 0 : 1;
}
