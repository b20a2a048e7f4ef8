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

#include "cubeshot/structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_map>

#include "cubeshot/ball_canon.hpp"
#include "cubeshot/errors.hpp"

namespace cubeshot {

namespace {

bool adjacent(std::uint32_t a, std::uint32_t b) {
  return std::popcount(a ^ b) == 1;
}

std::vector<std::uint32_t> image_of_neighbourhood(
    std::span<const std::uint32_t> map, std::uint32_t v, int n) {
  std::vector<std::uint32_t> out(n);
  for (int i = 0; i < n; ++i) out[i] = map[v ^ (1u << i)];
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Overlaps |image ∩ Γ(w)| for every w that can score at least one.
class OverlapCounter {
 public:
  explicit OverlapCounter(CubeDim dim) : n_(dim.n()), counts_(dim.order(), 0) {}

  const std::vector<std::uint32_t>& count(
      const std::vector<std::uint32_t>& image) {
    for (std::uint32_t w : touched_) counts_[w] = 0;
    touched_.clear();
    for (std::uint32_t a : image) {
      for (int j = 0; j < n_; ++j) {
        const std::uint32_t w = a ^ (1u << j);
        if (counts_[w]++ == 0) touched_.push_back(w);
      }
    }
    std::sort(touched_.begin(), touched_.end());
    return touched_;
  }

  int operator[](std::uint32_t w) const { return counts_[w]; }

 private:
  int n_;
  std::vector<int> counts_;
  std::vector<std::uint32_t> touched_;
};

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

std::uint64_t boundary_size(const VertexSet& a) {
  return a.empty() ? 0 : set_neighbourhood(a).size();
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

}  // namespace

BijectionTable::BijectionTable(CubeDim dim, std::vector<std::uint32_t> forward)
    : dim_(dim), forward_(std::move(forward)) {
  if (forward_.size() != dim.order()) {
    throw DomainError("bijection needs " + std::to_string(dim.order()) +
                      " entries, got " + std::to_string(forward_.size()));
  }
  inverse_.assign(forward_.size(), 0);
  std::vector<bool> seen(forward_.size(), false);
  for (std::uint32_t v = 0; v < forward_.size(); ++v) {
    const std::uint32_t w = forward_[v];
    if (w >= forward_.size() || seen[w]) {
      throw DomainError("table is not a permutation (entry " +
                        std::to_string(v) + ")");
    }
    seen[w] = true;
    inverse_[w] = v;
  }
}

BijectionTable BijectionTable::identity(CubeDim dim) {
  std::vector<std::uint32_t> f(dim.order());
  std::iota(f.begin(), f.end(), 0u);
  return BijectionTable(dim, std::move(f));
}

BijectionTable BijectionTable::from_automorphism(const CubeAutomorphism& sigma) {
  std::vector<std::uint32_t> f(sigma.dim().order());
  for (std::uint32_t v = 0; v < f.size(); ++v) f[v] = sigma(Vertex{v}).index;
  return BijectionTable(sigma.dim(), std::move(f));
}

BijectionTable BijectionTable::antipodal_odd(CubeDim dim) {
  std::vector<std::uint32_t> f(dim.order());
  for (std::uint32_t v = 0; v < f.size(); ++v) {
    f[v] = (std::popcount(v) % 2 == 0) ? v : (v ^ dim.full_mask());
  }
  return BijectionTable(dim, std::move(f));
}

BijectionTable BijectionTable::inverse() const {
  return BijectionTable(dim_, inverse_);
}

BijectionTable BijectionTable::compose(const BijectionTable& other) const {
  if (other.dim_ != dim_) throw DomainError("bijections have different dimensions");
  std::vector<std::uint32_t> f(forward_.size());
  for (std::uint32_t v = 0; v < f.size(); ++v) f[v] = forward_[other.forward_[v]];
  return BijectionTable(dim_, std::move(f));
}

BijectionTable BijectionTable::then_swap(Vertex a, Vertex b) const {
  dim_.check(a);
  dim_.check(b);
  std::vector<std::uint32_t> f = forward_;
  for (auto& w : f) {
    if (w == a.index) {
      w = b.index;
    } else if (w == b.index) {
      w = a.index;
    }
  }
  return BijectionTable(dim_, std::move(f));
}

void write_bijection(std::ostream& out, const BijectionTable& f) {
  out << "bij " << f.dim().n() << '\n';
  const auto fw = f.forward();
  for (std::size_t i = 0; i < fw.size(); ++i) {
    out << fw[i] << (i + 1 == fw.size() ? '\n' : ' ');
  }
}

BijectionTable read_bijection(std::istream& in) {
  std::string tag;
  long long n = 0;
  if (!(in >> tag >> n) || tag != "bij") {
    throw DomainError("expected header 'bij <n>'");
  }
  if (n < 1 || n > CubeDim::kMax) throw DomainError("dimension out of range");
  const CubeDim dim(static_cast<int>(n));
  std::vector<std::uint32_t> f(dim.order());
  for (auto& w : f) {
    long long x = 0;
    if (!(in >> x)) throw DomainError("bijection file ends early");
    if (x < 0 || static_cast<unsigned long long>(x) >= dim.order()) {
      throw DomainError("bijection entry out of range: " + std::to_string(x));
    }
    w = static_cast<std::uint32_t>(x);
  }
  return BijectionTable(dim, std::move(f));
}

bool is_automorphism(const BijectionTable& f) {
  const int n = f.dim().n();
  const auto fw = f.forward();
  for (std::uint32_t v = 0; v < fw.size(); ++v) {
    for (int i = 0; i < n; ++i) {
      if (!adjacent(fw[v], fw[v ^ (1u << i)])) return false;
    }
  }
  return true;
}

MembershipResult cluster_membership(const BijectionTable& f, int r,
                                    std::uint64_t slack) {
  if (r != 1 && r != 2) throw DomainError("cluster radius must be 1 or 2");
  const CubeDim dim = f.dim();
  const int n = dim.n();
  const std::uint64_t limit = binomial(n, r + 1) + slack;
  MembershipResult result;
  for (std::uint32_t v = 0; v < dim.order(); ++v) {
    std::vector<Vertex> image;
    for (int i = 0; i < n; ++i) image.push_back(f(Vertex{v ^ (1u << i)}));
    const VertexSet a(dim, std::move(image));
    if (set_shell(a, r).size() > limit) {
      result.member = false;
      result.violator = Vertex{v};
      return result;
    }
  }
  return result;
}

int DualMap::max_defect() const {
  return defect.empty() ? 0 : *std::max_element(defect.begin(), defect.end());
}

bool DualMap::bijective() const {
  std::vector<bool> seen(g.size(), false);
  for (std::uint32_t w : g) {
    if (seen[w]) return false;
    seen[w] = true;
  }
  return true;
}

DualMap compute_dual(CubeDim dim, std::span<const std::uint32_t> map, int s) {
  if (map.size() != dim.order()) throw DomainError("map has the wrong size");
  const int n = dim.n();
  DualMap dual;
  dual.g.resize(dim.order());
  dual.defect.resize(dim.order());
  OverlapCounter counter(dim);
  for (std::uint32_t v = 0; v < dim.order(); ++v) {
    const auto& touched = counter.count(image_of_neighbourhood(map, v, n));
    int best = -1;
    std::uint32_t best_w = 0;
    int reaching = 0;
    int at_best = 0;
    for (std::uint32_t w : touched) {
      const int c = counter[w];
      if (c > best) {
        best = c;
        best_w = w;
        at_best = 1;
      } else if (c == best) {
        ++at_best;
      }
      if (c >= n - s) ++reaching;
    }
    dual.g[v] = best_w;
    dual.defect[v] = n - best;
    if (reaching > 1 && dual.unique) {
      dual.unique = false;
      dual.non_unique_at = Vertex{v};
    }
    if (at_best > 1 && !dual.tie_at) dual.tie_at = Vertex{v};
  }
  return dual;
}

DualMap compute_dual(const BijectionTable& f, int s) {
  return compute_dual(f.dim(), f.forward(), s);
}

MonoResult mono_membership(const BijectionTable& f, int s, int t) {
  MonoResult result;
  if (!cluster_membership(f, 1, static_cast<std::uint64_t>(std::max(s, 0)))
           .member) {
    result.status = MonoStatus::kNotCluster;
    return result;
  }
  const CubeDim dim = f.dim();
  OverlapCounter counter(dim);
  for (std::uint32_t v = 0; v < dim.order(); ++v) {
    const auto& touched =
        counter.count(image_of_neighbourhood(f.forward(), v, dim.n()));
    std::optional<std::uint32_t> first;
    for (std::uint32_t w : touched) {
      if (counter[w] <= t) continue;
      if (!first) {
        first = w;
        continue;
      }
      result.status = MonoStatus::kViolator;
      result.v = Vertex{v};
      result.w1 = Vertex{*first};
      result.w2 = Vertex{w};
      return result;
    }
  }
  return result;
}

std::string_view to_string(DualChainStatus status) {
  switch (status) {
    case DualChainStatus::kOk:
      return "ok";
    case DualChainStatus::kNotLocal:
      return "not-local";
    case DualChainStatus::kNotUnique:
      return "dual-not-unique";
    case DualChainStatus::kNotBijective:
      return "dual-not-bijective";
  }
  return "ok";
}

std::string_view to_string(PropertyStatus status) {
  switch (status) {
    case PropertyStatus::kPasses:
      return "passes";
    case PropertyStatus::kFails:
      return "fails";
    case PropertyStatus::kHypothesisFails:
      return "hypothesis-fails";
  }
  return "passes";
}

DiagonalResult diagonal_and_self(const BijectionTable& f, int s) {
  DiagonalResult result;
  const DualMap first = compute_dual(f, s);
  for (std::uint32_t v = 0; v < first.defect.size(); ++v) {
    if (first.defect[v] > s) {
      result.status = DualChainStatus::kNotLocal;
      result.witness = Vertex{v};
      return result;
    }
  }
  if (!first.unique || first.tie_at) {
    result.status = DualChainStatus::kNotUnique;
    result.witness = first.non_unique_at ? first.non_unique_at : first.tie_at;
    return result;
  }
  if (!first.bijective()) {
    result.status = DualChainStatus::kNotBijective;
    return result;
  }
  const DualMap second = compute_dual(f.dim(), first.g, s);
  if (second.tie_at) {
    result.status = DualChainStatus::kNotUnique;
    result.witness = second.tie_at;
    return result;
  }
  const auto fw = f.forward();
  result.is_self_dual = std::equal(fw.begin(), fw.end(), first.g.begin());
  result.is_diagonal = std::equal(fw.begin(), fw.end(), second.g.begin());
  return result;
}

PropertyResult inverse_dual_check(const BijectionTable& f, int s) {
  PropertyResult result;
  const DualMap dual = compute_dual(f, s);
  if (!dual.local(s)) {
    result.status = PropertyStatus::kHypothesisFails;
    result.detail = "f is not in Local_s";
    return result;
  }
  if (!dual.bijective()) {
    result.status = PropertyStatus::kHypothesisFails;
    result.detail = "dual is not bijective";
    return result;
  }
  const CubeDim dim = f.dim();
  const int n = dim.n();
  std::vector<std::uint32_t> g_inv(dim.order());
  for (std::uint32_t v = 0; v < dim.order(); ++v) g_inv[dual.g[v]] = v;
  for (std::uint32_t v = 0; v < dim.order(); ++v) {
    int overlap = 0;
    for (int i = 0; i < n; ++i) {
      if (adjacent(f.preimage(Vertex{v ^ (1u << i)}).index, g_inv[v])) ++overlap;
    }
    if (overlap < n - s) {
      result.status = PropertyStatus::kFails;
      result.counterexample = Vertex{v};
      result.detail = "overlap " + std::to_string(overlap) + " < n - s";
      return result;
    }
  }
  return result;
}

std::optional<int> dual_locality_measure(const BijectionTable& f, int s) {
  const DualMap dual = compute_dual(f, s);
  if (!dual.local(s)) return std::nullopt;
  return compute_dual(f.dim(), dual.g, s).max_defect();
}

StabilityWitness stability_witness(const VertexSet& a) {
  const int n = a.dim().n();
  std::unordered_map<std::uint32_t, int> counts;
  for (Vertex x : a) {
    for (int j = 0; j < n; ++j) ++counts[x.index ^ (1u << j)];
  }
  StabilityWitness best{Vertex{0}, 0};
  for (const auto& [w, c] : counts) {
    if (c > best.overlap || (c == best.overlap && w < best.w.index)) {
      best = {Vertex{w}, c};
    }
  }
  return best;
}

TwoClusterResult two_cluster_stability(const VertexSet& a, double s, double t) {
  const int n = a.dim().n();
  TwoClusterResult result;
  result.size_ok = a.size() == static_cast<std::size_t>(n);
  result.boundary_ok = static_cast<double>(boundary_size(a)) <=
                       static_cast<double>(binomial(n, 2)) + s * n;
  std::unordered_map<std::uint32_t, int> counts;
  for (Vertex x : a) {
    for (int j = 0; j < n; ++j) ++counts[x.index ^ (1u << j)];
  }
  std::vector<std::uint32_t> heavy;
  for (const auto& [w, c] : counts) {
    if (c > t) heavy.push_back(w);
  }
  std::sort(heavy.begin(), heavy.end());
  result.two_cluster_ok = heavy.size() < 2;
  if (!result.two_cluster_ok) {
    result.cluster_a = Vertex{heavy[0]};
    result.cluster_b = Vertex{heavy[1]};
  }
  const double radicand = 1.0 - 2.0 * s / n - 14.0 * std::sqrt(t / n);
  result.radicand_ok = radicand >= 0.0;
  result.witness = stability_witness(a);
  result.bound = n * std::sqrt(std::max(0.0, radicand));
  result.margin = result.witness.overlap - result.bound;
  result.conclusion_holds = result.margin >= 0.0;
  return result;
}

HarperCorollaryResult corollary_harper_check(const VertexSet& a, int r,
                                             double s) {
  if (r < 2) throw DomainError("corollary check needs r >= 2");
  const int n = a.dim().n();
  HarperCorollaryResult result;
  result.boundary = boundary_size(a);
  const double limit = static_cast<double>(binomial(n, r)) +
                       static_cast<double>(ipow(n, r - 1)) * s;
  result.applicable = static_cast<double>(result.boundary) <= limit;
  const double c = 2.0 * (r + 2);
  result.size_bound = static_cast<double>(binomial(n, r - 1)) +
                      c * static_cast<double>(ipow(n, r - 2)) * s;
  result.holds =
      !result.applicable || static_cast<double>(a.size()) <= result.size_bound;
  return result;
}

CubeSubgraph::CubeSubgraph(CubeDim dim) : dim_(dim), adjacency_(dim.order(), 0) {}

CubeSubgraph CubeSubgraph::full(CubeDim dim) {
  CubeSubgraph g(dim);
  std::fill(g.adjacency_.begin(), g.adjacency_.end(), dim.full_mask());
  return g;
}

void CubeSubgraph::add_edge(Vertex v, int coordinate) {
  dim_.check(v);
  adjacency_[v.index] |= 1u << coordinate;
  adjacency_[v.index ^ (1u << coordinate)] |= 1u << coordinate;
}

void CubeSubgraph::remove_edge(Vertex v, int coordinate) {
  dim_.check(v);
  adjacency_[v.index] &= ~(1u << coordinate);
  adjacency_[v.index ^ (1u << coordinate)] &= ~(1u << coordinate);
}

int CubeSubgraph::degree(Vertex v) const {
  return std::popcount(adjacency_[v.index]);
}

int CubeSubgraph::min_degree() const {
  int best = dim_.n();
  for (std::uint32_t a : adjacency_) best = std::min(best, std::popcount(a));
  return best;
}

std::uint64_t CubeSubgraph::edge_count() const {
  std::uint64_t twice = 0;
  for (std::uint32_t a : adjacency_) twice += std::popcount(a);
  return twice / 2;
}

CubeSubgraph random_min_degree_subgraph(CubeDim dim, int s, std::uint64_t seed) {
  const int n = dim.n();
  CubeSubgraph g = CubeSubgraph::full(dim);
  std::vector<std::pair<std::uint32_t, int>> edges;
  for (std::uint32_t v = 0; v < dim.order(); ++v) {
    for (int i = 0; i < n; ++i) {
      if (!(v & (1u << i))) edges.emplace_back(v, i);
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = edges.size(); i > 1; --i) {
    std::swap(edges[i - 1], edges[bounded_draw(rng, i)]);
  }
  for (const auto& [v, i] : edges) {
    const Vertex a{v};
    const Vertex b{v ^ (1u << i)};
    if (g.degree(a) > n - s && g.degree(b) > n - s) g.remove_edge(a, i);
  }
  return g;
}

CubeSubgraph invariant_edge_graph(const BijectionTable& f, const DualMap& dual) {
  const CubeDim dim = f.dim();
  if (dual.g.size() != dim.order()) throw DomainError("dual has the wrong size");
  CubeSubgraph g(dim);
  for (std::uint32_t u = 0; u < dim.order(); ++u) {
    for (int i = 0; i < dim.n(); ++i) {
      const std::uint32_t v = u ^ (1u << i);
      if (v < u) continue;
      if (adjacent(f(Vertex{u}).index, dual.g[v]) &&
          adjacent(f(Vertex{v}).index, dual.g[u])) {
        g.add_edge(Vertex{u}, i);
      }
    }
  }
  return g;
}

RigidLayers rigid_layers(const CubeSubgraph& g, Vertex v, int k_max) {
  const CubeDim dim = g.dim();
  dim.check(v);
  if (k_max < 0) throw DomainError("k_max must be non-negative");
  const int n = dim.n();
  RigidLayers result;
  result.base = v;
  result.layers.emplace_back(dim, std::vector<Vertex>{v});
  std::vector<std::uint8_t> in_prev(dim.order(), 0);
  in_prev[v.index] = 1;
  for (int i = 1; i <= std::min(k_max, n); ++i) {
    std::vector<Vertex> layer;
    for_each_mask_of_weight(n, i, [&](std::uint32_t m) {
      const std::uint32_t w = v.index ^ m;
      for (std::uint32_t rest = m; rest != 0; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        if (!in_prev[w ^ (1u << j)] || !g.has_edge(Vertex{w}, j)) return;
      }
      layer.push_back(Vertex{w});
    });
    for (Vertex x : result.layers.back()) in_prev[x.index] = 0;
    for (Vertex x : layer) in_prev[x.index] = 1;
    result.layers.emplace_back(dim, std::move(layer));
  }
  return result;
}

MembershipResult isom_membership(const Colouring& chi, const BijectionTable& f,
                                 int r) {
  if (chi.dim() != f.dim()) throw DomainError("dimensions differ");
  const Colouring chi_f = transport(chi, f.forward());
  MembershipResult result;
  for (std::uint32_t v = 0; v < chi.dim().order(); ++v) {
    if (ball_signature(chi, Vertex{v}, r) != ball_signature(chi_f, f(Vertex{v}), r)) {
      result.member = false;
      result.violator = Vertex{v};
      return result;
    }
  }
  return result;
}

DriftResult local_equiv_drift(const Colouring& chi, const BijectionTable& f,
                              Vertex v, int s) {
  if (chi.dim().n() > 8) {
    throw BudgetError("local_equiv_drift needs n <= 8 for exact 2-ball distance");
  }
  chi.dim().check(v);
  DriftResult result;
  if (!isom_membership(chi, f, 2).member) {
    result.status = PropertyStatus::kHypothesisFails;
    result.detail = "f is not in Isom^(2)(chi)";
    return result;
  }
  const DualMap first = compute_dual(f, s);
  if (!first.local(s) || !first.bijective()) {
    result.status = PropertyStatus::kHypothesisFails;
    result.detail = "f is not in Local_s with a bijective dual";
    return result;
  }
  const DualMap second = compute_dual(f.dim(), first.g, s);
  if (!second.bijective()) {
    result.status = PropertyStatus::kHypothesisFails;
    result.detail = "second dual is not bijective";
    return result;
  }
  const BijectionTable h(f.dim(), second.g);
  result.target = h.preimage(f(v));
  result.distance = ball_distance_r2(chi, v, chi, *result.target,
                                     DistanceMode::kExact);
  return result;
}

ClassificationReport classify(const BijectionTable& f, int s, int t) {
  ClassificationReport rep;
  rep.n = f.dim().n();
  rep.s = s;
  rep.t = t;
  rep.automorphism = is_automorphism(f);
  const auto slack = static_cast<std::uint64_t>(std::max(s, 0));
  rep.cluster1 = cluster_membership(f, 1, slack).member;
  rep.cluster2 =
      cluster_membership(f, 2, slack * static_cast<std::uint64_t>(rep.n)).member;
  const DualMap dual = compute_dual(f, s);
  rep.max_defect = dual.max_defect();
  rep.local = dual.local(s);
  rep.dual_unique = dual.unique;
  rep.dual_bijective = dual.bijective();
  rep.diagonal = diagonal_and_self(f, s);
  rep.mono = mono_membership(f, s, t);
  rep.inverse_dual = inverse_dual_check(f, s);
  rep.dual_locality = dual_locality_measure(f, s);
  rep.invariant_edge_min_degree = invariant_edge_graph(f, dual).min_degree();
  return rep;
}

void write_report(std::ostream& out, const ClassificationReport& r) {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  out << "n=" << r.n << '\n'
      << "s=" << r.s << '\n'
      << "t=" << r.t << '\n'
      << "automorphism=" << flag(r.automorphism) << '\n'
      << "cluster1=" << flag(r.cluster1) << '\n'
      << "cluster2=" << flag(r.cluster2) << '\n'
      << "max_defect=" << r.max_defect << '\n'
      << "local=" << flag(r.local) << '\n'
      << "dual_unique=" << flag(r.dual_unique) << '\n'
      << "dual_bijective=" << flag(r.dual_bijective) << '\n'
      << "dual_chain=" << to_string(r.diagonal.status) << '\n';
  if (r.diagonal.status == DualChainStatus::kOk) {
    out << "diagonal=" << flag(r.diagonal.is_diagonal) << '\n'
        << "self_dual=" << flag(r.diagonal.is_self_dual) << '\n';
  } else if (r.diagonal.witness) {
    out << "dual_chain_witness=" << r.diagonal.witness->index << '\n';
  }
  const char* mono = r.mono.status == MonoStatus::kMember     ? "member"
                     : r.mono.status == MonoStatus::kViolator ? "violator"
                                                              : "not-cluster";
  out << "mono=" << mono << '\n'
      << "inverse_dual=" << to_string(r.inverse_dual.status) << '\n';
  if (r.dual_locality) out << "dual_locality=" << *r.dual_locality << '\n';
  out << "invariant_edge_min_degree=" << r.invariant_edge_min_degree << '\n';
}

}  // namespace cubeshot
