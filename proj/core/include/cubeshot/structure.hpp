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

// Bijections of V(Q_n) and their neighbourhood structure: cluster and mono
// classes, approximately local duals, stability witnesses, rigid layers.

#ifndef CUBESHOT_STRUCTURE_HPP_
#define CUBESHOT_STRUCTURE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubeshot/colouring.hpp"
#include "cubeshot/hypercube.hpp"

namespace cubeshot {

class BijectionTable {
 public:
  // Throws DomainError unless forward is a permutation of [0, 2^n).
  BijectionTable(CubeDim dim, std::vector<std::uint32_t> forward);

  static BijectionTable identity(CubeDim dim);
  static BijectionTable from_automorphism(const CubeAutomorphism& sigma);
  // Fixes even-weight vertices and complements odd-weight ones.
  static BijectionTable antipodal_odd(CubeDim dim);

  CubeDim dim() const { return dim_; }
  Vertex operator()(Vertex v) const { return Vertex{forward_[v.index]}; }
  Vertex preimage(Vertex v) const { return Vertex{inverse_[v.index]}; }
  std::span<const std::uint32_t> forward() const { return forward_; }
  std::span<const std::uint32_t> backward() const { return inverse_; }

  BijectionTable inverse() const;
  // (this ∘ other)(v) = this(other(v)).
  BijectionTable compose(const BijectionTable& other) const;
  // This map followed by the transposition of vertices a and b.
  BijectionTable then_swap(Vertex a, Vertex b) const;

  friend bool operator==(const BijectionTable& a, const BijectionTable& b) {
    return a.dim_ == b.dim_ && a.forward_ == b.forward_;
  }

 private:
  CubeDim dim_;
  std::vector<std::uint32_t> forward_;
  std::vector<std::uint32_t> inverse_;
};

// "bij <n>" then the 2^n images in index order.
void write_bijection(std::ostream& out, const BijectionTable& f);
BijectionTable read_bijection(std::istream& in);

// Whether f maps every edge of Q_n to an edge.
bool is_automorphism(const BijectionTable& f);

struct MembershipResult {
  bool member = true;
  std::optional<Vertex> violator;
};

// |set_shell(f(Γ(v)), r)| <= C(n, r+1) + R at every v; r in {1, 2}.
MembershipResult cluster_membership(const BijectionTable& f, int r,
                                    std::uint64_t slack);

struct DualMap {
  // g[v] maximises |f(Γ(v)) ∩ Γ(w)| over w, smallest index on ties.
  std::vector<std::uint32_t> g;
  // defect[v] = n - |f(Γ(v)) ∩ Γ(g(v))|.
  std::vector<int> defect;
  // Exactly one w reaches overlap n - s at every v.
  bool unique = true;
  std::optional<Vertex> non_unique_at;
  // First v whose maximum overlap is attained by several w.
  std::optional<Vertex> tie_at;

  int max_defect() const;
  bool local(int s) const { return max_defect() <= s; }
  bool bijective() const;
};

DualMap compute_dual(const BijectionTable& f, int s);
// Same, for an arbitrary map V(Q_n) -> V(Q_n).
DualMap compute_dual(CubeDim dim, std::span<const std::uint32_t> map, int s);

enum class MonoStatus { kMember, kViolator, kNotCluster };

struct MonoResult {
  MonoStatus status = MonoStatus::kMember;
  // v and two distinct w with |f(Γ(v)) ∩ Γ(w)| > t.
  std::optional<Vertex> v;
  std::optional<Vertex> w1;
  std::optional<Vertex> w2;
};

// Requires f in Cluster^1_s (checked first).
MonoResult mono_membership(const BijectionTable& f, int s, int t);

enum class DualChainStatus { kOk, kNotLocal, kNotUnique, kNotBijective };

std::string_view to_string(DualChainStatus status);

struct DiagonalResult {
  DualChainStatus status = DualChainStatus::kOk;
  std::optional<Vertex> witness;
  bool is_diagonal = false;
  bool is_self_dual = false;
};

// f_⋆⋆ == f and f_⋆ == f, with unique bijective duals along the chain.
DiagonalResult diagonal_and_self(const BijectionTable& f, int s);

enum class PropertyStatus { kPasses, kFails, kHypothesisFails };

std::string_view to_string(PropertyStatus status);

struct PropertyResult {
  PropertyStatus status = PropertyStatus::kPasses;
  std::optional<Vertex> counterexample;
  std::string detail;
};

// With g the dual of f in Local_s and bijective: g^{-1} witnesses
// f^{-1} in Local_s.
PropertyResult inverse_dual_check(const BijectionTable& f, int s);

// Max defect of the dual of f_⋆, i.e. how local the dual map is.
std::optional<int> dual_locality_measure(const BijectionTable& f, int s);

struct StabilityWitness {
  Vertex w;
  int overlap = 0;
};

// Exact argmax of |Γ(w) ∩ A|, smallest index on ties.
StabilityWitness stability_witness(const VertexSet& a);

struct TwoClusterResult {
  bool size_ok = false;      // |A| == n
  bool boundary_ok = false;  // |Γ(A)| <= C(n,2) + s n
  bool two_cluster_ok = false;
  bool radicand_ok = false;  // 1 - 2s/n - 14 sqrt(t/n) >= 0
  // Two distinct centres with more than t points of A each.
  std::optional<Vertex> cluster_a;
  std::optional<Vertex> cluster_b;
  StabilityWitness witness;
  double bound = 0.0;  // n sqrt(max(0, radicand))
  double margin = 0.0;  // overlap - bound
  bool conclusion_holds = false;

  bool hypotheses_hold() const {
    return size_ok && boundary_ok && two_cluster_ok && radicand_ok;
  }
};

TwoClusterResult two_cluster_stability(const VertexSet& a, double s, double t);

struct HarperCorollaryResult {
  bool applicable = false;
  bool holds = false;
  std::uint64_t boundary = 0;
  double size_bound = 0.0;
};

// If |Γ(A)| <= C(n,r) + n^{r-1} s then |A| <= C(n,r-1) + 2(r+2) n^{r-2} s.
HarperCorollaryResult corollary_harper_check(const VertexSet& a, int r,
                                             double s);

// Spanning subgraph of Q_n; adjacency[v] has bit i set iff v ~ v ^ e_i.
class CubeSubgraph {
 public:
  explicit CubeSubgraph(CubeDim dim);
  static CubeSubgraph full(CubeDim dim);

  CubeDim dim() const { return dim_; }
  bool has_edge(Vertex v, int coordinate) const {
    return (adjacency_[v.index] >> coordinate) & 1u;
  }
  std::uint32_t adjacency(Vertex v) const { return adjacency_[v.index]; }
  void add_edge(Vertex v, int coordinate);
  void remove_edge(Vertex v, int coordinate);
  int degree(Vertex v) const;
  int min_degree() const;
  std::uint64_t edge_count() const;

 private:
  CubeDim dim_;
  std::vector<std::uint32_t> adjacency_;
};

// Deletes edges in random order while both endpoints keep degree > n - s.
CubeSubgraph random_min_degree_subgraph(CubeDim dim, int s, std::uint64_t seed);

// E' = {uv : f(u) g(v) and f(v) g(u) are edges}.
CubeSubgraph invariant_edge_graph(const BijectionTable& f, const DualMap& dual);

struct RigidLayers {
  Vertex base;
  std::vector<VertexSet> layers;  // layers[i] = R_i
};

// w in R_i iff every Q_n-neighbour of w one step closer to v is in R_{i-1}
// and joined to w in G.
RigidLayers rigid_layers(const CubeSubgraph& g, Vertex v, int k_max);

// χ_f(v) = χ(f^{-1}(v)); member iff every r-ball of χ at v is isomorphic to
// the r-ball of χ_f at f(v).
MembershipResult isom_membership(const Colouring& chi, const BijectionTable& f,
                                 int r);

struct DriftResult {
  PropertyStatus status = PropertyStatus::kPasses;
  std::optional<Vertex> target;  // f_⋆⋆^{-1}(f(v))
  int distance = 0;
  std::string detail;
};

// 2-ball distance between v and f_⋆⋆^{-1}(f(v)); needs f in Isom^(2)(χ)
// and n <= 8.
DriftResult local_equiv_drift(const Colouring& chi, const BijectionTable& f,
                              Vertex v, int s);

struct ClassificationReport {
  int n = 0;
  int s = 0;
  int t = 0;
  bool automorphism = false;
  bool cluster1 = false;
  bool cluster2 = false;
  int max_defect = 0;
  bool local = false;
  bool dual_unique = false;
  bool dual_bijective = false;
  DiagonalResult diagonal;
  MonoResult mono;
  PropertyResult inverse_dual;
  std::optional<int> dual_locality;
  int invariant_edge_min_degree = 0;
};

ClassificationReport classify(const BijectionTable& f, int s, int t);
// key=value lines.
void write_report(std::ostream& out, const ClassificationReport& report);

}  // namespace cubeshot

#endif  // CUBESHOT_STRUCTURE_HPP_
