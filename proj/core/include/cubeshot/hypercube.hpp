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

// Combinatorics of the n-dimensional hypercube Q_n.
//
// A vertex is an n-bit index; coordinate i (1-based in the usual notation)
// is bit i-1 of the index. All functions here are pure.

#ifndef CUBESHOT_HYPERCUBE_HPP_
#define CUBESHOT_HYPERCUBE_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cubeshot {

struct Vertex {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(Vertex, Vertex) = default;
};

class CubeDim {
 public:
  static constexpr int kMax = 30;

  // Throws DomainError unless 1 <= n <= kMax.
  explicit CubeDim(int n);

  int n() const { return n_; }
  std::uint64_t order() const { return std::uint64_t{1} << n_; }
  std::uint32_t full_mask() const {
    return static_cast<std::uint32_t>(order() - 1);
  }
  bool contains(Vertex v) const { return v.index < order(); }
  // Throws DomainError if v is not a vertex of Q_n.
  void check(Vertex v) const;

  friend bool operator==(CubeDim, CubeDim) = default;

 private:
  int n_;
};

inline int weight(Vertex v) { return std::popcount(v.index); }

inline int distance(Vertex a, Vertex b) {
  return std::popcount(a.index ^ b.index);
}

// v + e_{coordinate+1}; coordinate is 0-based.
inline Vertex flip(Vertex v, int coordinate) {
  return Vertex{v.index ^ (std::uint32_t{1} << coordinate)};
}

std::uint64_t binomial(int n, int k);

// Calls f(mask) for every n-bit mask of popcount k, in increasing order.
template <typename F>
void for_each_mask_of_weight(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(std::uint32_t{0});
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t x = (std::uint64_t{1} << k) - 1;
  while (x < limit) {
    f(static_cast<std::uint32_t>(x));
    const std::uint64_t low = x & (~x + 1);
    const std::uint64_t ripple = x + low;
    x = (((ripple ^ x) >> 2) / low) | ripple;
  }
}

// A finite set of vertices of a fixed cube, kept sorted by index.
class VertexSet {
 public:
  explicit VertexSet(CubeDim dim) : dim_(dim) {}
  // Sorts and deduplicates; throws DomainError on an out-of-range member.
  VertexSet(CubeDim dim, std::vector<Vertex> members);

  CubeDim dim() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const;
  std::span<const Vertex> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  CubeDim dim_;
  std::vector<Vertex> members_;
};

VertexSet neighbours(Vertex v, CubeDim dim);

// Vertices at Hamming distance exactly k from v. Empty when k > n.
VertexSet kth_shell(Vertex v, int k, CubeDim dim);

VertexSet ball(Vertex v, int r, CubeDim dim);

// Union of the neighbourhoods of the members of a; may intersect a.
// Throws DomainError on an empty set.
VertexSet set_neighbourhood(const VertexSet& a);

// {w : min_{x in a} dist(w, x) == r}. For r = 1 this is set_neighbourhood
// minus a itself.
VertexSet set_shell(const VertexSet& a, int r);

// The simplicial order on subsets of [n]: smaller sets first, then the set
// holding the smallest element of the symmetric difference comes first
// (lexicographic order of the sorted element lists).
std::strong_ordering harper_compare(Vertex a, Vertex b);

// All 2^n vertices sorted by harper_compare.
std::vector<Vertex> harper_order(CubeDim dim);

// The first ell vertices in harper order. Throws DomainError if ell > 2^n.
VertexSet harper_initial_segment(CubeDim dim, std::uint64_t ell);

struct BoundaryBound {
  std::uint64_t actual = 0;
  // C(n,2) - C(n-|A|,2); present only when |A| <= n.
  std::optional<std::uint64_t> harper_lower_bound;
};

BoundaryBound vertex_boundary_bound(const VertexSet& a);

// True when all pairwise distances in a are at least t.
bool is_spread(const VertexSet& a, int t);

// Greedy disjoint t-spread subsets of the weight-w layer. Each set is filled
// by scanning the layer in index order and keeping every vertex that is
// unused and at distance >= spread from the members chosen so far.
// Throws CapacityError naming the first set that could not be filled.
std::vector<VertexSet> spread_set_family(CubeDim dim, int weight, int spread,
                                         int family_count, int set_size);

// x -> P(x) XOR t, where P sends coordinate i to coordinate_map[i].
class CubeAutomorphism {
 public:
  CubeAutomorphism(CubeDim dim, std::vector<int> coordinate_map,
                   std::uint32_t translation);

  static CubeAutomorphism identity(CubeDim dim);
  // Every automorphism of Q_n; throws BudgetError for n > 6.
  static std::vector<CubeAutomorphism> all(CubeDim dim);

  Vertex operator()(Vertex v) const {
    return Vertex{permute_mask(v.index) ^ translation_};
  }
  std::uint32_t permute_mask(std::uint32_t mask) const;

  CubeDim dim() const { return dim_; }
  std::span<const int> coordinate_map() const { return map_; }
  std::uint32_t translation() const { return translation_; }
  CubeAutomorphism inverse() const;

 private:
  CubeDim dim_;
  std::vector<int> map_;
  std::uint32_t translation_;
};

}  // namespace cubeshot

#endif  // CUBESHOT_HYPERCUBE_HPP_
