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

#include "cubeshot/hypercube.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cubeshot/errors.hpp"

namespace cubeshot {

CubeDim::CubeDim(int n) : n_(n) {
  if (n < 1 || n > kMax) {
    throw DomainError("cube dimension must be in [1, 30], got " +
                      std::to_string(n));
  }
}

void CubeDim::check(Vertex v) const {
  if (!contains(v)) {
    throw DomainError("vertex index " + std::to_string(v.index) +
                      " out of range for n=" + std::to_string(n_));
  }
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) /
             static_cast<std::uint64_t>(i);
  }
  return result;
}

VertexSet::VertexSet(CubeDim dim, std::vector<Vertex> members)
    : dim_(dim), members_(std::move(members)) {
  for (Vertex v : members_) dim_.check(v);
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet neighbours(Vertex v, CubeDim dim) {
  dim.check(v);
  std::vector<Vertex> out;
  out.reserve(dim.n());
  for (int i = 0; i < dim.n(); ++i) out.push_back(flip(v, i));
  return VertexSet(dim, std::move(out));
}

VertexSet kth_shell(Vertex v, int k, CubeDim dim) {
  dim.check(v);
  if (k < 0) throw DomainError("shell index must be nonnegative");
  std::vector<Vertex> out;
  for_each_mask_of_weight(dim.n(), k, [&](std::uint32_t mask) {
    out.push_back(Vertex{v.index ^ mask});
  });
  return VertexSet(dim, std::move(out));
}

VertexSet ball(Vertex v, int r, CubeDim dim) {
  dim.check(v);
  if (r < 0) throw DomainError("ball radius must be nonnegative");
  std::vector<Vertex> out;
  for (int k = 0; k <= std::min(r, dim.n()); ++k) {
    for_each_mask_of_weight(dim.n(), k, [&](std::uint32_t mask) {
      out.push_back(Vertex{v.index ^ mask});
    });
  }
  return VertexSet(dim, std::move(out));
}

VertexSet set_neighbourhood(const VertexSet& a) {
  if (a.empty()) throw DomainError("set_neighbourhood of an empty set");
  const CubeDim dim = a.dim();
  std::vector<Vertex> out;
  out.reserve(a.size() * dim.n());
  for (Vertex v : a) {
    for (int i = 0; i < dim.n(); ++i) out.push_back(flip(v, i));
  }
  return VertexSet(dim, std::move(out));
}

namespace {

VertexSet set_shell_by_bfs(const VertexSet& a, int r) {
  const CubeDim dim = a.dim();
  constexpr std::uint8_t kUnseen = 0xFF;
  std::vector<std::uint8_t> dist(dim.order(), kUnseen);
  std::vector<std::uint32_t> frontier;
  for (Vertex v : a) {
    dist[v.index] = 0;
    frontier.push_back(v.index);
  }
  for (int level = 1; level <= r && !frontier.empty(); ++level) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t x : frontier) {
      for (int i = 0; i < dim.n(); ++i) {
        const std::uint32_t y = x ^ (std::uint32_t{1} << i);
        if (dist[y] == kUnseen) {
          dist[y] = static_cast<std::uint8_t>(level);
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Vertex> out;
  if (r == 0) {
    out.assign(a.begin(), a.end());
  } else {
    for (std::uint32_t x : frontier) out.push_back(Vertex{x});
  }
  return VertexSet(dim, std::move(out));
}

}  // namespace

VertexSet set_shell(const VertexSet& a, int r) {
  if (a.empty()) throw DomainError("set_shell of an empty set");
  if (r < 0) throw DomainError("set_shell radius must be nonnegative");
  const CubeDim dim = a.dim();
  if (r > dim.n()) return VertexSet(dim);
  if (r == 0) return a;

  // Enumerating shells around each member is cheaper than a full-cube BFS
  // for the small sets the classifiers work with.
  const double local_cost = static_cast<double>(a.size()) *
                            static_cast<double>(a.size()) *
                            static_cast<double>(binomial(dim.n(), r));
  const double bfs_cost =
      static_cast<double>(dim.order()) * static_cast<double>(dim.n());
  if (local_cost > bfs_cost) return set_shell_by_bfs(a, r);

  std::vector<Vertex> out;
  for (Vertex x : a) {
    for_each_mask_of_weight(dim.n(), r, [&](std::uint32_t mask) {
      const Vertex w{x.index ^ mask};
      for (Vertex y : a) {
        if (distance(w, y) < r) return;
      }
      out.push_back(w);
    });
  }
  return VertexSet(dim, std::move(out));
}

std::strong_ordering harper_compare(Vertex a, Vertex b) {
  if (a == b) return std::strong_ordering::equal;
  const int wa = weight(a);
  const int wb = weight(b);
  if (wa != wb) return wa <=> wb;
  const std::uint32_t low = (a.index ^ b.index) & (~(a.index ^ b.index) + 1);
  return (a.index & low) ? std::strong_ordering::less
                         : std::strong_ordering::greater;
}

namespace {

// Calls f(mask) for every k-subset of [n] in lexicographic order of the
// sorted element lists; returns early once f returns false.
template <typename F>
void for_each_layer_in_harper_order(int n, int k, F&& f) {
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    std::uint32_t mask = 0;
    for (int x : c) mask |= std::uint32_t{1} << x;
    if (!f(mask)) return;
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

std::vector<Vertex> harper_order(CubeDim dim) {
  std::vector<Vertex> out;
  out.reserve(dim.order());
  for (int k = 0; k <= dim.n(); ++k) {
    for_each_layer_in_harper_order(dim.n(), k, [&](std::uint32_t mask) {
      out.push_back({mask});
      return true;
    });
  }
  return out;
}

VertexSet harper_initial_segment(CubeDim dim, std::uint64_t ell) {
  if (ell > dim.order()) {
    throw DomainError("initial segment length " + std::to_string(ell) +
                      " exceeds 2^n");
  }
  std::vector<Vertex> out;
  out.reserve(ell);
  for (int k = 0; k <= dim.n() && out.size() < ell; ++k) {
    for_each_layer_in_harper_order(dim.n(), k, [&](std::uint32_t mask) {
      if (out.size() >= ell) return false;
      out.push_back({mask});
      return true;
    });
  }
  return VertexSet(dim, std::move(out));
}

BoundaryBound vertex_boundary_bound(const VertexSet& a) {
  BoundaryBound result;
  result.actual = set_neighbourhood(a).size();
  const int n = a.dim().n();
  if (a.size() <= static_cast<std::size_t>(n)) {
    const int m = static_cast<int>(a.size());
    result.harper_lower_bound = binomial(n, 2) - binomial(n - m, 2);
  }
  return result;
}

bool is_spread(const VertexSet& a, int t) {
  const auto m = a.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (distance(m[i], m[j]) < t) return false;
    }
  }
  return true;
}

std::vector<VertexSet> spread_set_family(CubeDim dim, int weight, int spread,
                                         int family_count, int set_size) {
  if (weight < 0 || weight > dim.n()) {
    throw DomainError("layer weight out of range");
  }
  if (family_count < 0 || set_size < 0) {
    throw DomainError("family count and set size must be nonnegative");
  }
  std::vector<std::uint32_t> layer;
  for_each_mask_of_weight(dim.n(), weight,
                          [&](std::uint32_t mask) { layer.push_back(mask); });
  std::vector<bool> used(layer.size(), false);

  std::vector<VertexSet> family;
  family.reserve(family_count);
  for (int s = 0; s < family_count; ++s) {
    std::vector<Vertex> members;
    for (std::size_t i = 0;
         i < layer.size() && members.size() < static_cast<std::size_t>(set_size);
         ++i) {
      if (used[i]) continue;
      const Vertex candidate{layer[i]};
      const bool far = std::all_of(
          members.begin(), members.end(),
          [&](Vertex m) { return distance(m, candidate) >= spread; });
      if (!far) continue;
      members.push_back(candidate);
      used[i] = true;
    }
    if (members.size() < static_cast<std::size_t>(set_size)) {
      throw CapacityError("spread set " + std::to_string(s) + " of " +
                          std::to_string(family_count) + " holds only " +
                          std::to_string(members.size()) + " of " +
                          std::to_string(set_size) + " required vertices");
    }
    family.emplace_back(dim, std::move(members));
  }
  return family;
}

CubeAutomorphism::CubeAutomorphism(CubeDim dim, std::vector<int> coordinate_map,
                                   std::uint32_t translation)
    : dim_(dim), map_(std::move(coordinate_map)), translation_(translation) {
  if (map_.size() != static_cast<std::size_t>(dim.n())) {
    throw DomainError("coordinate map must have n entries");
  }
  std::vector<bool> seen(dim.n(), false);
  for (int c : map_) {
    if (c < 0 || c >= dim.n() || seen[c]) {
      throw DomainError("coordinate map is not a permutation");
    }
    seen[c] = true;
  }
  dim.check(Vertex{translation});
}

CubeAutomorphism CubeAutomorphism::identity(CubeDim dim) {
  std::vector<int> map(dim.n());
  std::iota(map.begin(), map.end(), 0);
  return CubeAutomorphism(dim, std::move(map), 0);
}

std::vector<CubeAutomorphism> CubeAutomorphism::all(CubeDim dim) {
  if (dim.n() > 6) {
    throw BudgetError("enumerating Aut(Q_n) is limited to n <= 6");
  }
  std::vector<CubeAutomorphism> out;
  std::vector<int> map(dim.n());
  std::iota(map.begin(), map.end(), 0);
  do {
    for (std::uint32_t t = 0; t < dim.order(); ++t) {
      out.emplace_back(dim, map, t);
    }
  } while (std::next_permutation(map.begin(), map.end()));
  return out;
}

std::uint32_t CubeAutomorphism::permute_mask(std::uint32_t mask) const {
  std::uint32_t out = 0;
  while (mask != 0) {
    const int i = std::countr_zero(mask);
    out |= std::uint32_t{1} << map_[i];
    mask &= mask - 1;
  }
  return out;
}

CubeAutomorphism CubeAutomorphism::inverse() const {
  // x = P^{-1}(y XOR t) = P^{-1}(y) XOR P^{-1}(t)
  std::vector<int> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = static_cast<int>(i);
  CubeAutomorphism result(dim_, std::move(inv), 0);
  result.translation_ = result.permute_mask(translation_);
  return result;
}

}  // namespace cubeshot
