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

#include "cubeshot/colouring.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "cubeshot/errors.hpp"

namespace cubeshot {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void require_same_dim(const Colouring& a, const Colouring& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("colourings have different dimensions: " +
                      std::to_string(a.dim().n()) + " vs " +
                      std::to_string(b.dim().n()));
  }
}

}  // namespace

ColourDistribution ColourDistribution::two_point(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError("two-point probability must lie in (0, 1]");
  }
  ColourDistribution d;
  d.kind_ = Kind::kTwoPoint;
  d.palette_ = 2;
  d.p_ = p;
  d.masses_ = {p, 1.0 - p};
  d.cumulative_ = {p, 1.0};
  return d;
}

ColourDistribution ColourDistribution::uniform(std::uint32_t q) {
  if (q == 0) throw DomainError("uniform palette must be nonempty");
  ColourDistribution d;
  d.kind_ = Kind::kUniform;
  d.palette_ = q;
  d.masses_.assign(q, 1.0 / q);
  return d;
}

ColourDistribution ColourDistribution::explicit_masses(
    std::vector<double> masses) {
  if (masses.empty()) throw DomainError("explicit distribution is empty");
  double total = 0.0;
  for (double m : masses) {
    if (!(m >= 0.0)) throw DomainError("colour masses must be nonnegative");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("colour masses must sum to 1");
  }
  ColourDistribution d;
  d.kind_ = Kind::kExplicit;
  d.palette_ = static_cast<std::uint32_t>(masses.size());
  d.cumulative_.resize(masses.size());
  std::partial_sum(masses.begin(), masses.end(), d.cumulative_.begin());
  d.masses_ = std::move(masses);
  return d;
}

Colour ColourDistribution::draw(std::uint64_t bits) const {
  switch (kind_) {
    case Kind::kTwoPoint:
      return unit_interval(bits) < p_ ? 0 : 1;
    case Kind::kUniform:
      return static_cast<Colour>(
          (static_cast<unsigned __int128>(bits) * palette_) >> 64);
    case Kind::kExplicit: {
      const double u = unit_interval(bits);
      const auto it =
          std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      auto c = static_cast<Colour>(it - cumulative_.begin());
      // Rounding can leave u above the last partial sum.
      if (c >= palette_) c = palette_ - 1;
      while (c > 0 && masses_[c] == 0.0) --c;
      return c;
    }
  }
  return 0;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(master + (trial + 1) * 0x9E3779B97F4A7C15ull);
}

Colouring::Colouring(CubeDim dim, std::vector<Colour> colours,
                     std::uint32_t palette)
    : dim_(dim), palette_(palette), colours_(std::move(colours)) {
  if (palette_ == 0) throw DomainError("palette must be nonempty");
  if (colours_.size() != dim_.order()) {
    throw DomainError("colouring has " + std::to_string(colours_.size()) +
                      " entries, expected 2^" + std::to_string(dim_.n()));
  }
  for (Colour c : colours_) {
    if (c >= palette_) {
      throw DomainError("colour " + std::to_string(c) +
                        " outside palette of size " + std::to_string(palette_));
    }
  }
}

Colouring Colouring::constant(CubeDim dim, Colour c, std::uint32_t palette) {
  return Colouring(dim, std::vector<Colour>(dim.order(), c), palette);
}

std::vector<std::uint64_t> Colouring::counts() const {
  std::vector<std::uint64_t> out(palette_, 0);
  for (Colour c : colours_) ++out[c];
  return out;
}

Colouring sample_colouring(CubeDim dim, const ColourDistribution& dist,
                           Seed seed) {
  std::mt19937_64 gen(seed.master);
  std::vector<Colour> colours(dim.order());
  for (auto& c : colours) c = dist.draw(gen());
  return Colouring(dim, std::move(colours), dist.palette_size());
}

Colouring transport(const Colouring& chi, const CubeAutomorphism& sigma) {
  if (chi.dim() != sigma.dim()) throw DomainError("dimension mismatch");
  std::vector<Colour> out(chi.dim().order());
  for (std::uint32_t x = 0; x < chi.dim().order(); ++x) {
    out[sigma(Vertex{x}).index] = chi.at(x);
  }
  return Colouring(chi.dim(), std::move(out), chi.palette_size());
}

Colouring transport(const Colouring& chi, std::span<const std::uint32_t> f) {
  if (f.size() != chi.dim().order()) {
    throw DomainError("vertex map has the wrong length");
  }
  std::vector<Colour> out(chi.dim().order());
  std::vector<bool> hit(chi.dim().order(), false);
  for (std::uint32_t x = 0; x < chi.dim().order(); ++x) {
    if (f[x] >= chi.dim().order() || hit[f[x]]) {
      throw DomainError("vertex map is not a bijection");
    }
    hit[f[x]] = true;
    out[f[x]] = chi.at(x);
  }
  return Colouring(chi.dim(), std::move(out), chi.palette_size());
}

std::uint64_t raw_distance(const Colouring& chi, const Colouring& lambda) {
  require_same_dim(chi, lambda);
  std::uint64_t d = 0;
  for (std::uint32_t x = 0; x < chi.dim().order(); ++x) {
    d += chi.at(x) != lambda.at(x);
  }
  return d;
}

int ball_distance_r1(const Colouring& chi, Vertex u, const Colouring& lambda,
                     Vertex v) {
  require_same_dim(chi, lambda);
  const CubeDim dim = chi.dim();
  dim.check(u);
  dim.check(v);
  const int n = dim.n();
  std::vector<Colour> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = chi[flip(u, i)];
    b[i] = lambda[flip(v, i)];
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  // Size of the multiset intersection.
  int common = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return (chi[u] != lambda[v] ? 1 : 0) + n - common;
}

namespace {

struct Ball2Arrays {
  Colour centre;
  std::vector<Colour> single;  // n
  std::vector<Colour> pair;    // n*n, symmetric, diagonal unused
};

Ball2Arrays ball2_arrays(const Colouring& chi, Vertex v) {
  const int n = chi.dim().n();
  Ball2Arrays a{chi[v], std::vector<Colour>(n), std::vector<Colour>(n * n, 0)};
  for (int i = 0; i < n; ++i) {
    a.single[i] = chi[flip(v, i)];
    for (int j = i + 1; j < n; ++j) {
      const Colour c = chi[flip(flip(v, i), j)];
      a.pair[i * n + j] = c;
      a.pair[j * n + i] = c;
    }
  }
  return a;
}

class Ball2Matcher {
 public:
  Ball2Matcher(const Ball2Arrays& a, const Ball2Arrays& b, int n)
      : a_(a), b_(b), n_(n), perm_(n, -1), used_(n, false) {}

  int solve(int base) {
    best_ = std::numeric_limits<int>::max();
    search(0, base);
    return best_;
  }

 private:
  void search(int i, int cost) {
    if (cost >= best_) return;
    if (i == n_) {
      best_ = cost;
      return;
    }
    for (int k = 0; k < n_; ++k) {
      if (used_[k]) continue;
      int c = cost + (a_.single[i] != b_.single[k] ? 1 : 0);
      for (int j = 0; j < i && c < best_; ++j) {
        c += a_.pair[i * n_ + j] != b_.pair[k * n_ + perm_[j]] ? 1 : 0;
      }
      if (c >= best_) continue;
      used_[k] = true;
      perm_[i] = k;
      search(i + 1, c);
      used_[k] = false;
    }
  }

  const Ball2Arrays& a_;
  const Ball2Arrays& b_;
  int n_;
  std::vector<int> perm_;
  std::vector<bool> used_;
  int best_ = 0;
};

int multiset_mismatch(std::span<const std::uint32_t> a,
                      std::span<const std::uint32_t> b, int total) {
  int common = 0;
  const std::size_t q = std::max(a.size(), b.size());
  for (std::size_t c = 0; c < q; ++c) {
    const std::uint32_t x = c < a.size() ? a[c] : 0;
    const std::uint32_t y = c < b.size() ? b[c] : 0;
    common += static_cast<int>(std::min(x, y));
  }
  return total - common;
}

}  // namespace

Ball2Profile ball2_profile(const Colouring& chi, Vertex v) {
  chi.dim().check(v);
  const int n = chi.dim().n();
  const std::uint32_t q = chi.palette_size();
  Ball2Profile p;
  p.n = n;
  p.palette = q;
  p.centre = chi[v];
  p.shell1_counts.assign(q, 0);
  p.shell2_counts.assign(q, 0);
  p.pair_counts.assign(static_cast<std::size_t>(n) * q, 0);
  for (int i = 0; i < n; ++i) {
    ++p.shell1_counts[chi[flip(v, i)]];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Colour c = chi[flip(flip(v, i), j)];
      ++p.pair_counts[static_cast<std::size_t>(i) * q + c];
      if (j > i) ++p.shell2_counts[c];
    }
  }
  std::vector<std::vector<std::uint32_t>> rows(n);
  for (int i = 0; i < n; ++i) {
    rows[i].assign(p.pair_counts.begin() + static_cast<std::ptrdiff_t>(i) * q,
                   p.pair_counts.begin() + static_cast<std::ptrdiff_t>(i + 1) * q);
  }
  std::sort(rows.begin(), rows.end());
  for (int i = 0; i < n; ++i) {
    std::copy(rows[i].begin(), rows[i].end(),
              p.pair_counts.begin() + static_cast<std::ptrdiff_t>(i) * q);
  }
  return p;
}

int ball2_lower_bound(const Ball2Profile& a, const Ball2Profile& b) {
  if (a.n != b.n) throw DomainError("profiles of different dimensions");
  const int n = a.n;
  const int pairs = n * (n - 1) / 2;
  int bound = a.centre != b.centre ? 1 : 0;
  bound += multiset_mismatch(a.shell1_counts, b.shell1_counts, n);
  const int shell2 = multiset_mismatch(a.shell2_counts, b.shell2_counts, pairs);

  // Each coordinate i sees n-1 pair offsets; an isomorphism sending i to k
  // mismatches at least row_cost(i, k) of them, and every pair is seen from
  // both of its coordinates.
  const std::uint32_t qa = a.palette;
  const std::uint32_t qb = b.palette;
  auto row_cost = [&](int i, int k) {
    std::span<const std::uint32_t> ra(a.pair_counts.data() + i * qa, qa);
    std::span<const std::uint32_t> rb(b.pair_counts.data() + k * qb, qb);
    return multiset_mismatch(ra, rb, n - 1);
  };
  int assignment = 0;
  if (qa <= 2 && qb <= 2) {
    // Rows are sorted, and with two colours row_cost is |a_i - b_k|, for
    // which the sorted matching is optimal.
    for (int i = 0; i < n; ++i) assignment += row_cost(i, i);
  } else {
    int rows = 0;
    int cols = 0;
    for (int i = 0; i < n; ++i) {
      int best_row = std::numeric_limits<int>::max();
      int best_col = std::numeric_limits<int>::max();
      for (int k = 0; k < n; ++k) {
        best_row = std::min(best_row, row_cost(i, k));
        best_col = std::min(best_col, row_cost(k, i));
      }
      rows += best_row;
      cols += best_col;
    }
    assignment = std::max(rows, cols);
  }
  return bound + std::max(shell2, (assignment + 1) / 2);
}

int ball_distance_r2(const Colouring& chi, Vertex u, const Colouring& lambda,
                     Vertex v, DistanceMode mode) {
  require_same_dim(chi, lambda);
  chi.dim().check(u);
  lambda.dim().check(v);
  const int n = chi.dim().n();
  if (mode == DistanceMode::kLowerBound) {
    return ball2_lower_bound(ball2_profile(chi, u), ball2_profile(lambda, v));
  }
  if (n > 8) {
    throw BudgetError("exact 2-ball distance is limited to n <= 8, got n=" +
                      std::to_string(n));
  }
  const Ball2Arrays a = ball2_arrays(chi, u);
  const Ball2Arrays b = ball2_arrays(lambda, v);
  Ball2Matcher matcher(a, b, n);
  return matcher.solve(a.centre != b.centre ? 1 : 0);
}

Colouring coarsen(const Colouring& chi, std::span<const int> partition) {
  if (partition.size() != chi.palette_size()) {
    throw DomainError("partition covers " + std::to_string(partition.size()) +
                      " colours but the palette has " +
                      std::to_string(chi.palette_size()));
  }
  for (int side : partition) {
    if (side != 0 && side != 1) {
      throw DomainError("partition sides must be 0 or 1");
    }
  }
  std::vector<Colour> out(chi.dim().order());
  for (std::uint32_t x = 0; x < chi.dim().order(); ++x) {
    out[x] = static_cast<Colour>(partition[chi.at(x)]);
  }
  return Colouring(chi.dim(), std::move(out), 2);
}

void write_colouring(std::ostream& out, const Colouring& chi) {
  out << "cube " << chi.dim().n() << ' ' << chi.palette_size() << '\n';
  const auto colours = chi.colours();
  for (std::size_t i = 0; i < colours.size(); ++i) {
    if (i) out << ' ';
    out << colours[i];
  }
  out << '\n';
}

Colouring read_colouring(std::istream& in) {
  std::string tag;
  long long n = 0;
  long long q = 0;
  if (!(in >> tag >> n >> q) || tag != "cube") {
    throw DomainError("colouring file must start with 'cube <n> <q>'");
  }
  if (n < 1 || n > CubeDim::kMax || q < 1 ||
      q > std::numeric_limits<std::uint32_t>::max()) {
    throw DomainError("colouring header out of range");
  }
  const CubeDim dim(static_cast<int>(n));
  std::vector<Colour> colours(dim.order());
  for (auto& c : colours) {
    long long value = 0;
    if (!(in >> value)) throw DomainError("colouring file is truncated");
    if (value < 0 || value >= q) {
      throw DomainError("colour id " + std::to_string(value) +
                        " outside the palette");
    }
    c = static_cast<Colour>(value);
  }
  std::string extra;
  if (in >> extra) throw DomainError("trailing data after colouring");
  return Colouring(dim, std::move(colours), static_cast<std::uint32_t>(q));
}

}  // namespace cubeshot
