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

#ifndef CUBESHOT_COLOURING_HPP_
#define CUBESHOT_COLOURING_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cubeshot/hypercube.hpp"

namespace cubeshot {

using Colour = std::uint32_t;

// Per-vertex colour law. two_point(p) gives colour 0 with probability p and
// colour 1 with probability 1-p.
class ColourDistribution {
 public:
  enum class Kind { kTwoPoint, kUniform, kExplicit };

  static ColourDistribution two_point(double p);
  static ColourDistribution uniform(std::uint32_t q);
  // Masses must be nonnegative and sum to 1 within 1e-12.
  static ColourDistribution explicit_masses(std::vector<double> masses);

  Kind kind() const { return kind_; }
  std::uint32_t palette_size() const { return palette_; }
  // Probability of colour 0 for two_point; 0 otherwise.
  double p() const { return p_; }
  std::span<const double> masses() const { return masses_; }

  // Maps one 64-bit word of generator output to a colour.
  Colour draw(std::uint64_t bits) const;

 private:
  ColourDistribution() = default;

  Kind kind_ = Kind::kUniform;
  std::uint32_t palette_ = 1;
  double p_ = 0.0;
  std::vector<double> masses_;
  std::vector<double> cumulative_;
};

struct Seed {
  std::uint64_t master = 0;
};

// Sub-seed for trial i: splitmix64(master + (i + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial);

class Colouring {
 public:
  // Throws DomainError if the length is not 2^n or a colour is >= palette.
  Colouring(CubeDim dim, std::vector<Colour> colours, std::uint32_t palette);

  static Colouring constant(CubeDim dim, Colour c, std::uint32_t palette);

  CubeDim dim() const { return dim_; }
  std::uint32_t palette_size() const { return palette_; }
  Colour operator[](Vertex v) const { return colours_[v.index]; }
  Colour at(std::uint32_t index) const { return colours_[index]; }
  std::span<const Colour> colours() const { return colours_; }
  // counts()[c] = number of vertices with colour c.
  std::vector<std::uint64_t> counts() const;

  friend bool operator==(const Colouring&, const Colouring&) = default;

 private:
  CubeDim dim_;
  std::uint32_t palette_;
  std::vector<Colour> colours_;
};

// 2^n independent draws from a std::mt19937_64 seeded with seed.master,
// in vertex index order.
Colouring sample_colouring(CubeDim dim, const ColourDistribution& dist,
                           Seed seed);

// chi o sigma^{-1}: the colouring carried along the automorphism.
Colouring transport(const Colouring& chi, const CubeAutomorphism& sigma);

// chi_f(v) = chi(f^{-1}(v)) for an arbitrary vertex permutation f.
Colouring transport(const Colouring& chi, std::span<const std::uint32_t> f);

// D(chi, lambda): number of vertices where the colourings differ.
std::uint64_t raw_distance(const Colouring& chi, const Colouring& lambda);

// d between the coloured 1-balls of u in chi and v in lambda, minimised over
// centre-fixing isomorphisms: [centres differ] + n - sum_c min(#c around u,
// #c around v).
int ball_distance_r1(const Colouring& chi, Vertex u, const Colouring& lambda,
                     Vertex v);
inline int ball_distance_r1(const Colouring& chi, Vertex u, Vertex v) {
  return ball_distance_r1(chi, u, chi, v);
}

enum class DistanceMode { kExact, kLowerBound };

// d between coloured 2-balls. Exact mode minimises over all n! coordinate
// permutations by branch and bound and requires n <= 8 (BudgetError
// otherwise). Lower-bound mode never exceeds the exact value.
int ball_distance_r2(const Colouring& chi, Vertex u, const Colouring& lambda,
                     Vertex v, DistanceMode mode);
inline int ball_distance_r2(const Colouring& chi, Vertex u, Vertex v,
                            DistanceMode mode) {
  return ball_distance_r2(chi, u, chi, v, mode);
}

// Permutation-invariant summary of a coloured 2-ball, sufficient for the
// lower bound used by ball_distance_r2 and by the all-pairs experiments.
struct Ball2Profile {
  Colour centre = 0;
  std::vector<std::uint32_t> shell1_counts;  // per colour
  std::vector<std::uint32_t> shell2_counts;  // per colour
  // pair_counts[i * q + c]: #j != i with colour(e_i + e_j) == c, rows sorted
  // lexicographically so the profile does not depend on the coordinate frame.
  std::vector<std::uint32_t> pair_counts;
  int n = 0;
  std::uint32_t palette = 0;
};

Ball2Profile ball2_profile(const Colouring& chi, Vertex v);
int ball2_lower_bound(const Ball2Profile& a, const Ball2Profile& b);

// Two-colour image under partition[c] in {0,1}. The partition must cover the
// whole palette; throws DomainError otherwise.
Colouring coarsen(const Colouring& chi, std::span<const int> partition);

// Text format: "cube <n> <q>" then 2^n colour ids in index order.
void write_colouring(std::ostream& out, const Colouring& chi);
Colouring read_colouring(std::istream& in);

}  // namespace cubeshot

#endif  // CUBESHOT_COLOURING_HPP_
