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
#include <bit>
#include <numeric>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "cubeshot/errors.hpp"
#include "oracles.hpp"

namespace cubeshot {
namespace {

// Minimum number of disagreeing offsets over all coordinate permutations.
int brute_ball_distance(const Colouring& chi, Vertex u, const Colouring& lambda,
                        Vertex v, int r) {
  const int n = chi.dim().n();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int best = 1 << 30;
  do {
    int d = 0;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      if (std::popcount(s) > r) continue;
      if (chi[Vertex{u.index ^ s}] != lambda[Vertex{v.index ^ oracle::permute_bits(s, perm)}]) ++d;
    }
    best = std::min(best, d);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST(DistributionTest, Validation) {
  EXPECT_THROW(ColourDistribution::two_point(1.5), DomainError);
  EXPECT_THROW(ColourDistribution::uniform(0), DomainError);
  EXPECT_THROW(ColourDistribution::explicit_masses({0.5, 0.4}), DomainError);
  EXPECT_EQ(ColourDistribution::explicit_masses({0.25, 0.75}).palette_size(), 2u);
}

TEST(DistributionTest, TwoPointFrequencyMatchesP) {
  const auto chi = sample_colouring(CubeDim(16), ColourDistribution::two_point(0.3), Seed{7});
  const auto counts = chi.counts();
  const double zero_rate = static_cast<double>(counts[0]) / 65536.0;
  EXPECT_NEAR(zero_rate, 0.3, 0.01);
}

TEST(SamplingTest, DeterministicPerSeed) {
  const auto dist = ColourDistribution::uniform(5);
  const auto a = sample_colouring(CubeDim(10), dist, Seed{42});
  const auto b = sample_colouring(CubeDim(10), dist, Seed{42});
  const auto c = sample_colouring(CubeDim(10), dist, Seed{43});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (Colour x : a.colours()) EXPECT_LT(x, 5u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
}

TEST(ColouringTest, RejectsBadInput) {
  EXPECT_THROW(Colouring(CubeDim(2), {0, 1, 0}, 2), DomainError);
  EXPECT_THROW(Colouring(CubeDim(2), {0, 1, 2, 0}, 2), DomainError);
}

TEST(ColouringTest, RoundTripsThroughText) {
  const auto chi = sample_colouring(CubeDim(6), ColourDistribution::uniform(4), Seed{3});
  std::stringstream s;
  write_colouring(s, chi);
  EXPECT_EQ(read_colouring(s), chi);
  std::istringstream bad("cube 2 2\n0 1 0\n");
  EXPECT_THROW(read_colouring(bad), DomainError);
  std::istringstream header("cub 2 2\n0 1 0 1\n");
  EXPECT_THROW(read_colouring(header), DomainError);
}

TEST(TransportTest, MovesColoursAlongTheMap) {
  const CubeDim dim(5);
  const auto chi = sample_colouring(dim, ColourDistribution::uniform(3), Seed{9});
  const CubeAutomorphism sigma(dim, {1, 2, 0, 4, 3}, 0b01101);
  const auto moved = transport(chi, sigma);
  for (std::uint32_t x = 0; x < 32; ++x) EXPECT_EQ(moved[sigma(Vertex{x})], chi.at(x));
  std::vector<std::uint32_t> table(32);
  for (std::uint32_t x = 0; x < 32; ++x) table[x] = sigma(Vertex{x}).index;
  EXPECT_EQ(transport(chi, table), moved);
  table[0] = table[1];
  EXPECT_THROW(transport(chi, table), DomainError);
  EXPECT_EQ(raw_distance(chi, chi), 0u);
}

TEST(BallDistanceTest, RadiusOneMatchesBruteForce) {
  const CubeDim dim(5);
  const auto chi = sample_colouring(dim, ColourDistribution::uniform(3), Seed{11});
  const auto lambda = sample_colouring(dim, ColourDistribution::uniform(3), Seed{12});
  for (std::uint32_t u = 0; u < 32; u += 3) {
    for (std::uint32_t v = 0; v < 32; v += 5) {
      EXPECT_EQ(ball_distance_r1(chi, Vertex{u}, lambda, Vertex{v}),
                brute_ball_distance(chi, Vertex{u}, lambda, Vertex{v}, 1));
    }
  }
}

TEST(BallDistanceTest, RadiusTwoExactMatchesBruteForceAndBoundsBelow) {
  const CubeDim dim(5);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto chi = sample_colouring(dim, ColourDistribution::two_point(0.5), Seed{seed});
    for (std::uint32_t u = 0; u < 32; u += 7) {
      for (std::uint32_t v = 1; v < 32; v += 6) {
        const int exact = ball_distance_r2(chi, Vertex{u}, Vertex{v}, DistanceMode::kExact);
        EXPECT_EQ(exact, brute_ball_distance(chi, Vertex{u}, chi, Vertex{v}, 2));
        EXPECT_LE(ball_distance_r2(chi, Vertex{u}, Vertex{v}, DistanceMode::kLowerBound), exact);
      }
    }
  }
  const auto big = Colouring::constant(CubeDim(9), 0, 2);
  EXPECT_THROW(ball_distance_r2(big, Vertex{0}, Vertex{1}, DistanceMode::kExact), BudgetError);
}

TEST(CoarsenTest, MapsColoursToSides) {
  const CubeDim dim(3);
  const Colouring chi(dim, {0, 1, 2, 3, 0, 1, 2, 3}, 4);
  const std::vector<int> part = {0, 1, 1, 0};
  const auto c = coarsen(chi, part);
  EXPECT_EQ(c.palette_size(), 2u);
  const std::vector<Colour> expect = {0, 1, 1, 0, 0, 1, 1, 0};
  EXPECT_TRUE(std::equal(expect.begin(), expect.end(), c.colours().begin()));
  const std::vector<int> bad = {0, 1};
  EXPECT_THROW(coarsen(chi, bad), DomainError);
}

}  // namespace
}  // namespace cubeshot
