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

#include "cubeshot/shotgun.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "cubeshot/errors.hpp"
#include "oracles.hpp"

namespace cubeshot {
namespace {

void expect_equivalent_witness(const Colouring& chi, const Colouring& lambda,
                               const EquivalenceResult& res) {
  ASSERT_EQ(res.verdict, Verdict::kEquivalent) << res.reason;
  ASSERT_TRUE(res.witness.has_value());
  for (std::uint32_t x = 0; x < chi.dim().order(); ++x) {
    ASSERT_EQ(lambda[(*res.witness)(Vertex{x})], chi.at(x));
  }
}

TEST(ReconstructTest, RadiusThreeRebuildsRandomColourings) {
  for (int n : {5, 6, 7}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto chi = sample_colouring(CubeDim(n), ColourDistribution::two_point(0.5), Seed{seed});
      const auto res = reconstruct_r3(extract_multiset(chi, 3));
      ASSERT_EQ(res.status, ReconstructionStatus::kSuccess) << res.message;
      ASSERT_TRUE(res.colouring.has_value());
      EXPECT_EQ(extract_multiset(*res.colouring, 3), extract_multiset(chi, 3));
      expect_equivalent_witness(chi, *res.colouring,
                                verify_equivalence(chi, *res.colouring, EquivalenceMode::kExact));
      EXPECT_FALSE(res.log.empty());
    }
  }
}

TEST(ReconstructTest, DegenerateColourings) {
  const CubeDim dim(6);
  const auto constant = Colouring::constant(dim, 1, 3);
  auto res = reconstruct_r3(extract_multiset(constant, 3));
  ASSERT_EQ(res.status, ReconstructionStatus::kSuccess);
  EXPECT_EQ(*res.colouring, constant);

  std::vector<Colour> one(64, 0);
  one[37] = 1;
  const Colouring single(dim, one, 2);
  res = reconstruct_r3(extract_multiset(single, 3));
  ASSERT_EQ(res.status, ReconstructionStatus::kSuccess) << res.message;
  expect_equivalent_witness(single, *res.colouring,
                            verify_equivalence(single, *res.colouring, EquivalenceMode::kExact));
}

TEST(ReconstructTest, RadiusTwoRebuildsRandomColourings) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto chi = sample_colouring(CubeDim(6), ColourDistribution::uniform(2), Seed{seed});
    const auto res = reconstruct_r2(extract_multiset(chi, 2));
    ASSERT_EQ(res.status, ReconstructionStatus::kSuccess) << res.message;
    EXPECT_EQ(extract_multiset(*res.colouring, 2), extract_multiset(chi, 2));
  }
}

TEST(ReconstructTest, RejectsWrongRadiusAndReportsBudget) {
  const auto chi = sample_colouring(CubeDim(6), ColourDistribution::uniform(2), Seed{1});
  EXPECT_THROW(reconstruct_r3(extract_multiset(chi, 2)), DomainError);
  EXPECT_THROW(reconstruct_r2(extract_multiset(chi, 3)), DomainError);
  const auto res = reconstruct_r2(extract_multiset(chi, 2), 1);
  EXPECT_EQ(res.status, ReconstructionStatus::kFailed);
  EXPECT_FALSE(res.colouring.has_value());
}

TEST(ReconstructTest, LogHasOneLinePerRecord) {
  const auto chi = sample_colouring(CubeDim(5), ColourDistribution::uniform(2), Seed{2});
  const auto res = reconstruct_r3(extract_multiset(chi, 3));
  std::ostringstream out;
  write_log(out, res);
  std::size_t lines = 0;
  for (char c : out.str()) lines += c == '\n';
  EXPECT_GE(lines, res.log.size());
  EXPECT_EQ(to_string(ReconstructionStatus::kAmbiguous), "ambiguous");
}

TEST(EquivalenceTest, ExactAndFingerprintFindWitnesses) {
  for (int n : {4, 6, 8, 10}) {
    const CubeDim dim(n);
    const auto chi = sample_colouring(dim, ColourDistribution::uniform(2), Seed{static_cast<std::uint64_t>(n)});
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = (i + 1) % n;
    const CubeAutomorphism sigma(dim, perm, 0x2Du & dim.full_mask());
    const auto lambda = transport(chi, sigma);
    if (n <= 8) {
      expect_equivalent_witness(chi, lambda, verify_equivalence(chi, lambda, EquivalenceMode::kExact));
    } else {
      EXPECT_THROW(verify_equivalence(chi, lambda, EquivalenceMode::kExact), BudgetError);
    }
    expect_equivalent_witness(chi, lambda, verify_equivalence(chi, lambda, EquivalenceMode::kFingerprint));
  }
}

TEST(EquivalenceTest, DetectsInequivalence) {
  const CubeDim dim(7);
  const auto chi = sample_colouring(dim, ColourDistribution::uniform(2), Seed{3});
  std::vector<Colour> c(chi.colours().begin(), chi.colours().end());
  std::swap(c[0], c[c[0] == c[1] ? 127 : 1]);
  const Colouring lambda(dim, c, 2);
  for (auto mode : {EquivalenceMode::kExact, EquivalenceMode::kFingerprint}) {
    const auto res = verify_equivalence(chi, lambda, mode);
    EXPECT_NE(res.verdict, Verdict::kEquivalent);
    EXPECT_FALSE(res.witness.has_value());
  }
  const auto other = Colouring::constant(dim, 0, 2);
  EXPECT_EQ(verify_equivalence(chi, other, EquivalenceMode::kFingerprint).verdict, Verdict::kInequivalent);
}

TEST(EquivalenceTest, AgreesWithBruteForceAtDimThree) {
  const auto autos = oracle::all_automorphisms(3);
  for (std::uint32_t a = 0; a < 256; a += 5) {
    for (std::uint32_t b = 0; b < 256; b += 3) {
      const auto chi = atlas_colouring(3, a);
      const auto lambda = atlas_colouring(3, b);
      const std::vector<std::uint32_t> ca(chi.colours().begin(), chi.colours().end());
      const std::vector<std::uint32_t> cb(lambda.colours().begin(), lambda.colours().end());
      const bool expect = oracle::equivalent_brute(ca, cb, autos);
      const auto res = verify_equivalence(chi, lambda, EquivalenceMode::kExact);
      EXPECT_EQ(res.verdict == Verdict::kEquivalent, expect) << a << " " << b;
      EXPECT_EQ(verify_equivalence(chi, lambda, EquivalenceMode::kFingerprint).verdict == Verdict::kEquivalent, expect);
    }
  }
}

std::vector<std::uint32_t> bits_of(std::uint32_t bits) {
  std::vector<std::uint32_t> out(8);
  for (int v = 0; v < 8; ++v) out[v] = (bits >> v) & 1u;
  return out;
}

TEST(AtlasTest, DimThreeRadiusOneMatchesBruteForce) {
  const auto atlas = indistinguishability_search(3, 1);
  const auto autos = oracle::all_automorphisms(3);
  EXPECT_EQ(atlas.colourings, 256u);
  // Brute-force key: sorted (centre, #ones among neighbours) per vertex.
  std::map<std::vector<int>, std::vector<std::uint32_t>> by_key;
  for (std::uint32_t bits = 0; bits < 256; ++bits) {
    std::vector<int> key;
    for (int v = 0; v < 8; ++v) {
      int ones = 0;
      for (int i = 0; i < 3; ++i) ones += (bits >> (v ^ (1 << i))) & 1u;
      key.push_back(static_cast<int>((bits >> v) & 1u) * 8 + ones);
    }
    std::sort(key.begin(), key.end());
    by_key[key].push_back(bits);
  }
  std::uint64_t distinguishable = 0;
  std::size_t ambiguous_groups = 0;
  for (const auto& [key, members] : by_key) {
    std::vector<std::uint32_t> classes;
    for (auto m : members) {
      bool found = false;
      for (auto c : classes) {
        if (oracle::equivalent_brute(bits_of(m), bits_of(c), autos)) {
          found = true;
          break;
        }
      }
      if (!found) classes.push_back(m);
    }
    if (classes.size() == 1) distinguishable += members.size();
    else ++ambiguous_groups;
  }
  EXPECT_EQ(atlas.distinguishable, distinguishable);
  EXPECT_EQ(atlas.groups.size(), by_key.size());
  std::size_t atlas_ambiguous = 0;
  for (const auto& group : atlas.groups) atlas_ambiguous += group.size() > 1;
  EXPECT_EQ(atlas_ambiguous, ambiguous_groups);
  for (const auto& [a, b] : witness_pairs(atlas)) {
    EXPECT_LT(a, b);
    EXPECT_EQ(extract_multiset(atlas_colouring(3, a), 1), extract_multiset(atlas_colouring(3, b), 1));
    EXPECT_NE(verify_equivalence(atlas_colouring(3, a), atlas_colouring(3, b), EquivalenceMode::kExact).verdict,
              Verdict::kEquivalent);
  }
  EXPECT_THROW(indistinguishability_search(5, 1), BudgetError);
}

TEST(AtlasTest, TwoPointsAtDistanceNAndNMinusOneAreIndistinguishable) {
  const auto atlas = indistinguishability_search(4, 1);
  const std::uint32_t far = 0xFFFFu & ~1u & ~(1u << 15);
  const std::uint32_t near = 0xFFFFu & ~1u & ~(1u << 7);
  const auto pairs = witness_pairs(atlas);
  EXPECT_NE(std::find(pairs.begin(), pairs.end(), std::make_pair(far, near)), pairs.end());
  EXPECT_LT(atlas.distinguishable_fraction(), 1.0);
}

TEST(AtlasTest, WholeCubeBallsDistinguishEverything) {
  const auto atlas = indistinguishability_search(3, 3);
  EXPECT_EQ(atlas.distinguishable, 256u);
  EXPECT_TRUE(witness_pairs(atlas).empty());
}

TEST(ReconstructTest, RadiusTwoConstantAndColourSwap) {
  const CubeDim dim(5);
  const auto zeros = Colouring::constant(dim, 0, 2);
  auto res = reconstruct_r2(extract_multiset(zeros, 2));
  ASSERT_EQ(res.status, ReconstructionStatus::kSuccess);
  EXPECT_EQ(*res.colouring, zeros);
  const auto chi = sample_colouring(dim, ColourDistribution::two_point(0.5), Seed{8});
  std::vector<Colour> swapped(chi.colours().begin(), chi.colours().end());
  for (auto& c : swapped) c ^= 1u;
  const Colouring flip(dim, swapped, 2);
  res = reconstruct_r2(extract_multiset(flip, 2));
  ASSERT_EQ(res.status, ReconstructionStatus::kSuccess);
  EXPECT_EQ(verify_equivalence(flip, *res.colouring, EquivalenceMode::kExact).verdict, Verdict::kEquivalent);
  const bool same_ms = extract_multiset(chi, 2) == extract_multiset(flip, 2);
  const bool equiv = verify_equivalence(chi, flip, EquivalenceMode::kExact).verdict == Verdict::kEquivalent;
  EXPECT_EQ(same_ms, equiv);
}

TEST(EquivalenceTest, ColourCountsDiffer) {
  const CubeDim dim(9);
  const auto a = Colouring::constant(dim, 0, 2);
  std::vector<Colour> c(512, 0);
  c[3] = 1;
  const auto res = verify_equivalence(a, Colouring(dim, c, 2), EquivalenceMode::kFingerprint);
  EXPECT_EQ(res.verdict, Verdict::kInequivalent);
}

}  // namespace
}  // namespace cubeshot
