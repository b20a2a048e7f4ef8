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

// Reconstruction of colourings from ball multisets, equivalence testing up
// to cube automorphism, and the exhaustive indistinguishability atlas.

#ifndef CUBESHOT_SHOTGUN_HPP_
#define CUBESHOT_SHOTGUN_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubeshot/ball_canon.hpp"
#include "cubeshot/colouring.hpp"
#include "cubeshot/hypercube.hpp"

namespace cubeshot {

enum class ReconstructionStatus { kSuccess, kAmbiguous, kFailed };

std::string_view to_string(ReconstructionStatus status);

struct LogRecord {
  std::uint64_t step = 0;
  Vertex vertex;
  BallSignature signature;
  std::uint64_t alternatives = 0;
};

struct ReconstructionResult {
  ReconstructionStatus status = ReconstructionStatus::kFailed;
  std::optional<Colouring> colouring;
  std::uint64_t placements_tried = 0;
  std::vector<LogRecord> log;
  // Set when two distinct 3-ball types share a centre 2-ball.
  std::optional<std::pair<BallSignature, BallSignature>> colliding;
  std::string message;
};

inline constexpr std::uint64_t kDefaultReconstructionBudget = 50'000'000;

// Shell-by-shell assembly driven by the 2-ball inside each 3-ball. When
// 2-balls are not unique, or an extension is not forced, the backtracking
// assembler is run on the 3-balls instead; if that also fails the result is
// ambiguous and names a colliding pair. Needs n <= 12.
ReconstructionResult reconstruct_r3(
    const BallMultiset& ms,
    std::uint64_t budget = kDefaultReconstructionBudget);

// Backtracking assembler over 2-balls: most-constrained vertex first,
// candidate balls by remaining count ascending. Needs n <= 12.
ReconstructionResult reconstruct_r2(
    const BallMultiset& ms,
    std::uint64_t budget = kDefaultReconstructionBudget);

// One "step <i> place <vertex> sig <hex> alternatives <k>" line per record.
void write_log(std::ostream& out, const ReconstructionResult& result);

enum class EquivalenceMode { kExact, kFingerprint };
enum class Verdict { kEquivalent, kInequivalent, kUnknown };

std::string_view to_string(Verdict verdict);

struct EquivalenceResult {
  Verdict verdict = Verdict::kUnknown;
  // When equivalent: sigma with lambda(sigma(x)) == chi(x) for all x.
  std::optional<CubeAutomorphism> witness;
  std::string reason;
};

inline constexpr std::uint64_t kDefaultEquivalenceBudget = 100'000'000;

// Exact mode decides equivalence for n <= 8 (BudgetError above that).
// Fingerprint mode compares colour counts and the r = 1, 2 ball multisets,
// then runs a deterministic anchored search from the rarest 2-ball; it
// answers unknown only when the node budget runs out.
EquivalenceResult verify_equivalence(
    const Colouring& chi, const Colouring& lambda, EquivalenceMode mode,
    std::uint64_t budget = kDefaultEquivalenceBudget);

// All 2-colourings of Q_n (n <= 4) grouped by r-ball multiset, each group
// split into equivalence classes. Colourings are bitmasks: bit x is the
// colour of vertex x.
struct IndistinguishabilityAtlas {
  int n = 0;
  int r = 0;
  // groups[g][c] lists the colourings of one equivalence class, ascending.
  std::vector<std::vector<std::vector<std::uint32_t>>> groups;
  std::uint64_t colourings = 0;
  std::uint64_t distinguishable = 0;

  double distinguishable_fraction() const {
    return colourings == 0 ? 0.0
                           : static_cast<double>(distinguishable) /
                                 static_cast<double>(colourings);
  }
};

IndistinguishabilityAtlas indistinguishability_search(int n, int r);

// Every unordered pair (a < b) of colourings with equal multisets that are
// not equivalent.
std::vector<std::pair<std::uint32_t, std::uint32_t>> witness_pairs(
    const IndistinguishabilityAtlas& atlas);

Colouring atlas_colouring(int n, std::uint32_t bits);

}  // namespace cubeshot

#endif  // CUBESHOT_SHOTGUN_HPP_
