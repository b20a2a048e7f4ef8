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

// Canonical signatures of coloured r-balls under centre-fixing isomorphism.
//
// For n >= 3 every isomorphism between two r-balls of Q_n that fixes the
// centre is induced by a permutation of the coordinates, so a coloured ball
// is a colour per offset set S (|S| <= r) and two balls are isomorphic iff
// some coordinate permutation carries one colour table onto the other.
//
// The signature is the lexicographically least colour table over all
// coordinate orderings, found by refinement of the coordinate partition
// followed by individualisation with twin pruning. It is a canonical form:
// equal bytes iff isomorphic balls, with no hashing involved.

#ifndef CUBESHOT_BALL_CANON_HPP_
#define CUBESHOT_BALL_CANON_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubeshot/colouring.hpp"
#include "cubeshot/hypercube.hpp"

namespace cubeshot {

// Offset sets of size <= r over n coordinates, ordered by largest element
// and then recursively the same way (colex). Slot 0 is the empty set and the
// slots whose largest coordinate is c form one contiguous block.
class BallLayout {
 public:
  // Cached per (n, r); safe to call from several threads.
  static const BallLayout& get(int n, int r);

  int n() const { return n_; }
  int radius() const { return r_; }
  std::size_t size() const { return masks_.size(); }
  std::span<const std::uint32_t> masks() const { return masks_; }
  // -1 when the mask is not an offset of the ball.
  int slot_of(std::uint32_t mask) const;
  // First slot whose largest coordinate is c; block_begin(n) == size().
  std::size_t block_begin(int c) const { return block_begin_[c]; }
  // Slot of masks()[slot] without its largest coordinate.
  int parent(std::size_t slot) const { return parent_[slot]; }
  // Largest coordinate of masks()[slot]; -1 for slot 0.
  int top(std::size_t slot) const { return top_[slot]; }

 private:
  BallLayout(int n, int r);

  int n_;
  int r_;
  std::vector<std::uint32_t> masks_;
  std::vector<int> parent_;
  std::vector<int> top_;
  std::vector<std::size_t> block_begin_;
  std::vector<int> dense_slot_;
  std::map<std::uint32_t, int> sparse_slot_;
};

struct BallView {
  int n = 0;
  int radius = 0;
  Vertex centre;
  // Indexed by BallLayout slot in the view's own coordinate frame.
  std::vector<Colour> colours;

  // Colour at offset set `offset`; throws DomainError if |offset| > radius.
  Colour colour_of(std::uint32_t offset) const;
};

BallView ball_view(const Colouring& chi, Vertex v, int r);

// The radius-r ball around the centre of a larger ball.
BallView restrict_ball(const BallView& ball, int r);

// The radius-r ball around centre + e_coordinate inside a ball of radius
// at least r + 1.
BallView neighbour_ball(const BallView& ball, int coordinate, int r);

class BallSignature {
 public:
  BallSignature() = default;
  // Validates the header; throws DomainError on malformed bytes.
  explicit BallSignature(std::string bytes);

  const std::string& bytes() const { return bytes_; }
  int radius() const;
  int n() const;
  std::string hex() const;
  static BallSignature from_hex(std::string_view hex);

  friend bool operator==(const BallSignature&, const BallSignature&) = default;
  friend std::strong_ordering operator<=>(const BallSignature& a,
                                          const BallSignature& b) {
    const int c = a.bytes_.compare(b.bytes_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

 private:
  std::string bytes_;
};

// Centre colour followed by the sorted neighbour colours. Byte-identical to
// signature_general on the same radius-1 ball.
BallSignature signature_r1(const BallView& ball);

// Budgets: radius in {1, 2, 3}; n <= 16 for r = 2 and n <= 12 for r = 3.
// Throws BudgetError when a budget or the search node limit is exceeded.
BallSignature signature_general(const BallView& ball);

struct CanonicalForm {
  BallSignature signature;
  // order[p] is the view coordinate placed at canonical position p, so the
  // canonical ball's offset {p} is the view's offset {order[p]}.
  std::vector<int> order;
};

CanonicalForm canonical_form(const BallView& ball);

// The ball encoded by a signature, in the canonical frame (centre 0).
BallView decode_signature(const BallSignature& signature);

// twin[c] is the least coordinate d such that swapping c and d fixes the
// ball's colour table (twin[c] == c when there is none).
std::vector<int> twin_classes(const BallView& ball);

BallSignature ball_signature(const Colouring& chi, Vertex v, int r);

class BallMultiset {
 public:
  BallMultiset(int n, std::uint32_t q, int r);

  int n() const { return n_; }
  std::uint32_t palette_size() const { return q_; }
  int radius() const { return r_; }

  void add(const BallSignature& signature, std::uint64_t count = 1);
  const std::map<BallSignature, std::uint64_t>& entries() const {
    return entries_;
  }
  std::size_t distinct() const { return entries_.size(); }
  std::uint64_t total() const { return total_; }

  friend bool operator==(const BallMultiset&, const BallMultiset&) = default;

 private:
  int n_;
  std::uint32_t q_;
  int r_;
  std::uint64_t total_ = 0;
  std::map<BallSignature, std::uint64_t> entries_;
};

// Signature counts over all 2^n centres; may use several threads and the
// result does not depend on the schedule.
BallMultiset extract_multiset(const Colouring& chi, int r);

// Text format: "balls <n> <q> <r>" then "<count> <hex>" per distinct
// signature, ascending by hex.
void write_multiset(std::ostream& out, const BallMultiset& ms);
BallMultiset read_multiset(std::istream& in);

}  // namespace cubeshot

#endif  // CUBESHOT_BALL_CANON_HPP_
