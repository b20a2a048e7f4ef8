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

// Embedding a canonical-frame ball into a partially coloured cube.

#ifndef CUBESHOT_SRC_BALL_MATCH_HPP_
#define CUBESHOT_SRC_BALL_MATCH_HPP_

#include <cstdint>
#include <vector>

#include "cubeshot/ball_canon.hpp"
#include "cubeshot/colouring.hpp"
#include "cubeshot/hypercube.hpp"

namespace cubeshot::detail {

struct PartialColouring {
  explicit PartialColouring(CubeDim d)
      : dim(d), colour(d.order(), 0), known(d.order(), 0) {}

  CubeDim dim;
  std::vector<Colour> colour;
  std::vector<std::uint8_t> known;
};

// Enumerates coordinate maps perm (canonical coordinate -> cube coordinate)
// under which the ball, centred at u, agrees with every known colour. With
// twin pruning only one map per orbit of ball twins is reported.
class EmbeddingMatcher {
 public:
  EmbeddingMatcher(const BallView& ball, bool twin_pruning)
      : ball_(ball),
        layout_(BallLayout::get(ball.n, ball.radius)),
        n_(ball.n),
        prev_twin_(ball.n, -1) {
    if (twin_pruning) {
      const std::vector<int> twin = twin_classes(ball);
      for (int c = 0; c < n_; ++c) {
        for (int d = c - 1; d >= 0; --d) {
          if (twin[d] == twin[c]) {
            prev_twin_[c] = d;
            break;
          }
        }
      }
    }
  }

  // visit(perm) returns false to stop early. Returns false when the node
  // budget ran out before the enumeration finished.
  template <typename Visit>
  bool run(const PartialColouring& pc, std::uint32_t u, std::uint64_t& budget,
           Visit&& visit) {
    pc_ = &pc;
    u_ = u;
    budget_ = &budget;
    stop_ = false;
    exhausted_ = false;
    if (pc.known[u] && pc.colour[u] != ball_.colours[0]) return true;
    perm_.assign(n_, -1);
    used_ = 0;
    actual_.assign(layout_.size(), 0);
    dfs(0, visit);
    return !exhausted_;
  }

  // Colours of the placed ball indexed by identity-frame layout slot.
  std::vector<Colour> fill(const std::vector<int>& perm) const {
    std::vector<Colour> out(layout_.size());
    std::vector<std::uint32_t> act(layout_.size(), 0);
    out[0] = ball_.colours[0];
    for (std::size_t s = 1; s < layout_.size(); ++s) {
      act[s] = act[layout_.parent(s)] | (1u << perm[layout_.top(s)]);
      out[layout_.slot_of(act[s])] = ball_.colours[s];
    }
    return out;
  }

  // Writes the placed ball into pc, recording newly known vertices.
  void place(PartialColouring& pc, std::uint32_t u, const std::vector<int>& perm,
             std::vector<std::uint32_t>& newly_known) const {
    std::vector<std::uint32_t> act(layout_.size(), 0);
    for (std::size_t s = 0; s < layout_.size(); ++s) {
      if (s > 0) act[s] = act[layout_.parent(s)] | (1u << perm[layout_.top(s)]);
      const std::uint32_t x = u ^ act[s];
      if (!pc.known[x]) {
        pc.known[x] = 1;
        pc.colour[x] = ball_.colours[s];
        newly_known.push_back(x);
      }
    }
  }

 private:
  template <typename Visit>
  void dfs(int c, Visit& visit) {
    if (stop_) return;
    if (*budget_ == 0) {
      exhausted_ = true;
      stop_ = true;
      return;
    }
    --*budget_;
    if (c == n_) {
      if (!visit(static_cast<const std::vector<int>&>(perm_))) stop_ = true;
      return;
    }
    const int floor = prev_twin_[c] >= 0 ? perm_[prev_twin_[c]] + 1 : 0;
    const std::size_t lo = layout_.block_begin(c);
    const std::size_t hi = layout_.block_begin(c + 1);
    for (int a = floor; a < n_ && !stop_; ++a) {
      if (used_ & (1u << a)) continue;
      bool ok = true;
      for (std::size_t s = lo; s < hi; ++s) {
        actual_[s] = actual_[layout_.parent(s)] | (1u << a);
        const std::uint32_t x = u_ ^ actual_[s];
        if (pc_->known[x] && pc_->colour[x] != ball_.colours[s]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      perm_[c] = a;
      used_ |= 1u << a;
      dfs(c + 1, visit);
      used_ &= ~(1u << a);
      perm_[c] = -1;
    }
  }

  const BallView& ball_;
  const BallLayout& layout_;
  int n_;
  std::vector<int> prev_twin_;
  const PartialColouring* pc_ = nullptr;
  std::uint32_t u_ = 0;
  std::uint64_t* budget_ = nullptr;
  bool stop_ = false;
  bool exhausted_ = false;
  std::vector<int> perm_;
  std::uint32_t used_ = 0;
  std::vector<std::uint32_t> actual_;
};

}  // namespace cubeshot::detail

#endif  // CUBESHOT_SRC_BALL_MATCH_HPP_
