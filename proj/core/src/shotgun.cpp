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
#include <memory>
#include <numeric>
#include <ostream>
#include <set>

#include "ball_match.hpp"
#include "cubeshot/errors.hpp"

namespace cubeshot {

namespace {

using detail::EmbeddingMatcher;
using detail::PartialColouring;

constexpr int kMaxReconstructDim = 12;

struct TypeTable {
  int n = 0;
  int r = 0;
  std::uint32_t q = 0;
  std::vector<BallSignature> sigs;
  std::vector<BallView> views;
  std::vector<std::uint64_t> counts;
  std::map<std::string, int> index;
};

void check_input(const BallMultiset& ms, int r) {
  if (ms.radius() != r) {
    throw DomainError("expected a multiset of radius-" + std::to_string(r) +
                      " balls, got radius " + std::to_string(ms.radius()));
  }
  if (ms.n() > kMaxReconstructDim) {
    throw BudgetError("reconstruction supports n <= " +
                      std::to_string(kMaxReconstructDim) + ", got " +
                      std::to_string(ms.n()));
  }
  if (ms.total() != CubeDim(ms.n()).order()) {
    throw DomainError("multiset holds " + std::to_string(ms.total()) +
                      " balls but Q_" + std::to_string(ms.n()) + " has " +
                      std::to_string(CubeDim(ms.n()).order()) + " vertices");
  }
}

TypeTable load_types(const BallMultiset& ms) {
  TypeTable t;
  t.n = ms.n();
  t.r = ms.radius();
  t.q = ms.palette_size();
  for (const auto& [sig, count] : ms.entries()) {
    t.index.emplace(sig.bytes(), static_cast<int>(t.sigs.size()));
    t.sigs.push_back(sig);
    t.views.push_back(decode_signature(sig));
    t.counts.push_back(count);
  }
  return t;
}

int rarest_type(const TypeTable& t) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(t.counts.size()); ++i) {
    if (t.counts[i] < t.counts[best]) best = i;
  }
  return best;
}

BallView known_ball(const PartialColouring& pc, std::uint32_t u, int r) {
  const BallLayout& layout = BallLayout::get(pc.dim.n(), r);
  BallView view;
  view.n = pc.dim.n();
  view.radius = r;
  view.centre = Vertex{u};
  view.colours.resize(layout.size());
  const auto masks = layout.masks();
  for (std::size_t s = 0; s < masks.size(); ++s) {
    view.colours[s] = pc.colour[u ^ masks[s]];
  }
  return view;
}

bool ball_known(const PartialColouring& pc, std::uint32_t u, int r) {
  for (std::uint32_t m : BallLayout::get(pc.dim.n(), r).masks()) {
    if (!pc.known[u ^ m]) return false;
  }
  return true;
}

Colouring to_colouring(const PartialColouring& pc, std::uint32_t q) {
  return Colouring(pc.dim, pc.colour, q);
}

ReconstructionResult finish(const BallMultiset& ms, const PartialColouring& pc,
                            ReconstructionResult result) {
  Colouring out = to_colouring(pc, ms.palette_size());
  if (extract_multiset(out, ms.radius()) != ms) {
    result.status = ReconstructionStatus::kFailed;
    result.message = "assembled colouring does not reproduce the multiset";
    return result;
  }
  result.status = ReconstructionStatus::kSuccess;
  result.colouring = std::move(out);
  return result;
}

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// Backtracking assembler over balls of any supported radius.
class Assembler {
 public:
  Assembler(const TypeTable& types, std::uint64_t budget)
      : t_(types),
        dim_(types.n),
        n_(types.n),
        r_(types.r),
        layout_(BallLayout::get(types.n, types.r)),
        pc_(dim_),
        placed_(dim_.order(), -1),
        placed_nbrs_(dim_.order(), 0),
        unknown_(dim_.order(), static_cast<int>(layout_.size())),
        remaining_(types.counts),
        matchers_(types.sigs.size()),
        budget_(budget) {
    for (int t = 0; t < static_cast<int>(t_.sigs.size()); ++t) {
      const BallSignature r1 = signature_r1(restrict_ball(t_.views[t], 1));
      by_r1_[r1.bytes()].push_back(t);
    }
  }

  ReconstructionResult run() {
    ReconstructionResult result;
    const int root = rarest_type(t_);
    Option opt{root, identity_perm(n_)};
    ++tried_;
    std::vector<std::uint32_t> trail;
    bool ok = place(0, opt, trail);
    path_.push_back({0, Vertex{0}, t_.sigs[root],
                     static_cast<std::uint64_t>(1)});
    ok = ok && extend(1);
    result.placements_tried = tried_;
    if (!ok) {
      result.status = ReconstructionStatus::kFailed;
      result.message = exhausted_
                           ? "search budget exhausted after " +
                                 std::to_string(tried_) + " placements"
                           : "no consistent extension";
      return result;
    }
    result.log = path_;
    return result;
  }

  const PartialColouring& colouring() const { return pc_; }

 private:
  struct Option {
    int type;
    std::vector<int> perm;
  };

  std::uint32_t choose_vertex() const {
    std::uint32_t best = 0;
    int best_score = -1;
    for (std::uint32_t v = 0; v < dim_.order(); ++v) {
      if (placed_[v] >= 0) continue;
      const int score = (unknown_[v] == 0 ? n_ + 1 : 0) + placed_nbrs_[v];
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    return best;
  }

  EmbeddingMatcher& matcher(int t) {
    if (!matchers_[t]) {
      matchers_[t] = std::make_unique<EmbeddingMatcher>(t_.views[t], true);
    }
    return *matchers_[t];
  }

  int type_of_known(std::uint32_t u) const {
    const BallSignature sig = signature_general(known_ball(pc_, u, r_));
    const auto it = t_.index.find(sig.bytes());
    return it == t_.index.end() ? -1 : it->second;
  }

  std::vector<Option> options_for(std::uint32_t u) {
    std::vector<Option> out;
    if (unknown_[u] == 0) {
      const int t = type_of_known(u);
      if (t >= 0 && remaining_[t] > 0) out.push_back({t, {}});
      return out;
    }
    std::vector<int> candidates;
    if (ball_known(pc_, u, 1)) {
      const auto it = by_r1_.find(
          signature_r1(known_ball(pc_, u, 1)).bytes());
      if (it != by_r1_.end()) candidates = it->second;
    } else {
      candidates.resize(t_.sigs.size());
      std::iota(candidates.begin(), candidates.end(), 0);
    }
    std::erase_if(candidates, [&](int t) { return remaining_[t] == 0; });
    std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      return remaining_[a] < remaining_[b];
    });
    for (int t : candidates) {
      EmbeddingMatcher& m = matcher(t);
      std::set<std::vector<Colour>> fills;
      const bool finished = m.run(pc_, u, budget_, [&](const std::vector<int>& perm) {
        if (fills.insert(m.fill(perm)).second) out.push_back({t, perm});
        return true;
      });
      if (!finished) {
        exhausted_ = true;
        return {};
      }
    }
    return out;
  }

  // Returns false when some fully known, unplaced ball has no type left.
  bool place(std::uint32_t u, const Option& opt,
             std::vector<std::uint32_t>& trail) {
    placed_[u] = opt.type;
    --remaining_[opt.type];
    for (int i = 0; i < n_; ++i) ++placed_nbrs_[u ^ (1u << i)];
    if (!opt.perm.empty()) matcher(opt.type).place(pc_, u, opt.perm, trail);
    bool ok = true;
    const auto masks = layout_.masks();
    for (std::uint32_t x : trail) {
      for (std::uint32_t m : masks) {
        const std::uint32_t v = x ^ m;
        if (--unknown_[v] == 0 && placed_[v] < 0 && ok) {
          const int t = type_of_known(v);
          ok = t >= 0 && remaining_[t] > 0;
        }
      }
    }
    return ok;
  }

  // Each unplaced neighbour of u must still admit some remaining type
  // consistent with the colours known around it.
  bool neighbours_viable(std::uint32_t u) {
    for (int i = 0; i < n_ && !exhausted_; ++i) {
      const std::uint32_t v = u ^ (1u << i);
      if (placed_[v] >= 0 || unknown_[v] == 0 || !ball_known(pc_, v, 1)) {
        continue;
      }
      const auto it = by_r1_.find(signature_r1(known_ball(pc_, v, 1)).bytes());
      if (it == by_r1_.end()) return false;
      bool viable = false;
      for (int t : it->second) {
        if (remaining_[t] == 0) continue;
        const bool finished =
            matcher(t).run(pc_, v, budget_, [&](const std::vector<int>&) {
              viable = true;
              return false;
            });
        if (!finished) exhausted_ = true;
        if (viable || exhausted_) break;
      }
      if (!viable) return false;
    }
    return !exhausted_;
  }

  void unplace(std::uint32_t u, const Option& opt,
               const std::vector<std::uint32_t>& trail) {
    const auto masks = layout_.masks();
    for (std::uint32_t x : trail) {
      pc_.known[x] = 0;
      for (std::uint32_t m : masks) ++unknown_[x ^ m];
    }
    for (int i = 0; i < n_; ++i) --placed_nbrs_[u ^ (1u << i)];
    ++remaining_[opt.type];
    placed_[u] = -1;
  }

  bool extend(std::uint64_t depth) {
    if (depth == dim_.order()) return true;
    const std::uint32_t u = choose_vertex();
    const std::vector<Option> options = options_for(u);
    if (exhausted_) return false;
    for (const Option& opt : options) {
      if (budget_ == 0) {
        exhausted_ = true;
        return false;
      }
      --budget_;
      ++tried_;
      std::vector<std::uint32_t> trail;
      if (place(u, opt, trail) && neighbours_viable(u)) {
        path_.push_back({depth, Vertex{u}, t_.sigs[opt.type],
                         static_cast<std::uint64_t>(options.size())});
        if (extend(depth + 1)) return true;
        path_.pop_back();
      }
      unplace(u, opt, trail);
      if (exhausted_) return false;
    }
    return false;
  }

  const TypeTable& t_;
  CubeDim dim_;
  int n_;
  int r_;
  const BallLayout& layout_;
  PartialColouring pc_;
  std::vector<int> placed_;
  std::vector<int> placed_nbrs_;
  std::vector<int> unknown_;
  std::vector<std::uint64_t> remaining_;
  std::vector<std::unique_ptr<EmbeddingMatcher>> matchers_;
  std::map<std::string, std::vector<int>> by_r1_;
  std::uint64_t budget_;
  std::uint64_t tried_ = 0;
  bool exhausted_ = false;
  std::vector<LogRecord> path_;
};

ReconstructionResult assemble(const BallMultiset& ms, const TypeTable& types,
                              std::uint64_t budget) {
  Assembler assembler(types, budget);
  ReconstructionResult result = assembler.run();
  if (result.status == ReconstructionStatus::kFailed && !result.message.empty()) {
    return result;
  }
  return finish(ms, assembler.colouring(), std::move(result));
}

ReconstructionResult constant_result(const BallMultiset& ms,
                                     const TypeTable& types) {
  ReconstructionResult result;
  const CubeDim dim(ms.n());
  PartialColouring pc(dim);
  std::fill(pc.colour.begin(), pc.colour.end(), types.views[0].colours[0]);
  std::fill(pc.known.begin(), pc.known.end(), 1);
  result.placements_tried = 1;
  result.log.push_back({0, Vertex{0}, types.sigs[0], 1});
  return finish(ms, pc, std::move(result));
}

// Shell-by-shell extension: each neighbour's 3-ball type is read off from
// the 2-ball it induces inside an already placed 3-ball. Returns nullopt when
// an extension is not forced.
std::optional<ReconstructionResult> forced_r3(
    const BallMultiset& ms, const TypeTable& types,
    const std::map<std::string, int>& by2, std::uint64_t& budget) {
  const int n = types.n;
  const CubeDim dim(n);
  const std::size_t ntypes = types.sigs.size();
  std::vector<std::vector<int>> nbr(ntypes);
  auto nbr_type = [&](int t, int i) {
    if (nbr[t].empty()) {
      nbr[t].assign(n, -1);
      for (int c = 0; c < n; ++c) {
        const auto it = by2.find(
            signature_general(neighbour_ball(types.views[t], c, 2)).bytes());
        if (it != by2.end()) nbr[t][c] = it->second;
      }
    }
    return nbr[t][i];
  };
  std::vector<std::unique_ptr<EmbeddingMatcher>> matchers(ntypes);
  auto matcher = [&](int t) -> EmbeddingMatcher& {
    if (!matchers[t]) {
      matchers[t] = std::make_unique<EmbeddingMatcher>(types.views[t], true);
    }
    return *matchers[t];
  };

  PartialColouring pc(dim);
  std::vector<int> type_at(dim.order(), -1);
  std::vector<std::vector<int>> perm_at(dim.order());
  ReconstructionResult result;
  std::vector<std::uint32_t> trail;

  const int anchor = rarest_type(types);
  type_at[0] = anchor;
  perm_at[0] = identity_perm(n);
  matcher(anchor).place(pc, 0, perm_at[0], trail);
  result.log.push_back({0, Vertex{0}, types.sigs[anchor], 1});
  result.placements_tried = 1;

  std::vector<std::uint32_t> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t w = queue[head];
    for (int c = 0; c < n; ++c) {
      const std::uint32_t v = w ^ (1u << perm_at[w][c]);
      const int t = nbr_type(type_at[w], c);
      if (t < 0) return std::nullopt;
      if (type_at[v] >= 0) {
        if (type_at[v] != t) return std::nullopt;
        continue;
      }
      EmbeddingMatcher& m = matcher(t);
      std::optional<std::vector<Colour>> first_fill;
      std::vector<int> chosen;
      bool forced = true;
      const bool finished = m.run(pc, v, budget, [&](const std::vector<int>& perm) {
        std::vector<Colour> f = m.fill(perm);
        if (!first_fill) {
          first_fill = std::move(f);
          chosen = perm;
          return true;
        }
        if (f != *first_fill) {
          forced = false;
          return false;
        }
        return true;
      });
      if (!finished || !forced || !first_fill) return std::nullopt;
      ++result.placements_tried;
      trail.clear();
      m.place(pc, v, chosen, trail);
      type_at[v] = t;
      perm_at[v] = std::move(chosen);
      result.log.push_back({result.log.size(), Vertex{v}, types.sigs[t], 1});
      queue.push_back(v);
    }
  }
  if (queue.size() != dim.order()) return std::nullopt;
  ReconstructionResult done = finish(ms, pc, std::move(result));
  if (done.status != ReconstructionStatus::kSuccess) return std::nullopt;
  return done;
}

}  // namespace

std::string_view to_string(ReconstructionStatus status) {
  switch (status) {
    case ReconstructionStatus::kSuccess:
      return "success";
    case ReconstructionStatus::kAmbiguous:
      return "ambiguous";
    case ReconstructionStatus::kFailed:
      return "failed";
  }
  return "failed";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kEquivalent:
      return "equivalent";
    case Verdict::kInequivalent:
      return "inequivalent";
    case Verdict::kUnknown:
      return "unknown";
  }
  return "unknown";
}

ReconstructionResult reconstruct_r3(const BallMultiset& ms,
                                    std::uint64_t budget) {
  check_input(ms, 3);
  const TypeTable types = load_types(ms);
  if (types.sigs.size() == 1) return constant_result(ms, types);

  std::map<std::string, int> by2;
  std::optional<std::pair<BallSignature, BallSignature>> collision;
  for (int t = 0; t < static_cast<int>(types.sigs.size()); ++t) {
    const BallSignature s2 = signature_general(restrict_ball(types.views[t], 2));
    const auto [it, inserted] = by2.emplace(s2.bytes(), t);
    if (!inserted && !collision) {
      collision.emplace(types.sigs[it->second], types.sigs[t]);
    }
  }
  if (!collision) {
    if (auto fast = forced_r3(ms, types, by2, budget)) return *std::move(fast);
  }
  ReconstructionResult result = assemble(ms, types, budget);
  if (result.status == ReconstructionStatus::kSuccess) return result;
  if (collision) {
    result.status = ReconstructionStatus::kAmbiguous;
    result.colliding = collision;
    result.message = "2-ball " +
                     signature_general(restrict_ball(
                         decode_signature(collision->first), 2)).hex() +
                     " is shared by two 3-ball types; " + result.message;
  }
  return result;
}

ReconstructionResult reconstruct_r2(const BallMultiset& ms,
                                    std::uint64_t budget) {
  check_input(ms, 2);
  const TypeTable types = load_types(ms);
  if (types.sigs.size() == 1) return constant_result(ms, types);
  return assemble(ms, types, budget);
}

void write_log(std::ostream& out, const ReconstructionResult& result) {
  for (const LogRecord& rec : result.log) {
    out << "step " << rec.step << " place " << rec.vertex.index << " sig "
        << rec.signature.hex() << " alternatives " << rec.alternatives << '\n';
  }
}

namespace {

// Searches for a coordinate permutation P with b[P(y)] == a[y] for all y.
class FrameMatcher {
 public:
  FrameMatcher(int n, std::uint64_t* budget) : n_(n), budget_(budget) {}

  std::optional<std::vector<int>> run(const std::vector<Colour>& a,
                                      const std::vector<Colour>& b) {
    a_ = &a;
    b_ = &b;
    if (a[0] != b[0]) return std::nullopt;
    img_.assign(a.size(), 0);
    perm_.assign(n_, -1);
    used_ = 0;
    if (dfs(0)) return perm_;
    return std::nullopt;
  }

  bool exhausted() const { return exhausted_; }

 private:
  bool dfs(int i) {
    if (i == n_) return true;
    if (budget_ != nullptr) {
      if (*budget_ == 0) {
        exhausted_ = true;
        return false;
      }
      --*budget_;
    }
    const std::uint32_t lo = 1u << i;
    for (int c = 0; c < n_; ++c) {
      if (used_ & (1u << c)) continue;
      bool ok = true;
      for (std::uint32_t x = lo; x < 2 * lo; ++x) {
        img_[x] = img_[x ^ lo] | (1u << c);
        if ((*b_)[img_[x]] != (*a_)[x]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      perm_[i] = c;
      used_ |= 1u << c;
      if (dfs(i + 1)) return true;
      used_ &= ~(1u << c);
      if (exhausted_) return false;
    }
    return false;
  }

  int n_;
  std::uint64_t* budget_;
  bool exhausted_ = false;
  const std::vector<Colour>* a_ = nullptr;
  const std::vector<Colour>* b_ = nullptr;
  std::vector<std::uint32_t> img_;
  std::vector<int> perm_;
  std::uint32_t used_ = 0;
};

std::vector<Colour> translated(const Colouring& chi, std::uint32_t t) {
  std::vector<Colour> out(chi.dim().order());
  for (std::uint32_t y = 0; y < out.size(); ++y) out[y] = chi.at(y ^ t);
  return out;
}

bool same_counts(const Colouring& a, const Colouring& b) {
  std::vector<std::uint64_t> ca = a.counts();
  std::vector<std::uint64_t> cb = b.counts();
  const std::size_t k = std::max(ca.size(), cb.size());
  ca.resize(k, 0);
  cb.resize(k, 0);
  return ca == cb;
}

bool same_multiset(const Colouring& a, const Colouring& b, int r) {
  const BallMultiset ma = extract_multiset(a, r);
  const BallMultiset mb = extract_multiset(b, r);
  return ma.entries() == mb.entries();
}

}  // namespace

EquivalenceResult verify_equivalence(const Colouring& chi,
                                     const Colouring& lambda,
                                     EquivalenceMode mode,
                                     std::uint64_t budget) {
  EquivalenceResult result;
  const CubeDim dim = chi.dim();
  if (lambda.dim() != dim) {
    result.verdict = Verdict::kInequivalent;
    result.reason = "dimensions differ";
    return result;
  }
  if (!same_counts(chi, lambda)) {
    result.verdict = Verdict::kInequivalent;
    result.reason = "colour counts differ";
    return result;
  }
  const int n = dim.n();
  if (mode == EquivalenceMode::kExact) {
    if (n > 8) {
      throw BudgetError("exact equivalence supports n <= 8, got " +
                        std::to_string(n));
    }
    const std::vector<Colour> a(chi.colours().begin(), chi.colours().end());
    FrameMatcher fm(n, nullptr);
    for (std::uint32_t t = 0; t < dim.order(); ++t) {
      if (lambda.at(t) != chi.at(0)) continue;
      if (auto perm = fm.run(a, translated(lambda, t))) {
        result.verdict = Verdict::kEquivalent;
        result.witness.emplace(dim, std::move(*perm), t);
        result.reason = "automorphism found";
        return result;
      }
    }
    result.verdict = Verdict::kInequivalent;
    result.reason = "no automorphism carries one colouring to the other";
    return result;
  }

  if (!same_multiset(chi, lambda, 1)) {
    result.verdict = Verdict::kInequivalent;
    result.reason = "1-ball multisets differ";
    return result;
  }
  const bool use_r2 = n <= 16;
  if (use_r2 && !same_multiset(chi, lambda, 2)) {
    result.verdict = Verdict::kInequivalent;
    result.reason = "2-ball multisets differ";
    return result;
  }
  const int anchor_r = use_r2 ? 2 : 1;
  std::map<BallSignature, std::vector<std::uint32_t>> chi_sigs;
  for (std::uint32_t v = 0; v < dim.order(); ++v) {
    chi_sigs[ball_signature(chi, Vertex{v}, anchor_r)].push_back(v);
  }
  auto rarest = chi_sigs.begin();
  for (auto it = chi_sigs.begin(); it != chi_sigs.end(); ++it) {
    if (it->second.size() < rarest->second.size()) rarest = it;
  }
  const std::uint32_t u = rarest->second.front();
  const std::vector<Colour> a = translated(chi, u);
  FrameMatcher fm(n, &budget);
  for (std::uint32_t v = 0; v < dim.order(); ++v) {
    if (lambda.at(v) != chi.at(u)) continue;
    if (ball_signature(lambda, Vertex{v}, anchor_r) != rarest->first) continue;
    if (auto perm = fm.run(a, translated(lambda, v))) {
      CubeAutomorphism p(dim, *perm, 0);
      result.verdict = Verdict::kEquivalent;
      result.witness.emplace(dim, std::move(*perm), p.permute_mask(u) ^ v);
      result.reason = "anchored search found an automorphism";
      return result;
    }
    if (fm.exhausted()) {
      result.verdict = Verdict::kUnknown;
      result.reason = "anchored search budget exhausted";
      return result;
    }
  }
  result.verdict = Verdict::kInequivalent;
  result.reason = "anchored search exhausted every candidate";
  return result;
}

Colouring atlas_colouring(int n, std::uint32_t bits) {
  const CubeDim dim(n);
  std::vector<Colour> colours(dim.order());
  for (std::uint32_t x = 0; x < dim.order(); ++x) colours[x] = (bits >> x) & 1u;
  return Colouring(dim, std::move(colours), 2);
}

IndistinguishabilityAtlas indistinguishability_search(int n, int r) {
  if (n > 4) {
    throw BudgetError("indistinguishability search supports n <= 4, got " +
                      std::to_string(n));
  }
  if (n < 1) throw DomainError("dimension must be positive");
  if (r < 1) throw DomainError("radius must be positive");
  const CubeDim dim(n);
  const std::uint32_t order = static_cast<std::uint32_t>(dim.order());
  const std::uint64_t total = std::uint64_t{1} << order;

  std::vector<std::vector<std::uint32_t>> vertex_maps;
  for (const CubeAutomorphism& s : CubeAutomorphism::all(dim)) {
    std::vector<std::uint32_t> m(order);
    for (std::uint32_t x = 0; x < order; ++x) m[x] = s(Vertex{x}).index;
    vertex_maps.push_back(std::move(m));
  }
  auto canonical = [&](std::uint32_t bits) {
    std::uint32_t best = bits;
    for (const auto& m : vertex_maps) {
      std::uint32_t img = 0;
      for (std::uint32_t x = 0; x < order; ++x) {
        if ((bits >> x) & 1u) img |= 1u << m[x];
      }
      best = std::min(best, img);
    }
    return best;
  };

  const bool whole_cube = r >= n;
  const BallLayout* layout = whole_cube ? nullptr : &BallLayout::get(n, r);
  std::map<std::uint32_t, int> pattern_id;
  std::map<std::string, int> sig_id;
  auto ball_id = [&](std::uint32_t bits, std::uint32_t v) {
    std::uint32_t pattern = 0;
    const auto masks = layout->masks();
    for (std::size_t s = 0; s < masks.size(); ++s) {
      pattern |= ((bits >> (v ^ masks[s])) & 1u) << s;
    }
    const auto hit = pattern_id.find(pattern);
    if (hit != pattern_id.end()) return hit->second;
    BallView view;
    view.n = n;
    view.radius = r;
    view.centre = Vertex{v};
    view.colours.resize(masks.size());
    for (std::size_t s = 0; s < masks.size(); ++s) {
      view.colours[s] = (pattern >> s) & 1u;
    }
    const std::string bytes = signature_general(view).bytes();
    const int id =
        sig_id.emplace(bytes, static_cast<int>(sig_id.size())).first->second;
    pattern_id.emplace(pattern, id);
    return id;
  };

  std::map<std::vector<int>, std::map<std::uint32_t, std::vector<std::uint32_t>>>
      grouped;
  for (std::uint64_t c = 0; c < total; ++c) {
    const auto bits = static_cast<std::uint32_t>(c);
    const std::uint32_t canon = canonical(bits);
    std::vector<int> key;
    if (whole_cube) {
      key.push_back(static_cast<int>(canon));
    } else {
      key.reserve(order);
      for (std::uint32_t v = 0; v < order; ++v) key.push_back(ball_id(bits, v));
      std::sort(key.begin(), key.end());
    }
    grouped[key][canon].push_back(bits);
  }

  IndistinguishabilityAtlas atlas;
  atlas.n = n;
  atlas.r = r;
  atlas.colourings = total;
  for (auto& [key, classes] : grouped) {
    std::vector<std::vector<std::uint32_t>> group;
    std::uint64_t members = 0;
    for (auto& [canon, list] : classes) {
      members += list.size();
      group.push_back(std::move(list));
    }
    if (group.size() == 1) atlas.distinguishable += members;
    atlas.groups.push_back(std::move(group));
  }
  return atlas;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> witness_pairs(
    const IndistinguishabilityAtlas& atlas) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& group : atlas.groups) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        for (std::uint32_t a : group[i]) {
          for (std::uint32_t b : group[j]) {
            out.emplace_back(std::min(a, b), std::max(a, b));
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cubeshot
