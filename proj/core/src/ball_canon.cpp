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

#include "cubeshot/ball_canon.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <istream>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "cubeshot/errors.hpp"

namespace cubeshot {

namespace {

constexpr int kDenseSlotLimit = 16;
constexpr std::uint64_t kNodeBudget = std::uint64_t{1} << 20;

std::uint64_t layout_size(int n, int r) {
  std::uint64_t s = 0;
  for (int k = 0; k <= std::min(n, r); ++k) s += binomial(n, k);
  return s;
}

void check_radius(int r) {
  if (r < 1 || r > 3) {
    throw DomainError("ball radius must be 1, 2 or 3, got " +
                      std::to_string(r));
  }
}

void check_canon_budget(int n, int r) {
  check_radius(r);
  if ((r == 2 && n > 16) || (r == 3 && n > 12)) {
    throw BudgetError("canonical signature budget exceeded: r = " +
                      std::to_string(r) + " supports n <= " +
                      (r == 2 ? std::string("16") : std::string("12")) +
                      ", got n = " + std::to_string(n));
  }
}

int colour_width(Colour max_colour) {
  if (max_colour <= 0xFFu) return 1;
  if (max_colour <= 0xFFFFu) return 2;
  return 4;
}

std::string encode(int r, int n, std::span<const Colour> colours) {
  Colour top = 0;
  for (Colour c : colours) top = std::max(top, c);
  const int width = colour_width(top);
  std::string bytes;
  bytes.reserve(3 + colours.size() * width);
  bytes.push_back(static_cast<char>(r));
  bytes.push_back(static_cast<char>(n));
  bytes.push_back(static_cast<char>(width));
  for (Colour c : colours) {
    for (int b = width - 1; b >= 0; --b) {
      bytes.push_back(static_cast<char>((c >> (8 * b)) & 0xFFu));
    }
  }
  return bytes;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const BallView& ball)
      : ball_(ball),
        layout_(BallLayout::get(ball.n, ball.radius)),
        n_(ball.n),
        r_(ball.radius),
        twin_(twin_classes(ball)),
        actual_(layout_.size(), 0) {
    if (r_ >= 2) {
      pair_.assign(static_cast<std::size_t>(n_) * n_, 0);
      for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
          if (i != j) pair_[i * n_ + j] = colour((1u << i) | (1u << j));
        }
      }
    }
  }

  CanonicalForm run() {
    std::vector<int> cell(n_);
    for (int i = 0; i < n_; ++i) cell[i] = static_cast<int>(colour(1u << i));
    int cells = relabel(cell, [&](int i) {
      return std::vector<std::uint64_t>{static_cast<std::uint64_t>(cell[i])};
    });
    refine(cell, cells);
    search(cell, cells);
    CanonicalForm form;
    form.signature = BallSignature(encode(r_, n_, best_));
    form.order = best_order_;
    return form;
  }

 private:
  Colour colour(std::uint32_t mask) const {
    return ball_.colours[layout_.slot_of(mask)];
  }

  template <typename KeyFn>
  int relabel(std::vector<int>& cell, KeyFn&& key_of) {
    std::vector<std::vector<std::uint64_t>> keys(n_);
    for (int i = 0; i < n_; ++i) keys[i] = key_of(i);
    std::vector<int> idx(n_);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return keys[a] < keys[b]; });
    int rank = -1;
    for (int k = 0; k < n_; ++k) {
      if (k == 0 || keys[idx[k]] != keys[idx[k - 1]]) ++rank;
      cell[idx[k]] = rank;
    }
    return rank + 1;
  }

  void refine(std::vector<int>& cell, int& cells) {
    if (r_ < 2) return;
    while (cells < n_) {
      const std::vector<int> old = cell;
      const int next = relabel(cell, [&](int i) {
        std::vector<std::uint64_t> key;
        key.push_back(static_cast<std::uint64_t>(old[i]));
        const std::size_t pairs_at = key.size();
        for (int j = 0; j < n_; ++j) {
          if (j == i) continue;
          key.push_back((static_cast<std::uint64_t>(old[j]) << 32) |
                        pair_[i * n_ + j]);
        }
        std::sort(key.begin() + pairs_at, key.end());
        if (r_ >= 3) {
          const std::size_t triples_at = key.size();
          for (int j = 0; j < n_; ++j) {
            if (j == i) continue;
            for (int k = j + 1; k < n_; ++k) {
              if (k == i) continue;
              std::uint64_t a = static_cast<std::uint64_t>(old[j]);
              std::uint64_t b = static_cast<std::uint64_t>(old[k]);
              if (a > b) std::swap(a, b);
              key.push_back((a << 48) | (b << 32) |
                            colour((1u << i) | (1u << j) | (1u << k)));
            }
          }
          std::sort(key.begin() + triples_at, key.end());
        }
        return key;
      });
      if (next == cells) break;
      cells = next;
    }
  }

  std::vector<int> order_of(const std::vector<int>& cell) const {
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cell[a] < cell[b]; });
    return order;
  }

  // Compares the encoding of `order` on slots [0, limit) with the best leaf.
  int compare_prefix(const std::vector<int>& order, std::size_t limit) {
    actual_[0] = 0;
    for (std::size_t s = 0; s < limit; ++s) {
      if (s > 0) {
        actual_[s] = actual_[layout_.parent(s)] | (1u << order[layout_.top(s)]);
      }
      const Colour c = colour(actual_[s]);
      if (c != best_[s]) return c < best_[s] ? -1 : 1;
    }
    return 0;
  }

  void take_leaf(const std::vector<int>& order) {
    best_.resize(layout_.size());
    actual_[0] = 0;
    for (std::size_t s = 0; s < layout_.size(); ++s) {
      if (s > 0) {
        actual_[s] = actual_[layout_.parent(s)] | (1u << order[layout_.top(s)]);
      }
      best_[s] = colour(actual_[s]);
    }
    best_order_ = order;
    have_best_ = true;
  }

  void search(const std::vector<int>& cell, int cells) {
    if (++nodes_ > kNodeBudget) {
      throw BudgetError("canonical labelling exceeded " +
                        std::to_string(kNodeBudget) + " search nodes (n = " +
                        std::to_string(n_) + ", r = " + std::to_string(r_) +
                        ", " + std::to_string(cells) + " cells)");
    }
    const std::vector<int> order = order_of(cell);
    std::vector<int> cell_size(cells, 0);
    for (int i = 0; i < n_; ++i) ++cell_size[cell[i]];
    int fixed = 0;
    while (fixed < cells && cell_size[fixed] == 1) ++fixed;
    if (have_best_) {
      const int cmp = compare_prefix(order, layout_.block_begin(fixed));
      if (cmp > 0) return;
      if (cells == n_) {
        if (cmp < 0 || compare_prefix(order, layout_.size()) < 0) {
          take_leaf(order);
        }
        return;
      }
    } else if (cells == n_) {
      take_leaf(order);
      return;
    }
    const int target = fixed;
    std::vector<bool> tried(n_, false);
    for (int x = 0; x < n_; ++x) {
      if (cell[x] != target || tried[twin_[x]]) continue;
      tried[twin_[x]] = true;
      std::vector<int> child = cell;
      int child_cells = relabel(child, [&](int i) {
        const int split = (cell[i] == target && i != x) ? 1 : 0;
        return std::vector<std::uint64_t>{
            static_cast<std::uint64_t>(cell[i]) * 2 + split};
      });
      refine(child, child_cells);
      search(child, child_cells);
    }
  }

  const BallView& ball_;
  const BallLayout& layout_;
  int n_;
  int r_;
  std::vector<int> twin_;
  std::vector<Colour> pair_;
  std::vector<std::uint32_t> actual_;
  std::vector<Colour> best_;
  std::vector<int> best_order_;
  bool have_best_ = false;
  std::uint64_t nodes_ = 0;
};

std::string signature_r1_bytes(const Colouring& chi, Vertex v) {
  const int n = chi.dim().n();
  std::vector<Colour> colours(static_cast<std::size_t>(n) + 1);
  colours[0] = chi[v];
  for (int i = 0; i < n; ++i) colours[i + 1] = chi.at(v.index ^ (1u << i));
  std::sort(colours.begin() + 1, colours.end());
  return encode(1, n, colours);
}

std::string hex_of(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xF]);
  }
  return out;
}

}  // namespace

BallLayout::BallLayout(int n, int r) : n_(n), r_(r) {
  masks_.push_back(0);
  parent_.push_back(-1);
  top_.push_back(-1);
  block_begin_.push_back(1);
  for (int c = 0; c < n; ++c) {
    const std::size_t prefix = masks_.size();
    for (std::size_t s = 0; s < prefix; ++s) {
      if (std::popcount(masks_[s]) <= r - 1) {
        masks_.push_back(masks_[s] | (1u << c));
        parent_.push_back(static_cast<int>(s));
        top_.push_back(c);
      }
    }
    block_begin_.push_back(masks_.size());
  }
  if (n <= kDenseSlotLimit) {
    dense_slot_.assign(std::size_t{1} << n, -1);
    for (std::size_t s = 0; s < masks_.size(); ++s) {
      dense_slot_[masks_[s]] = static_cast<int>(s);
    }
  } else {
    for (std::size_t s = 0; s < masks_.size(); ++s) {
      sparse_slot_.emplace(masks_[s], static_cast<int>(s));
    }
  }
}

const BallLayout& BallLayout::get(int n, int r) {
  if (n < 1 || n > CubeDim::kMax) {
    throw DomainError("dimension out of range: " + std::to_string(n));
  }
  check_radius(r);
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<BallLayout>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, r}];
  if (!slot) slot.reset(new BallLayout(n, r));
  return *slot;
}

int BallLayout::slot_of(std::uint32_t mask) const {
  if (!dense_slot_.empty()) {
    return mask < dense_slot_.size() ? dense_slot_[mask] : -1;
  }
  const auto it = sparse_slot_.find(mask);
  return it == sparse_slot_.end() ? -1 : it->second;
}

Colour BallView::colour_of(std::uint32_t offset) const {
  const int slot = BallLayout::get(n, radius).slot_of(offset);
  if (slot < 0) {
    throw DomainError("offset lies outside the ball of radius " +
                      std::to_string(radius));
  }
  return colours[slot];
}

BallView ball_view(const Colouring& chi, Vertex v, int r) {
  chi.dim().check(v);
  const BallLayout& layout = BallLayout::get(chi.dim().n(), r);
  BallView view;
  view.n = chi.dim().n();
  view.radius = r;
  view.centre = v;
  view.colours.resize(layout.size());
  const auto masks = layout.masks();
  for (std::size_t s = 0; s < masks.size(); ++s) {
    view.colours[s] = chi.at(v.index ^ masks[s]);
  }
  return view;
}

BallView restrict_ball(const BallView& ball, int r) {
  if (r > ball.radius) {
    throw DomainError("cannot restrict a ball of radius " +
                      std::to_string(ball.radius) + " to radius " +
                      std::to_string(r));
  }
  const BallLayout& layout = BallLayout::get(ball.n, r);
  BallView view;
  view.n = ball.n;
  view.radius = r;
  view.centre = ball.centre;
  view.colours.resize(layout.size());
  const auto masks = layout.masks();
  for (std::size_t s = 0; s < masks.size(); ++s) {
    view.colours[s] = ball.colour_of(masks[s]);
  }
  return view;
}

BallView neighbour_ball(const BallView& ball, int coordinate, int r) {
  if (coordinate < 0 || coordinate >= ball.n) {
    throw DomainError("coordinate out of range: " + std::to_string(coordinate));
  }
  if (r + 1 > ball.radius) {
    throw DomainError("neighbour ball of radius " + std::to_string(r) +
                      " needs an enclosing radius of at least " +
                      std::to_string(r + 1));
  }
  const BallLayout& layout = BallLayout::get(ball.n, r);
  BallView view;
  view.n = ball.n;
  view.radius = r;
  view.centre = Vertex{ball.centre.index ^ (1u << coordinate)};
  view.colours.resize(layout.size());
  const auto masks = layout.masks();
  for (std::size_t s = 0; s < masks.size(); ++s) {
    view.colours[s] = ball.colour_of(masks[s] ^ (1u << coordinate));
  }
  return view;
}

BallSignature::BallSignature(std::string bytes) : bytes_(std::move(bytes)) {
  if (bytes_.size() < 3) throw DomainError("signature is too short");
  const int r = static_cast<unsigned char>(bytes_[0]);
  const int n = static_cast<unsigned char>(bytes_[1]);
  const int width = static_cast<unsigned char>(bytes_[2]);
  if (r < 1 || r > 3) throw DomainError("signature has invalid radius");
  if (n < 1 || n > CubeDim::kMax) {
    throw DomainError("signature has invalid dimension");
  }
  if (width != 1 && width != 2 && width != 4) {
    throw DomainError("signature has invalid colour width");
  }
  if (bytes_.size() - 3 != layout_size(n, r) * width) {
    throw DomainError("signature length does not match its header");
  }
}

int BallSignature::radius() const {
  return bytes_.empty() ? 0 : static_cast<unsigned char>(bytes_[0]);
}

int BallSignature::n() const {
  return bytes_.size() < 2 ? 0 : static_cast<unsigned char>(bytes_[1]);
}

std::string BallSignature::hex() const { return hex_of(bytes_); }

BallSignature BallSignature::from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw DomainError("odd-length hex signature");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw DomainError(std::string("invalid hex digit '") + c + "'");
  };
  std::string bytes;
  bytes.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    bytes.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  return BallSignature(std::move(bytes));
}

BallSignature signature_r1(const BallView& ball) {
  if (ball.radius != 1) {
    throw DomainError("signature_r1 needs a radius-1 ball");
  }
  std::vector<Colour> colours = ball.colours;
  std::sort(colours.begin() + 1, colours.end());
  return BallSignature(encode(1, ball.n, colours));
}

CanonicalForm canonical_form(const BallView& ball) {
  check_canon_budget(ball.n, ball.radius);
  return Canonicalizer(ball).run();
}

BallSignature signature_general(const BallView& ball) {
  return canonical_form(ball).signature;
}

BallView decode_signature(const BallSignature& signature) {
  const std::string& bytes = signature.bytes();
  if (bytes.empty()) throw DomainError("empty signature");
  const int width = static_cast<unsigned char>(bytes[2]);
  BallView view;
  view.n = signature.n();
  view.radius = signature.radius();
  view.centre = Vertex{0};
  const std::size_t count = (bytes.size() - 3) / width;
  view.colours.resize(count);
  for (std::size_t s = 0; s < count; ++s) {
    Colour c = 0;
    for (int b = 0; b < width; ++b) {
      c = (c << 8) | static_cast<unsigned char>(bytes[3 + s * width + b]);
    }
    view.colours[s] = c;
  }
  return view;
}

std::vector<int> twin_classes(const BallView& ball) {
  const BallLayout& layout = BallLayout::get(ball.n, ball.radius);
  const auto masks = layout.masks();
  std::vector<int> twin(ball.n);
  std::iota(twin.begin(), twin.end(), 0);
  for (int y = 1; y < ball.n; ++y) {
    for (int x = 0; x < y; ++x) {
      if (twin[x] != x) continue;
      const std::uint32_t bx = 1u << x;
      const std::uint32_t by = 1u << y;
      bool same = true;
      for (std::size_t s = 0; s < masks.size() && same; ++s) {
        const std::uint32_t m = masks[s];
        if ((m & bx) && !(m & by)) {
          same = ball.colours[s] ==
                 ball.colours[layout.slot_of((m & ~bx) | by)];
        }
      }
      if (same) {
        twin[y] = x;
        break;
      }
    }
  }
  return twin;
}

BallSignature ball_signature(const Colouring& chi, Vertex v, int r) {
  if (r == 1) {
    chi.dim().check(v);
    return BallSignature(signature_r1_bytes(chi, v));
  }
  return signature_general(ball_view(chi, v, r));
}

BallMultiset::BallMultiset(int n, std::uint32_t q, int r) : n_(n), q_(q), r_(r) {
  if (n < 1 || n > CubeDim::kMax) {
    throw DomainError("dimension out of range: " + std::to_string(n));
  }
  if (q < 1) throw DomainError("palette size must be positive");
  check_radius(r);
}

void BallMultiset::add(const BallSignature& signature, std::uint64_t count) {
  if (signature.n() != n_ || signature.radius() != r_) {
    throw DomainError("signature does not match the multiset's n and r");
  }
  if (count == 0) return;
  entries_[signature] += count;
  total_ += count;
}

BallMultiset extract_multiset(const Colouring& chi, int r) {
  const int n = chi.dim().n();
  if (r != 1) check_canon_budget(n, r);
  check_radius(r);
  const std::uint64_t order = chi.dim().order();
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (order < 256) workers = 1;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, order));

  std::vector<std::map<std::string, std::uint64_t>> partial(workers);
  auto work = [&](unsigned w) {
    const std::uint64_t lo = order * w / workers;
    const std::uint64_t hi = order * (w + 1) / workers;
    for (std::uint64_t v = lo; v < hi; ++v) {
      const Vertex x{static_cast<std::uint32_t>(v)};
      if (r == 1) {
        ++partial[w][signature_r1_bytes(chi, x)];
      } else {
        ++partial[w][signature_general(ball_view(chi, x, r)).bytes()];
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  BallMultiset ms(n, chi.palette_size(), r);
  for (const auto& part : partial) {
    for (const auto& [bytes, count] : part) ms.add(BallSignature(bytes), count);
  }
  return ms;
}

void write_multiset(std::ostream& out, const BallMultiset& ms) {
  out << "balls " << ms.n() << ' ' << ms.palette_size() << ' ' << ms.radius()
      << '\n';
  for (const auto& [sig, count] : ms.entries()) {
    out << count << ' ' << sig.hex() << '\n';
  }
}

BallMultiset read_multiset(std::istream& in) {
  std::string tag;
  long long n = 0;
  long long q = 0;
  long long r = 0;
  if (!(in >> tag >> n >> q >> r) || tag != "balls") {
    throw DomainError("expected header 'balls <n> <q> <r>'");
  }
  if (n < 1 || n > CubeDim::kMax || q < 1 || q > 0xFFFFFFFFLL) {
    throw DomainError("multiset header out of range");
  }
  BallMultiset ms(static_cast<int>(n), static_cast<std::uint32_t>(q),
                  static_cast<int>(r));
  std::string line;
  std::getline(in, line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    long long count = 0;
    std::string hex;
    if (!(row >> count >> hex) || count <= 0) {
      throw DomainError("malformed multiset line " + std::to_string(line_no));
    }
    const BallSignature sig = BallSignature::from_hex(hex);
    for (Colour c : decode_signature(sig).colours) {
      if (c >= ms.palette_size()) {
        throw DomainError("colour outside the palette on line " +
                          std::to_string(line_no));
      }
    }
    ms.add(sig, static_cast<std::uint64_t>(count));
  }
  return ms;
}

}  // namespace cubeshot
