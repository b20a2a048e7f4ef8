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

#include "cubeshot/probability.hpp"

#include <algorithm>
#include <cmath>

#include "cubeshot/errors.hpp"

namespace cubeshot {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("probability must lie in [0, 1]");
  }
}

// Kahan-compensated sum of binomial points over [lo, hi].
double point_sum(std::uint64_t n, double p, std::uint64_t lo, std::uint64_t hi) {
  long double sum = 0.0L;
  long double carry = 0.0L;
  for (std::uint64_t k = lo; k <= hi; ++k) {
    const long double y = binomial_point(n, p, k) - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(std::min(sum, 1.0L));
}

int palette_two_check(const Colouring& chi) {
  if (chi.palette_size() > 2) {
    throw DomainError("psi needs a palette of at most 2 colours, got " +
                      std::to_string(chi.palette_size()));
  }
  return chi.dim().n();
}

std::uint64_t neighbour_sum(const Colouring& chi, std::uint32_t w) {
  std::uint64_t sum = 0;
  for (int i = 0; i < chi.dim().n(); ++i) sum += chi.at(w ^ (1u << i));
  return sum;
}

}  // namespace

double chernoff_upper(std::uint64_t n, double p, double eps) {
  check_probability(p);
  if (!(eps > 0.0)) throw DomainError("epsilon must be positive");
  return std::exp(-eps * eps * static_cast<double>(n) * p / 2.0);
}

double binomial_point(std::uint64_t n, double p, std::uint64_t k) {
  check_probability(p);
  if (k > n) throw DomainError("k must lie in [0, n]");
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const long double ln = static_cast<long double>(n);
  const long double lk = static_cast<long double>(k);
  const long double log_choose =
      lgammal(ln + 1.0L) - lgammal(lk + 1.0L) - lgammal(ln - lk + 1.0L);
  const long double lp = static_cast<long double>(p);
  const long double log_point =
      log_choose + lk * logl(lp) + (ln - lk) * log1pl(-lp);
  return static_cast<double>(expl(log_point));
}

double binomial_lower_tail(std::uint64_t n, double p, std::uint64_t k) {
  return point_sum(n, p, 0, std::min(k, n));
}

double binomial_upper_tail(std::uint64_t n, double p, std::uint64_t k) {
  if (k > n) return 0.0;
  return point_sum(n, p, k, n);
}

double chernoff_exact_tail(std::uint64_t n, double p, double eps) {
  check_probability(p);
  const double threshold =
      std::floor(static_cast<double>(n) * p * (1.0 - eps) + 1e-9);
  if (threshold < 0.0) return 0.0;
  return binomial_lower_tail(n, p, static_cast<std::uint64_t>(threshold));
}

AsymptoticRatio bounds_asymptotic_ratio(std::uint64_t n, double p, double c) {
  check_probability(p);
  AsymptoticRatio out;
  const double np = static_cast<double>(n) * p;
  if (np <= 1.0 || p >= 1.0) return out;
  out.target_real = np + c * std::sqrt(np * std::log(np));
  const double rounded = std::nearbyint(out.target_real);
  if (rounded < 0.0 || rounded > static_cast<double>(n)) return out;
  out.applicable = true;
  out.target = static_cast<std::uint64_t>(rounded);
  out.rounding = rounded - out.target_real;
  out.exponent = 0.5 + c * c / (2.0 * (1.0 - p));
  out.point = binomial_point(n, p, out.target);
  out.theta = std::pow(np, -out.exponent);
  out.ratio = out.point / out.theta;
  out.tail = binomial_upper_tail(n, p, out.target);
  out.tail_ratio = out.tail / (out.point * std::cbrt(np));
  return out;
}

double psi(const Colouring& chi, Vertex w, double p) {
  const int n = palette_two_check(chi);
  chi.dim().check(w);
  return static_cast<double>(neighbour_sum(chi, w.index)) - n * (1.0 - p);
}

std::vector<double> psi_set(const Colouring& chi, Vertex w, double p) {
  const int n = palette_two_check(chi);
  chi.dim().check(w);
  std::vector<double> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(psi(chi, flip(w, i), p));
  std::sort(out.begin(), out.end());
  return out;
}

boost::multiprecision::cpp_int count_ball_types(std::uint64_t n,
                                                std::uint64_t q) {
  using boost::multiprecision::cpp_int;
  if (q == 0) return 0;
  // C(n+q-1, q-1) built incrementally; every partial quotient is exact.
  cpp_int choose = 1;
  for (std::uint64_t i = 1; i < q; ++i) {
    choose *= n + i;
    choose /= i;
  }
  return choose * q;
}

}  // namespace cubeshot
