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

// Binomial point and tail probabilities, the neighbourhood statistics psi
// and Psi, and exact counts of 1-ball colour types.

#ifndef CUBESHOT_PROBABILITY_HPP_
#define CUBESHOT_PROBABILITY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubeshot/colouring.hpp"
#include "cubeshot/hypercube.hpp"

namespace cubeshot {

// exp(-eps^2 n p / 2), an upper bound on P[Bin(n,p) <= np(1-eps)].
double chernoff_upper(std::uint64_t n, double p, double eps);

// C(n,k) p^k (1-p)^(n-k) through long-double log-gamma.
double binomial_point(std::uint64_t n, double p, std::uint64_t k);

// P[Bin(n,p) <= k] and P[Bin(n,p) >= k] by compensated summation of points.
double binomial_lower_tail(std::uint64_t n, double p, std::uint64_t k);
double binomial_upper_tail(std::uint64_t n, double p, std::uint64_t k);

// P[Bin(n,p) <= np(1-eps)], the event the Chernoff bound controls. The
// threshold is floor(np(1-eps) + 1e-9) so representation error in the
// product does not move the event.
double chernoff_exact_tail(std::uint64_t n, double p, double eps);

struct AsymptoticRatio {
  bool applicable = false;
  double target_real = 0.0;    // np + c sqrt(np ln np)
  std::uint64_t target = 0;    // rounded to nearest
  double rounding = 0.0;       // target - target_real
  double exponent = 0.0;       // 1/2 + c^2 / (2(1-p))
  double point = 0.0;          // P[Bin = target]
  double theta = 0.0;          // (np)^(-exponent)
  double ratio = 0.0;          // point / theta
  double tail = 0.0;           // P[Bin >= target]
  double tail_ratio = 0.0;     // tail / (point (np)^(1/3))
};

AsymptoticRatio bounds_asymptotic_ratio(std::uint64_t n, double p, double c);

// Sum of neighbour colours minus n(1-p); needs a palette of at most 2.
double psi(const Colouring& chi, Vertex w, double p);
// psi over the neighbours of w, ascending.
std::vector<double> psi_set(const Colouring& chi, Vertex w, double p);

// q C(n+q-1, q-1), exact.
boost::multiprecision::cpp_int count_ball_types(std::uint64_t n,
                                                std::uint64_t q);

}  // namespace cubeshot

#endif  // CUBESHOT_PROBABILITY_HPP_
