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

#include <benchmark/benchmark.h>

#include "cubeshot/ball_canon.hpp"
#include "cubeshot/colouring.hpp"
#include "cubeshot/probability.hpp"
#include "cubeshot/shotgun.hpp"

namespace {

using namespace cubeshot;

Colouring random_colouring(int n, std::uint64_t seed) {
  return sample_colouring(CubeDim(n), ColourDistribution::two_point(0.5), Seed{seed});
}

void BM_BallSignature(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  const auto chi = random_colouring(n, 1);
  std::uint32_t v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ball_signature(chi, Vertex{v}, r));
    v = (v + 1) & chi.dim().full_mask();
  }
}
BENCHMARK(BM_BallSignature)->Args({10, 1})->Args({10, 2})->Args({12, 2})->Args({10, 3});

void BM_ExtractMultiset(benchmark::State& state) {
  const auto chi = random_colouring(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(extract_multiset(chi, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_ExtractMultiset)->Args({10, 2})->Args({12, 2})->Args({10, 3})->Unit(benchmark::kMillisecond);

void BM_ReconstructR3(benchmark::State& state) {
  const auto ms = extract_multiset(random_colouring(static_cast<int>(state.range(0)), 3), 3);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_r3(ms));
}
BENCHMARK(BM_ReconstructR3)->Arg(8)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ReconstructR2(benchmark::State& state) {
  const auto ms = extract_multiset(random_colouring(static_cast<int>(state.range(0)), 4), 2);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_r2(ms));
}
BENCHMARK(BM_ReconstructR2)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_VerifyEquivalence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto mode = state.range(1) ? EquivalenceMode::kFingerprint : EquivalenceMode::kExact;
  const CubeDim dim(n);
  const auto chi = random_colouring(n, 5);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = (i + 3) % n;
  const auto lambda = transport(chi, CubeAutomorphism(dim, perm, 0x5Au & dim.full_mask()));
  for (auto _ : state) benchmark::DoNotOptimize(verify_equivalence(chi, lambda, mode));
}
BENCHMARK(BM_VerifyEquivalence)->Args({8, 0})->Args({8, 1})->Args({10, 1})->Unit(benchmark::kMillisecond);

void BM_BinomialTail(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(chernoff_exact_tail(static_cast<std::uint64_t>(state.range(0)), 0.3, 0.4));
}
BENCHMARK(BM_BinomialTail)->Arg(60)->Arg(1 << 14);

}  // namespace

BENCHMARK_MAIN();
