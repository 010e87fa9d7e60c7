// Copyright 2026 The pwshapes Authors.
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


// Serial against parallel runs of the quadrature, mesh and Hausdorff kernels.

#include <benchmark/benchmark.h>

#include "pws/body.hpp"
#include "pws/isoperimetry.hpp"
#include "pws/kernels.hpp"
#include "pws/sphere.hpp"

namespace {

using pws::Exec;

Exec mode(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

const pws::WulffSphere& sphere() {
  static const pws::WulffSphere S(pws::parse_body("lp:3"), 1.0);
  return S;
}

void BM_Area(benchmark::State& state) {
  const Exec e = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(pws::area(sphere(), 512, e));
}

void BM_Volume(benchmark::State& state) {
  const Exec e = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(pws::volume(sphere(), 512, e));
}

void BM_Mesh(benchmark::State& state) {
  const Exec e = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(pws::mesh(sphere(), 64, 64, true, e));
}

void BM_Hausdorff(benchmark::State& state) {
  const Exec e = mode(state);
  static const pws::Mesh a = pws::mesh(sphere(), 64, 64);
  static const pws::Mesh b = pws::mesh(pws::WulffSphere(pws::parse_body("lp:4"), 1.0), 64, 64);
  for (auto _ : state) benchmark::DoNotOptimize(pws::hausdorff_distance(a, b, e));
}

// Arg 0 is the serial reference, 1 the OpenMP path.
BENCHMARK(BM_Area)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Volume)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mesh)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hausdorff)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
