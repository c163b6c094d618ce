//------------------------------------------------------------------------------
//
//   Copyright 2026 The sistrack Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Serial reference against the OpenMP kernels, on graphs a little larger than
// the desk-scale default so the parallel loops have work to split.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "sistrack/graph.hpp"
#include "sistrack/kernels.hpp"
#include "sistrack/sensor.hpp"

using namespace sistrack;

namespace {

std::vector<double> beliefs(std::size_t n)
{
  std::mt19937_64                        rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double>                    p(n);
  for (auto &x : p)
  {
    x = u(rng);
  }
  return p;
}

template <auto Kernel>
void BM_Predict(benchmark::State &state)
{
  auto const          n = static_cast<std::size_t>(state.range(0));
  auto const          g = generate_scale_free(n, 2, 7);
  auto const          prev = beliefs(n);
  std::vector<double> out(n);
  SisParams const     p(0.03, 0.2);
  for (auto _ : state)
  {
    Kernel(g, prev, p, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <auto Kernel>
void BM_Gains(benchmark::State &state)
{
  auto const           n    = static_cast<std::size_t>(state.range(0));
  auto const           sp   = SensorParams::isotropic(2, 2.0, 1.0);
  auto const           pred = beliefs(n);
  std::vector<double>  gains(n);
  kernels::GainRequest req{0.5, 64, 0, false};
  for (auto _ : state)
  {
    ++req.step_seed;
    Kernel(pred, sp, req, gains);
    benchmark::DoNotOptimize(gains.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

}  // namespace

BENCHMARK(BM_Predict<kernels::serial::predict_mean_field>)->Name("predict/serial")->Arg(200)->Arg(20000);
BENCHMARK(BM_Predict<kernels::omp::predict_mean_field>)->Name("predict/omp")->Arg(200)->Arg(20000);
BENCHMARK(BM_Gains<kernels::serial::node_gains>)->Name("gains/serial")->Arg(200)->Arg(2000);
BENCHMARK(BM_Gains<kernels::omp::node_gains>)->Name("gains/omp")->Arg(200)->Arg(2000);

BENCHMARK_MAIN();
