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

#include <gtest/gtest.h>

#include "sistrack/kernels.hpp"
#include "sistrack/policy.hpp"

using namespace sistrack;

namespace {

std::vector<double> random_beliefs(std::size_t n, std::uint64_t seed)
{
  Rng                                    rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double>                    p(n);
  for (auto &x : p)
  {
    x = u(rng);
  }
  p[0] = 0.0;
  return p;
}

}  // namespace

TEST(Kernels, PredictSerialEqualsParallel)
{
  auto const          g    = generate_scale_free(2000, 3, 4);
  auto const          prev = random_beliefs(2000, 1);
  SisParams const     p(0.07, 0.2);
  std::vector<double> a(2000);
  std::vector<double> b(2000);
  kernels::serial::predict_mean_field(g, prev, p, a);
  for (int threads : {1, 2, 4})
  {
    kernels::set_threads(threads);
    kernels::omp::predict_mean_field(g, prev, p, b);
    EXPECT_EQ(a, b) << threads << " threads";
  }
  kernels::set_threads(0);
}

TEST(Kernels, GainsSerialEqualsParallel)
{
  auto const           sp   = SensorParams::isotropic(2, 2.0, 1.0);
  auto const           pred = random_beliefs(500, 2);
  kernels::GainRequest req{0.5, 32, 12345, false};
  std::vector<double>  a(500);
  std::vector<double>  b(500);
  kernels::serial::node_gains(pred, sp, req, a);
  for (int threads : {1, 3, 8})
  {
    kernels::set_threads(threads);
    kernels::omp::node_gains(pred, sp, req, b);
    EXPECT_EQ(a, b) << threads << " threads";
  }
  kernels::set_threads(0);
  EXPECT_EQ(a[0], 0.0);
}

TEST(Kernels, GainSubstreams)
{
  kernels::GainRequest indep{0.5, 16, 99, false};
  kernels::GainRequest crn{0.5, 16, 99, true};
  EXPECT_NE(kernels::gain_substream_seed(indep, 1), kernels::gain_substream_seed(indep, 2));
  EXPECT_EQ(kernels::gain_substream_seed(crn, 1), kernels::gain_substream_seed(crn, 2));

  // With shared draws, equal beliefs score identically.
  auto const          sp = SensorParams::isotropic(2, 2.0, 1.0);
  std::vector<double> pred(4, 0.4);
  std::vector<double> g(4);
  kernels::serial::node_gains(pred, sp, crn, g);
  EXPECT_EQ(g[0], g[3]);
  kernels::serial::node_gains(pred, sp, indep, g);
  EXPECT_NE(g[0], g[3]);
}
