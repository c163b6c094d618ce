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

#include "sistrack/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sistrack/policy.hpp"
#include "sistrack/rng.hpp"

namespace sistrack::kernels {

namespace {

inline double mean_field_node(Graph const &g, std::span<const double> prev, SisParams const &p, NodeId i) noexcept
{
  double escape = 1.0;
  for (auto j : g.neighbors(i))
  {
    escape *= 1.0 - p.beta * prev[j];
  }
  double const pi = prev[i];
  return (1.0 - p.gamma) * pi + (1.0 - pi) * (1.0 - escape);
}

inline double gain_node(std::span<const double> predictive, SensorParams const &sp, GainRequest const &req, NodeId i)
{
  Rng rng{gain_substream_seed(req, i)};
  return estimate_node_gain(predictive[i], sp, req.alpha, req.mc_samples, rng).mean;
}

}  // namespace

std::uint64_t gain_substream_seed(GainRequest const &req, NodeId i) noexcept
{
  return req.common_random_numbers ? derive_seed({req.step_seed, static_cast<std::uint64_t>(Stream::kGain)})
                                    : derive_seed({req.step_seed, static_cast<std::uint64_t>(Stream::kGain), i});
}

namespace serial {

void predict_mean_field(Graph const &g, std::span<const double> prev, SisParams const &p, std::span<double> out)
{
  for (NodeId i = 0; i < g.node_count(); ++i)
  {
    out[i] = mean_field_node(g, prev, p, i);
  }
}

void node_gains(std::span<const double> predictive, SensorParams const &sp, GainRequest const &req,
                std::span<double> gains)
{
  for (std::size_t i = 0; i < predictive.size(); ++i)
  {
    gains[i] = gain_node(predictive, sp, req, static_cast<NodeId>(i));
  }
}

}  // namespace serial

namespace omp {

void predict_mean_field(Graph const &g, std::span<const double> prev, SisParams const &p, std::span<double> out)
{
  auto const n = static_cast<std::ptrdiff_t>(g.node_count());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
  {
    out[static_cast<std::size_t>(i)] = mean_field_node(g, prev, p, static_cast<NodeId>(i));
  }
}

void node_gains(std::span<const double> predictive, SensorParams const &sp, GainRequest const &req,
                std::span<double> gains)
{
  auto const n = static_cast<std::ptrdiff_t>(predictive.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i)
  {
    gains[static_cast<std::size_t>(i)] = gain_node(predictive, sp, req, static_cast<NodeId>(i));
  }
}

}  // namespace omp

int max_threads() noexcept
{
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) noexcept
{
#ifdef _OPENMP
  if (n > 0)
  {
    omp_set_num_threads(n);
  }
#else
  (void)n;
#endif
}

}  // namespace sistrack::kernels
