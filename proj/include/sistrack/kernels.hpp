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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "sistrack/graph.hpp"
#include "sistrack/sensor.hpp"
#include "sistrack/sis.hpp"

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP version; both produce bit-identical output for any thread count,
// since each output element depends only on its own inputs and RNG substream.

namespace sistrack::kernels {

struct GainRequest
{
  double        alpha                 = 0.5;
  std::size_t   mc_samples            = 64;
  std::uint64_t step_seed             = 0;
  bool          common_random_numbers = false;
};

/// Seed of the Monte-Carlo substream used for node `i` at one step.
std::uint64_t gain_substream_seed(GainRequest const &req, NodeId i) noexcept;

namespace serial {

void predict_mean_field(Graph const &g, std::span<const double> prev, SisParams const &p, std::span<double> out);

void node_gains(std::span<const double> predictive, SensorParams const &sp, GainRequest const &req,
                std::span<double> gains);

}  // namespace serial

namespace omp {

void predict_mean_field(Graph const &g, std::span<const double> prev, SisParams const &p, std::span<double> out);

void node_gains(std::span<const double> predictive, SensorParams const &sp, GainRequest const &req,
                std::span<double> gains);

}  // namespace omp

/// Thread count OpenMP kernels will use (1 when built without OpenMP).
int max_threads() noexcept;
void set_threads(int n) noexcept;

}  // namespace sistrack::kernels
