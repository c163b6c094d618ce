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
#include <vector>

#include "sistrack/graph.hpp"
#include "sistrack/rng.hpp"

namespace sistrack {

/// Ground-truth node states at one time step: 0 = susceptible, 1 = infected.
struct StateVector
{
  std::vector<std::uint8_t> states;
  std::size_t               time_index = 0;

  std::size_t size() const noexcept { return states.size(); }
  std::size_t infected_count() const noexcept;
  bool        all_susceptible() const noexcept { return infected_count() == 0; }
};

struct SisParams
{
  double beta  = 0.0;  ///< per-neighbor transmission probability per step
  double gamma = 1.0;  ///< recovery probability per step

  SisParams() = default;
  SisParams(double beta_, double gamma_);

  double tau() const noexcept { return beta / gamma; }

  static SisParams from_tau(double tau, double gamma);
};

/**
 * One synchronous Reed-Frost SIS step. Infected nodes recover with
 * probability gamma; susceptible nodes become infected with probability
 * 1 - prod_{j in N(i)} (1 - beta z_j). All draws use the states at k - 1.
 */
StateVector step_truth(Graph const &g, StateVector const &z, SisParams const &p, Rng &rng);

/// Exactly `n_seed_infections` infected nodes chosen uniformly at random.
StateVector sample_initial_state(Graph const &g, std::size_t n_seed_infections, Rng &rng);

}  // namespace sistrack
