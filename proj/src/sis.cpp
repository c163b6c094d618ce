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

#include "sistrack/sis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sistrack/errors.hpp"

namespace sistrack {

std::size_t StateVector::infected_count() const noexcept
{
  return static_cast<std::size_t>(std::count(states.begin(), states.end(), std::uint8_t{1}));
}

SisParams::SisParams(double beta_, double gamma_)
  : beta(beta_)
  , gamma(gamma_)
{
  if (!(beta >= 0.0 && beta <= 1.0))
  {
    throw ParameterError("beta must lie in [0, 1]");
  }
  if (!(gamma > 0.0 && gamma <= 1.0))
  {
    throw ParameterError("gamma must lie in (0, 1]");
  }
}

SisParams SisParams::from_tau(double tau, double gamma)
{
  return SisParams{tau * gamma, gamma};
}

StateVector step_truth(Graph const &g, StateVector const &z, SisParams const &p, Rng &rng)
{
  if (z.size() != g.node_count())
  {
    throw ParameterError("state vector length does not match the graph");
  }
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  StateVector                            next{std::vector<std::uint8_t>(z.size(), 0), z.time_index + 1};

  for (NodeId i = 0; i < g.node_count(); ++i)
  {
    // One uniform per node, whatever the state, so draws line up across
    // parameter values.
    double const u = u01(rng);
    if (z.states[i] != 0)
    {
      next.states[i] = u < p.gamma ? 0 : 1;
    }
    else
    {
      double escape = 1.0;
      for (auto j : g.neighbors(i))
      {
        if (z.states[j] != 0)
        {
          escape *= 1.0 - p.beta;
        }
      }
      next.states[i] = u < 1.0 - escape ? 1 : 0;
    }
  }
  return next;
}

StateVector sample_initial_state(Graph const &g, std::size_t n_seed_infections, Rng &rng)
{
  std::size_t const n = g.node_count();
  if (n_seed_infections > n)
  {
    throw ParameterError("initial infections exceed node count");
  }
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  // Partial Fisher-Yates: the first k entries form a uniform k-subset.
  for (std::size_t i = 0; i < n_seed_infections; ++i)
  {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  StateVector z{std::vector<std::uint8_t>(n, 0), 0};
  for (std::size_t i = 0; i < n_seed_infections; ++i)
  {
    z.states[order[i]] = 1;
  }
  return z;
}

}  // namespace sistrack
