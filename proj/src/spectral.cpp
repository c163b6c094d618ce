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

#include "sistrack/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace sistrack {

namespace {

void apply_adjacency(Graph const &g, std::vector<double> const &v, std::vector<double> &out)
{
  for (NodeId i = 0; i < g.node_count(); ++i)
  {
    double s = 0.0;
    for (auto j : g.neighbors(i))
    {
      s += v[j];
    }
    out[i] = s;
  }
}

double norm2(std::vector<double> const &v)
{
  double s = 0.0;
  for (double x : v)
  {
    s += x * x;
  }
  return std::sqrt(s);
}

}  // namespace

SpectralResult spectral_radius(Graph const &g, double tol, std::size_t max_iter)
{
  std::size_t const n = g.node_count();
  if (n == 0)
  {
    throw ParameterError("spectral_radius of an empty graph");
  }
  if (!(tol > 0.0))
  {
    throw ParameterError("spectral_radius requires tol > 0");
  }

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> av(n);
  SpectralResult      best{0.0, 0, std::numeric_limits<double>::infinity()};

  for (std::size_t it = 1; it <= max_iter; ++it)
  {
    apply_adjacency(g, v, av);
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      lambda += v[i] * av[i];
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      residual = std::max(residual, std::abs(av[i] - lambda * v[i]));
    }
    if (residual < best.residual)
    {
      best = {lambda, it, residual};
    }
    if (residual <= tol)
    {
      return {lambda, it, residual};
    }
    // (A + I) v
    for (std::size_t i = 0; i < n; ++i)
    {
      av[i] += v[i];
    }
    double const nrm = norm2(av);
    for (std::size_t i = 0; i < n; ++i)
    {
      v[i] = av[i] / nrm;
    }
  }
  throw ConvergenceError("power iteration did not converge", best);
}

double epidemic_threshold(SpectralResult const &spectral)
{
  if (!(spectral.spectral_radius > 0.0))
  {
    throw DomainError("epidemic threshold undefined: spectral radius is zero");
  }
  return 1.0 / spectral.spectral_radius;
}

double epidemic_threshold(Graph const &g)
{
  if (g.edge_count() == 0)
  {
    throw DomainError("epidemic threshold undefined for an edgeless graph");
  }
  return epidemic_threshold(spectral_radius(g));
}

}  // namespace sistrack
