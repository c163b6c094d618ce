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
#include <stdexcept>

#include "sistrack/graph.hpp"

namespace sistrack {

struct SpectralResult
{
  double      spectral_radius = 0.0;
  std::size_t iterations      = 0;
  double      residual        = 0.0;
};

/// Raised when power iteration exhausts its budget; carries the best iterate.
class ConvergenceError : public std::runtime_error
{
public:
  ConvergenceError(std::string const &what, SpectralResult best)
    : std::runtime_error(what)
    , best_(best)
  {}

  SpectralResult const &best() const noexcept { return best_; }

private:
  SpectralResult best_;
};

inline constexpr double      kSpectralTol     = 1e-10;
inline constexpr std::size_t kSpectralMaxIter = 10000;

/**
 * Largest adjacency eigenvalue by power iteration.
 *
 * Iterates on A + I from the normalized all-ones vector so that bipartite
 * graphs (where -lambda_1 is also an eigenvalue) still converge. The estimate
 * is the Rayleigh quotient of A; the residual is ||Av - lambda v||_inf with
 * ||v||_2 = 1.
 */
SpectralResult spectral_radius(Graph const &g, double tol = kSpectralTol,
                               std::size_t max_iter = kSpectralMaxIter);

/// 1 / lambda_1(A). Throws DomainError for an edgeless graph.
double epidemic_threshold(Graph const &g);
double epidemic_threshold(SpectralResult const &spectral);

}  // namespace sistrack
