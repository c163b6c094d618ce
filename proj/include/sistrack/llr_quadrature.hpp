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

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sistrack/sensor.hpp"

namespace sistrack {

/**
 * E_g[h(L)] where L = log f1(y) - log f0(y) and y ~ g = p f1 + (1 - p) f0.
 *
 * With a shared covariance L is Gaussian under each class,
 * N(+d2/2, d2) for z = 1 and N(-d2/2, d2) for z = 0, so any expectation over a
 * function of the likelihood ratio reduces to two 1-D Gaussian integrals.
 */
template <typename F>
double mixture_llr_expectation(double p, SensorParams const &sp, F &&h)
{
  double const d2 = sp.separation_sq();
  if (!(d2 > 0.0))
  {
    return h(0.0);
  }
  double const sd  = std::sqrt(d2);
  auto         one = [&](double mean) {
    auto integrand = [&](double x) {
      return h(mean + sd * x) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    };
    constexpr double inf = std::numeric_limits<double>::infinity();
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -inf, inf, 15, 1e-13);
  };
  double out = 0.0;
  if (p > 0.0)
  {
    out += p * one(0.5 * d2);
  }
  if (p < 1.0)
  {
    out += (1.0 - p) * one(-0.5 * d2);
  }
  return out;
}

}  // namespace sistrack
