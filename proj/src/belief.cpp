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

#include "sistrack/belief.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sistrack/errors.hpp"
#include "sistrack/kernels.hpp"
#include "sistrack/llr_quadrature.hpp"

namespace sistrack {

BeliefVector initial_belief(StateVector const &z0)
{
  BeliefVector b{std::vector<double>(z0.size()), BeliefKind::kUpdated, z0.time_index};
  std::transform(z0.states.begin(), z0.states.end(), b.probs.begin(),
                 [](std::uint8_t s) { return s != 0 ? 1.0 : 0.0; });
  return b;
}

BeliefVector predict_mean_field(Graph const &g, BeliefVector const &updated, SisParams const &p)
{
  if (updated.size() != g.node_count())
  {
    throw ParameterError("belief vector length does not match the graph");
  }
  BeliefVector out{std::vector<double>(updated.size()), BeliefKind::kPredictive, updated.time_index + 1};
  kernels::omp::predict_mean_field(g, updated.probs, p, out.probs);
  return out;
}

double posterior_probability(double p_pred, double log_f1, double log_f0) noexcept
{
  if (p_pred <= 0.0)
  {
    return 0.0;
  }
  if (p_pred >= 1.0)
  {
    return 1.0;
  }
  double const a   = log_f1 + std::log(p_pred);
  double const b   = log_f0 + std::log1p(-p_pred);
  double const m   = std::max(a, b);
  double const lse = m + std::log(std::exp(a - m) + std::exp(b - m));
  return std::exp(a - lse);
}

BeliefVector bayes_update(BeliefVector const &predictive, std::span<const Observation> obs, SensorParams const &sp)
{
  BeliefVector      out{predictive.probs, BeliefKind::kUpdated, predictive.time_index};
  std::vector<bool> seen(predictive.size(), false);
  for (auto const &o : obs)
  {
    if (o.node >= predictive.size())
    {
      throw ParameterError("observation of unknown node " + std::to_string(o.node));
    }
    if (seen[o.node])
    {
      throw ParameterError("node " + std::to_string(o.node) + " observed twice in one step");
    }
    seen[o.node] = true;
  }
  for (auto const &o : obs)
  {
    double const post = posterior_probability(predictive.probs[o.node], sp.log_density(o.value, 1),
                                              sp.log_density(o.value, 0));
    out.probs[o.node] = std::clamp(post, kBeliefClamp, 1.0 - kBeliefClamp);
  }
  return out;
}

double chi_square_to_mixture(double p_pred, SensorParams const &sp)
{
  return mixture_llr_expectation(p_pred, sp, [p_pred](double llr) {
    double const r = 1.0 / (p_pred + (1.0 - p_pred) * std::exp(-llr));
    return (r - 1.0) * (r - 1.0);
  });
}

double total_deviation(BeliefVector const &predictive, std::span<const NodeId> sampled, SensorParams const &sp)
{
  double total = 0.0;
  for (auto i : sampled)
  {
    if (i >= predictive.size())
    {
      throw ParameterError("sampled node out of range");
    }
    double const p = predictive.probs[i];
    total += chi_square_to_mixture(p, sp) * p * p;
  }
  return total;
}

}  // namespace sistrack
