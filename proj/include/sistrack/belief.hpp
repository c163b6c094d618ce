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
#include <span>
#include <vector>

#include "sistrack/graph.hpp"
#include "sistrack/sensor.hpp"
#include "sistrack/sis.hpp"

namespace sistrack {

enum class BeliefKind
{
  kPredictive,  ///< p_{k|k-1}: before fusing time-k measurements
  kUpdated,     ///< p_k: after fusing time-k measurements
};

/// Updated beliefs of sampled nodes are clamped to [kBeliefClamp, 1 - kBeliefClamp].
inline constexpr double kBeliefClamp = 1e-12;

/// Per-node marginal probability of infection.
struct BeliefVector
{
  std::vector<double> probs;
  BeliefKind          kind       = BeliefKind::kUpdated;
  std::size_t         time_index = 0;

  std::size_t size() const noexcept { return probs.size(); }
};

/// Exact indicator belief of a known initial configuration (kind = updated, k = 0).
BeliefVector initial_belief(StateVector const &z0);

/**
 * Mean-field propagation
 *   p'_i = (1 - gamma) p_i + (1 - p_i) [1 - prod_{j in N(i)} (1 - beta p_j)]
 * evaluated with time k - 1 values throughout. Runs the OpenMP kernel.
 */
BeliefVector predict_mean_field(Graph const &g, BeliefVector const &updated, SisParams const &p);

/// Bayes posterior of one node from its predictive probability and log f1 - log f0.
/// Computed as a log-sum-exp; not clamped.
double posterior_probability(double p_pred, double log_f1, double log_f0) noexcept;

/**
 * Fuses time-k observations. Sampled nodes get the clamped Bayes posterior;
 * every other node keeps its predictive value bit-for-bit. Throws
 * ParameterError on a duplicate or out-of-range node.
 */
BeliefVector bayes_update(BeliefVector const &predictive, std::span<const Observation> obs, SensorParams const &sp);

/// Pearson chi^2(f1 || p f1 + (1 - p) f0) = E_g[(f1/g - 1)^2].
double chi_square_to_mixture(double p_pred, SensorParams const &sp);

/**
 * Trace of the conditional covariance of the updated posterior:
 * sum over sampled i of chi^2(f1 || g_i) p_i^2. Unsampled nodes contribute 0.
 */
double total_deviation(BeliefVector const &predictive, std::span<const NodeId> sampled, SensorParams const &sp);

}  // namespace sistrack
