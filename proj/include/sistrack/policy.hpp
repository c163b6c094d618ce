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
#include <string_view>
#include <vector>

#include "sistrack/belief.hpp"
#include "sistrack/graph.hpp"
#include "sistrack/rng.hpp"
#include "sistrack/sensor.hpp"

namespace sistrack {

enum class PolicyKind
{
  kNone,
  kRandom,
  kHub,
  kAdaptive,
};

std::string_view to_string(PolicyKind kind) noexcept;
PolicyKind       parse_policy_kind(std::string_view name);

struct PolicyConfig
{
  PolicyKind    kind       = PolicyKind::kAdaptive;
  std::size_t   m          = 40;    ///< measurements per step
  double        alpha      = 0.5;   ///< divergence order, in (0, 1)
  std::size_t   mc_samples = 64;    ///< observation draws per node per step
  std::uint64_t seed       = 0;
  /// Share one observation substream across all candidate nodes in a step.
  bool common_random_numbers = false;

  void validate(std::size_t n) const;
};

/**
 * Renyi-type alpha-divergence (1 / (alpha - 1)) log sum_i q_i (p_i / q_i)^alpha
 * between two distributions on the same finite support.
 *
 * Throws DomainError when the supports differ in length, an input is not a
 * probability vector, or q_i = 0 where p_i > 0.
 */
double alpha_divergence(std::span<const double> p, std::span<const double> q, double alpha);

/// Bernoulli specialization, evaluated in log space.
double bernoulli_alpha_divergence(double p, double q, double alpha);

struct GainEstimate
{
  double mean      = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo E_g[D_alpha(posterior(y) || q)] for a node with predictive
/// probability q, drawing y from the predictive mixture g.
GainEstimate estimate_node_gain(double q, SensorParams const &sp, double alpha, std::size_t mc_samples, Rng &rng);

double expected_node_gain(NodeId node, BeliefVector const &predictive, SensorParams const &sp, double alpha,
                          std::size_t mc_samples, Rng &rng);

/// (1 / (alpha - 1)) log E_{z ~ q}[E_g[(f_z / g)^alpha]], inner expectation by quadrature.
/// Never exceeds the exact expected gain.
double jensen_lower_bound(double q, SensorParams const &sp, double alpha);
double jensen_lower_bound(NodeId node, BeliefVector const &predictive, SensorParams const &sp, double alpha);

struct Selection
{
  std::vector<NodeId> nodes;
  std::vector<double> gains;  ///< NaN for policies that do not score nodes
};

/// Indices of the m largest scores, descending, ties to the lower index.
std::vector<NodeId> top_by_score(std::span<const double> scores, std::size_t m);

/**
 * Greedy marginal selection: the per-node expected gain does not depend on
 * the nodes already chosen, so greedy construction reduces to the top m by
 * gain. One step seed is drawn from `rng`; node i uses its own substream.
 */
Selection greedy_select(BeliefVector const &predictive, SensorParams const &sp, PolicyConfig const &cfg, Rng &rng);

/// none -> {}, random -> uniform m-subset, hub -> top m by degree (ties to lower index).
std::vector<NodeId> baseline_select(PolicyKind kind, Graph const &g, std::size_t m, Rng &rng);

/// Dispatches on cfg.kind.
Selection select_nodes(PolicyConfig const &cfg, Graph const &g, BeliefVector const &predictive,
                       SensorParams const &sp, Rng &rng);

}  // namespace sistrack
