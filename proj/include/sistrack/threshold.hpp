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
#include <string_view>
#include <vector>

#include "sistrack/belief.hpp"
#include "sistrack/graph.hpp"
#include "sistrack/sensor.hpp"
#include "sistrack/sis.hpp"
#include "sistrack/spectral.hpp"

namespace sistrack {

enum class BoundCase
{
  kUnsampled,
  kDeltaPos,  ///< f1 >= f0 at the observed value
  kDeltaNeg,  ///< f1 < f0 at the observed value
};

std::string_view to_string(BoundCase c) noexcept;
BoundCase        parse_bound_case(std::string_view name);

/**
 * Per-node coefficients of the element-wise bound p_k <= C_k p_{k|k-1}.
 *
 * With r = f1/f0 and a = (f1 - f0)/f0 = r - 1 at the observed value:
 * unsampled nodes have b = 1; sampled nodes have b = r (1 + |a|) and are
 * valid only when |a p_pred| < 1.
 */
struct BoundCoefficients
{
  std::vector<double>    b;
  std::vector<double>    likelihood_ratio;  ///< r = f1/f0, 1 for unsampled nodes
  std::vector<BoundCase> case_tag;
  std::vector<bool>      valid;
  std::size_t            time_index = 0;

  std::size_t size() const noexcept { return b.size(); }
  double      max_b() const noexcept;
};

BoundCoefficients bound_coefficients(BeliefVector const &predictive, std::span<const Observation> obs,
                                     SensorParams const &sp);

/// Upper bound on p_k for one node. The delta_neg case adds the exact tail
/// r p x^2 / (1 - x) of the geometric series, x = |a| p.
double posterior_bound_value(BoundCase c, double b, double likelihood_ratio, double p_pred);

/// One predict/measure/update cycle of the filter.
struct FilterStep
{
  BeliefVector             predictive;
  std::vector<Observation> observations;
  BeliefVector             updated;
};

struct BoundRow
{
  std::size_t time_index = 0;
  NodeId      node       = 0;
  BoundCase   case_tag   = BoundCase::kUnsampled;
  double      b          = 1.0;
  double      p_pred     = 0.0;
  double      p_updated  = 0.0;
  double      bound      = 0.0;
  bool        valid      = true;
  bool        violated   = false;
};

struct BoundReport
{
  std::vector<BoundRow>    rows;
  std::size_t              checked    = 0;  ///< valid (node, step) pairs
  std::size_t              invalid    = 0;  ///< excluded by the |a p| < 1 precondition
  std::size_t              violations = 0;
  std::vector<BoundCoefficients> coefficients;  ///< one per step, for the dominant-mode envelope
};

/// Relative slack allowed for floating-point rounding when comparing p_k to its bound.
inline constexpr double kBoundRelTol = 1e-12;

/**
 * Checks p_updated <= max(bound, kBeliefClamp) for every valid (node, step).
 * The clamp floor accounts for sampled nodes whose Bayes posterior underflows
 * below kBeliefClamp and is lifted by the filter.
 */
BoundReport verify_posterior_bound(std::span<const FilterStep> trajectory, SensorParams const &sp,
                                   bool keep_rows = true);

/// S = (1 - gamma) I + beta A, applied matrix-free in O(|E|).
class SystemMatrix
{
public:
  SystemMatrix(Graph const &g, SisParams const &p)
    : graph_(&g)
    , params_(p)
  {}

  double gamma() const noexcept { return params_.gamma; }
  double beta() const noexcept { return params_.beta; }

  void                apply(std::span<const double> x, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> x) const;

  /// lambda_1(S) = (1 - gamma) + beta lambda_1(A).
  double spectral_radius(SpectralResult const &adjacency) const noexcept;

private:
  Graph const *graph_;
  SisParams    params_;
};

struct LinearBoundReport
{
  double      min_slack  = 0.0;
  double      max_slack  = 0.0;
  std::size_t violations = 0;
};

inline constexpr double kLinearBoundAbsTol = 1e-12;

/// Element-wise check of predict_mean_field(b) <= S b; slack = (S b) - predict(b).
LinearBoundReport mean_field_linear_bound_check(Graph const &g, SisParams const &p, BeliefVector const &b);

/// lambda_1(S)^k prod_{l <= k} max_j b_{j,l} for k = 1..history.size().
std::vector<double> dominant_mode_estimate(SpectralResult const &adjacency, SisParams const &p,
                                           std::span<const BoundCoefficients> history);

}  // namespace sistrack
