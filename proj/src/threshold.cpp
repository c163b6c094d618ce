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

#include "sistrack/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sistrack/errors.hpp"

namespace sistrack {

std::string_view to_string(BoundCase c) noexcept
{
  switch (c)
  {
  case BoundCase::kUnsampled:
    return "unsampled";
  case BoundCase::kDeltaPos:
    return "delta_pos";
  case BoundCase::kDeltaNeg:
    return "delta_neg";
  }
  return "unknown";
}

BoundCase parse_bound_case(std::string_view name)
{
  for (auto c : {BoundCase::kUnsampled, BoundCase::kDeltaPos, BoundCase::kDeltaNeg})
  {
    if (name == to_string(c))
    {
      return c;
    }
  }
  throw ParameterError("unknown bound case '" + std::string(name) + "'");
}

double BoundCoefficients::max_b() const noexcept
{
  return b.empty() ? 1.0 : *std::max_element(b.begin(), b.end());
}

BoundCoefficients bound_coefficients(BeliefVector const &predictive, std::span<const Observation> obs,
                                     SensorParams const &sp)
{
  std::size_t const n = predictive.size();
  BoundCoefficients out{std::vector<double>(n, 1.0), std::vector<double>(n, 1.0),
                        std::vector<BoundCase>(n, BoundCase::kUnsampled), std::vector<bool>(n, true),
                        predictive.time_index};
  for (auto const &o : obs)
  {
    if (o.node >= n)
    {
      throw ParameterError("observation of unknown node " + std::to_string(o.node));
    }
    double const r = std::exp(sp.log_density(o.value, 1) - sp.log_density(o.value, 0));
    double const a = r - 1.0;
    out.likelihood_ratio[o.node] = r;
    out.b[o.node]                = r * (1.0 + std::abs(a));
    out.case_tag[o.node]         = a < 0.0 ? BoundCase::kDeltaNeg : BoundCase::kDeltaPos;
    out.valid[o.node]            = std::abs(a * predictive.probs[o.node]) < 1.0;
  }
  return out;
}

double posterior_bound_value(BoundCase c, double b, double likelihood_ratio, double p_pred)
{
  double bound = b * p_pred;
  if (c == BoundCase::kDeltaNeg)
  {
    double const x = std::abs(likelihood_ratio - 1.0) * p_pred;
    bound += likelihood_ratio * p_pred * x * x / (1.0 - x);
  }
  return bound;
}

BoundReport verify_posterior_bound(std::span<const FilterStep> trajectory, SensorParams const &sp, bool keep_rows)
{
  BoundReport report;
  report.coefficients.reserve(trajectory.size());
  for (auto const &step : trajectory)
  {
    if (step.predictive.size() != step.updated.size())
    {
      throw ParameterError("predictive and updated beliefs differ in length");
    }
    auto coeff = bound_coefficients(step.predictive, step.observations, sp);
    for (NodeId i = 0; i < coeff.size(); ++i)
    {
      BoundRow row;
      row.time_index = step.updated.time_index;
      row.node       = i;
      row.case_tag   = coeff.case_tag[i];
      row.b          = coeff.b[i];
      row.p_pred     = step.predictive.probs[i];
      row.p_updated  = step.updated.probs[i];
      row.valid      = coeff.valid[i];
      row.bound      = posterior_bound_value(row.case_tag, row.b, coeff.likelihood_ratio[i], row.p_pred);
      if (row.valid)
      {
        double const limit = row.case_tag == BoundCase::kUnsampled ? row.bound : std::max(row.bound, kBeliefClamp);
        row.violated       = row.p_updated > limit * (1.0 + kBoundRelTol);
        ++report.checked;
        report.violations += row.violated ? 1 : 0;
      }
      else
      {
        ++report.invalid;
      }
      if (keep_rows)
      {
        report.rows.push_back(row);
      }
    }
    report.coefficients.push_back(std::move(coeff));
  }
  return report;
}

void SystemMatrix::apply(std::span<const double> x, std::span<double> out) const
{
  Graph const &g = *graph_;
  if (x.size() != g.node_count() || out.size() != g.node_count())
  {
    throw ParameterError("system matrix operand length does not match the graph");
  }
  for (NodeId i = 0; i < g.node_count(); ++i)
  {
    double s = 0.0;
    for (auto j : g.neighbors(i))
    {
      s += x[j];
    }
    out[i] = (1.0 - params_.gamma) * x[i] + params_.beta * s;
  }
}

std::vector<double> SystemMatrix::apply(std::span<const double> x) const
{
  std::vector<double> out(x.size());
  apply(x, out);
  return out;
}

double SystemMatrix::spectral_radius(SpectralResult const &adjacency) const noexcept
{
  return (1.0 - params_.gamma) + params_.beta * adjacency.spectral_radius;
}

LinearBoundReport mean_field_linear_bound_check(Graph const &g, SisParams const &p, BeliefVector const &b)
{
  auto const pred = predict_mean_field(g, b, p);
  auto const sb   = SystemMatrix(g, p).apply(b.probs);

  LinearBoundReport r;
  r.min_slack = std::numeric_limits<double>::infinity();
  r.max_slack = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sb.size(); ++i)
  {
    double const slack = sb[i] - pred.probs[i];
    r.min_slack        = std::min(r.min_slack, slack);
    r.max_slack        = std::max(r.max_slack, slack);
    r.violations += slack < -kLinearBoundAbsTol ? 1 : 0;
  }
  if (sb.empty())
  {
    r.min_slack = r.max_slack = 0.0;
  }
  return r;
}

std::vector<double> dominant_mode_estimate(SpectralResult const &adjacency, SisParams const &p,
                                           std::span<const BoundCoefficients> history)
{
  if (history.empty())
  {
    throw ParameterError("dominant_mode_estimate needs at least one step");
  }
  double const        lambda_s = (1.0 - p.gamma) + p.beta * adjacency.spectral_radius;
  std::vector<double> out;
  out.reserve(history.size());
  double mode = 1.0;
  for (auto const &c : history)
  {
    mode *= lambda_s * c.max_b();
    out.push_back(mode);
  }
  return out;
}

}  // namespace sistrack
