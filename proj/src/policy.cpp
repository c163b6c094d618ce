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

#include "sistrack/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sistrack/errors.hpp"
#include "sistrack/kernels.hpp"
#include "sistrack/llr_quadrature.hpp"

namespace sistrack {

namespace {

double log_sum_exp(double a, double b) noexcept
{
  if (a == -std::numeric_limits<double>::infinity() && b == a)
  {
    return a;
  }
  double const m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log(1 + e^x) without overflow.
double softplus(double x) noexcept
{
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

void check_alpha(double alpha)
{
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha))
  {
    throw DomainError("alpha-divergence order must be positive and different from 1");
  }
}

}  // namespace

std::string_view to_string(PolicyKind kind) noexcept
{
  switch (kind)
  {
  case PolicyKind::kNone:
    return "none";
  case PolicyKind::kRandom:
    return "random";
  case PolicyKind::kHub:
    return "hub";
  case PolicyKind::kAdaptive:
    return "adaptive";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name)
{
  for (auto k : {PolicyKind::kNone, PolicyKind::kRandom, PolicyKind::kHub, PolicyKind::kAdaptive})
  {
    if (name == to_string(k))
    {
      return k;
    }
  }
  throw ParameterError("unknown policy kind '" + std::string(name) + "'");
}

void PolicyConfig::validate(std::size_t n) const
{
  if (!(alpha > 0.0 && alpha < 1.0))
  {
    throw ParameterError("policy alpha must lie in (0, 1)");
  }
  if (m > n)
  {
    throw ParameterError("policy m exceeds node count");
  }
  if (mc_samples < 1)
  {
    throw ParameterError("policy mc_samples must be at least 1");
  }
}

double alpha_divergence(std::span<const double> p, std::span<const double> q, double alpha)
{
  check_alpha(alpha);
  if (p.size() != q.size() || p.empty())
  {
    throw DomainError("alpha-divergence requires distributions on the same nonempty support");
  }
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    if (!(p[i] >= 0.0) || !(q[i] >= 0.0))
    {
      throw DomainError("alpha-divergence inputs must be nonnegative");
    }
    if (q[i] == 0.0 && p[i] > 0.0)
    {
      throw DomainError("alpha-divergence undefined: q vanishes where p does not");
    }
    sp += p[i];
    sq += q[i];
  }
  if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
  {
    throw DomainError("alpha-divergence inputs must each sum to 1");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    if (q[i] > 0.0 && p[i] > 0.0)
    {
      acc += q[i] * std::pow(p[i] / q[i], alpha);
    }
  }
  return std::log(acc) / (alpha - 1.0);
}

double bernoulli_alpha_divergence(double p, double q, double alpha)
{
  check_alpha(alpha);
  if (!(p >= 0.0 && p <= 1.0 && q > 0.0 && q < 1.0))
  {
    if (q == p && (q == 0.0 || q == 1.0))
    {
      return 0.0;
    }
    throw DomainError("Bernoulli alpha-divergence requires p in [0, 1] and q in (0, 1)");
  }
  double const ninf = -std::numeric_limits<double>::infinity();
  double const t1   = p > 0.0 ? (1.0 - alpha) * std::log(q) + alpha * std::log(p) : ninf;
  double const t0   = p < 1.0 ? (1.0 - alpha) * std::log1p(-q) + alpha * std::log1p(-p) : ninf;
  return log_sum_exp(t1, t0) / (alpha - 1.0);
}

GainEstimate estimate_node_gain(double q, SensorParams const &sp, double alpha, std::size_t mc_samples, Rng &rng)
{
  check_alpha(alpha);
  if (!(q > 0.0 && q < 1.0) || mc_samples == 0)
  {
    return {};
  }
  double const log_q   = std::log(q);
  double const log_1mq = std::log1p(-q);
  double const logit_q = log_q - log_1mq;

  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double>                    y(sp.dim());
  double                                 mean = 0.0;
  double                                 m2   = 0.0;
  for (std::size_t s = 0; s < mc_samples; ++s)
  {
    int const z = u01(rng) < q ? 1 : 0;
    sp.sample_into(z, rng, y);
    double const t = sp.log_likelihood_ratio(y) + logit_q;
    // log p' = -softplus(-t), log(1 - p') = -softplus(t)
    double const log_post   = -softplus(-t);
    double const log_1mpost = -softplus(t);
    double const d          = log_sum_exp((1.0 - alpha) * log_q + alpha * log_post,
                                          (1.0 - alpha) * log_1mq + alpha * log_1mpost) /
                     (alpha - 1.0);
    double const delta = d - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (d - mean);
  }
  double const var = mc_samples > 1 ? m2 / static_cast<double>(mc_samples - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(mc_samples))};
}

double expected_node_gain(NodeId node, BeliefVector const &predictive, SensorParams const &sp, double alpha,
                          std::size_t mc_samples, Rng &rng)
{
  if (node >= predictive.size())
  {
    throw ParameterError("node out of range");
  }
  return estimate_node_gain(predictive.probs[node], sp, alpha, mc_samples, rng).mean;
}

double jensen_lower_bound(double q, SensorParams const &sp, double alpha)
{
  check_alpha(alpha);
  if (!(q > 0.0 && q < 1.0))
  {
    return 0.0;
  }
  // f1/g = 1 / (q + (1-q) e^{-L}),  f0/g = 1 / (q e^{L} + 1 - q)
  double const e1 = mixture_llr_expectation(q, sp, [&](double llr) {
    return std::exp(-alpha * (std::log(q) + softplus(std::log1p(-q) - std::log(q) - llr)));
  });
  double const e0 = mixture_llr_expectation(q, sp, [&](double llr) {
    return std::exp(-alpha * (std::log1p(-q) + softplus(std::log(q) - std::log1p(-q) + llr)));
  });
  return std::log(q * e1 + (1.0 - q) * e0) / (alpha - 1.0);
}

double jensen_lower_bound(NodeId node, BeliefVector const &predictive, SensorParams const &sp, double alpha)
{
  if (node >= predictive.size())
  {
    throw ParameterError("node out of range");
  }
  return jensen_lower_bound(predictive.probs[node], sp, alpha);
}

std::vector<NodeId> top_by_score(std::span<const double> scores, std::size_t m)
{
  std::vector<NodeId> order(scores.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  m = std::min(m, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(),
                    [&](NodeId a, NodeId b) { return scores[a] > scores[b] || (scores[a] == scores[b] && a < b); });
  order.resize(m);
  return order;
}

Selection greedy_select(BeliefVector const &predictive, SensorParams const &sp, PolicyConfig const &cfg, Rng &rng)
{
  cfg.validate(predictive.size());
  kernels::GainRequest const req{cfg.alpha, cfg.mc_samples, rng(), cfg.common_random_numbers};
  std::vector<double>        gains(predictive.size());
  kernels::omp::node_gains(predictive.probs, sp, req, gains);

  Selection sel;
  sel.nodes = top_by_score(gains, cfg.m);
  sel.gains.reserve(sel.nodes.size());
  for (auto i : sel.nodes)
  {
    sel.gains.push_back(gains[i]);
  }
  return sel;
}

std::vector<NodeId> baseline_select(PolicyKind kind, Graph const &g, std::size_t m, Rng &rng)
{
  std::size_t const n = g.node_count();
  if (m > n)
  {
    throw ParameterError("policy m exceeds node count");
  }
  switch (kind)
  {
  case PolicyKind::kNone:
    return {};
  case PolicyKind::kRandom: {
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    for (std::size_t i = 0; i < m; ++i)
    {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(order[i], order[pick(rng)]);
    }
    order.resize(m);
    return order;
  }
  case PolicyKind::kHub: {
    std::vector<double> deg(n);
    for (NodeId i = 0; i < n; ++i)
    {
      deg[i] = static_cast<double>(g.degree(i));
    }
    return top_by_score(deg, m);
  }
  case PolicyKind::kAdaptive:
    break;
  }
  throw ParameterError("baseline_select does not handle the adaptive policy");
}

Selection select_nodes(PolicyConfig const &cfg, Graph const &g, BeliefVector const &predictive,
                       SensorParams const &sp, Rng &rng)
{
  if (cfg.kind == PolicyKind::kAdaptive)
  {
    return greedy_select(predictive, sp, cfg, rng);
  }
  cfg.validate(g.node_count());
  Selection sel;
  sel.nodes = baseline_select(cfg.kind, g, cfg.m, rng);
  sel.gains.assign(sel.nodes.size(), std::numeric_limits<double>::quiet_NaN());
  return sel;
}

}  // namespace sistrack
