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

#include "sistrack/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sistrack/aur.hpp"
#include "sistrack/errors.hpp"
#include "sistrack/rng.hpp"

namespace sistrack {

namespace {

std::uint64_t policy_tag(PolicyConfig const &p) noexcept
{
  return derive_seed({static_cast<std::uint64_t>(p.kind), p.seed});
}

// Everything the reduction needs from one replica.
struct ReplicaSummary
{
  std::vector<double>      aur;  // NaN = undefined
  std::vector<std::size_t> bucket_counts;  // [k-1][bucket]
  std::vector<SelectionLogRow> selections;
};

ReplicaSummary summarize(ReplicaRecord const &rec, Graph const &g, PolicyKind kind, double tau,
                         std::size_t replica, bool want_histogram)
{
  ReplicaSummary s;
  std::size_t const horizon = rec.steps.size();
  s.aur.resize(horizon);
  if (want_histogram)
  {
    s.bucket_counts.assign(horizon * kDegreeBuckets, 0);
  }
  for (std::size_t k = 0; k < horizon; ++k)
  {
    auto const &step = rec.steps[k];
    auto const  aur  = compute_aur(step.filter.updated.probs, step.truth.states);
    s.aur[k]         = aur.value_or(std::numeric_limits<double>::quiet_NaN());
    if (want_histogram)
    {
      for (auto node : step.selection.nodes)
      {
        ++s.bucket_counts[k * kDegreeBuckets + degree_bucket(g.degree(node))];
      }
    }
    if (replica == 0)
    {
      for (std::size_t r = 0; r < step.selection.nodes.size(); ++r)
      {
        s.selections.push_back({kind, tau, replica, step.truth.time_index, r, step.selection.nodes[r],
                                step.selection.gains[r]});
      }
    }
  }
  return s;
}

}  // namespace

PreparedExperiment prepare_experiment(ExperimentConfig cfg)
{
  cfg.validate();
  Graph g = cfg.graph.edge_list.empty() ? generate_scale_free(cfg.graph.n, cfg.graph.m_attach, cfg.graph.seed)
                                        : load_edge_list(cfg.graph.edge_list);
  if (cfg.initial_infections > g.node_count())
  {
    throw ParameterError("sweep.initial_infections exceeds the node count");
  }
  cfg.policy.validate(g.node_count());

  auto const   spectral = spectral_radius(g);
  double const tau_c    = epidemic_threshold(spectral);
  auto         units    = cfg.tau_grid_units();
  auto         taus     = cfg.resolve_taus(units, tau_c);
  cfg.validate_taus(taus);

  std::vector<std::size_t> hist;
  if (cfg.histogram_taus.empty())
  {
    for (std::size_t i = 0; i < units.size(); ++i)
    {
      hist.push_back(i);
    }
  }
  else
  {
    for (double h : cfg.histogram_taus)
    {
      auto it = std::find_if(units.begin(), units.end(),
                             [h](double u) { return std::abs(u - h) <= 1e-9 * std::max(1.0, std::abs(h)); });
      if (it == units.end())
      {
        throw ParameterError("sweep.histogram_taus value " + std::to_string(h) + " is not on the tau grid");
      }
      hist.push_back(static_cast<std::size_t>(it - units.begin()));
    }
  }

  auto sensor = cfg.sensor.build();
  return PreparedExperiment{std::move(cfg), std::move(g), spectral, tau_c,  std::move(units),
                            std::move(taus), std::move(hist), std::move(sensor)};
}

ReplicaRecord run_replica(Graph const &g, ExperimentConfig const &cfg, SensorParams const &sp,
                          PolicyConfig const &policy, double tau, std::size_t tau_index, std::size_t replica_index)
{
  auto const sis = SisParams::from_tau(tau, cfg.gamma);
  policy.validate(g.node_count());

  std::uint64_t const root = cfg.root_seed;
  auto init_rng   = make_rng({root, tau_index, replica_index, static_cast<std::uint64_t>(Stream::kInitialState)});
  auto truth_rng  = make_rng({root, tau_index, replica_index, static_cast<std::uint64_t>(Stream::kTruth)});
  auto sensor_rng = make_rng({root, tau_index, replica_index, static_cast<std::uint64_t>(Stream::kSensor), policy_tag(policy)});
  auto policy_rng = make_rng({root, tau_index, replica_index, static_cast<std::uint64_t>(Stream::kPolicy), policy_tag(policy)});

  ReplicaRecord rec;
  rec.initial_truth  = sample_initial_state(g, cfg.initial_infections, init_rng);
  rec.initial_belief = initial_belief(rec.initial_truth);
  rec.steps.reserve(cfg.horizon);

  StateVector const  *truth   = &rec.initial_truth;
  BeliefVector const *updated = &rec.initial_belief;
  for (std::size_t k = 1; k <= cfg.horizon; ++k)
  {
    StepRecord step;
    step.truth             = step_truth(g, *truth, sis, truth_rng);
    step.filter.predictive = predict_mean_field(g, *updated, sis);
    step.selection         = select_nodes(policy, g, step.filter.predictive, sp, policy_rng);
    step.filter.observations.reserve(step.selection.nodes.size());
    for (auto node : step.selection.nodes)
    {
      step.filter.observations.push_back({node, observe(step.truth.states[node], sp, sensor_rng), k});
    }
    step.filter.updated = bayes_update(step.filter.predictive, step.filter.observations, sp);
    rec.steps.push_back(std::move(step));
    truth   = &rec.steps.back().truth;
    updated = &rec.steps.back().filter.updated;
  }
  return rec;
}

ReplicaRecord run_replica(PreparedExperiment const &exp, PolicyKind kind, std::size_t tau_index,
                          std::size_t replica_index)
{
  if (tau_index >= exp.taus.size())
  {
    throw ParameterError("tau index out of range");
  }
  return run_replica(exp.graph, exp.config, exp.sensor, exp.config.policy_for(kind), exp.taus[tau_index], tau_index,
                     replica_index);
}

std::size_t degree_bucket(std::size_t degree) noexcept
{
  return std::min(degree, kDegreeBuckets - 1);
}

std::array<double, kDegreeBuckets> population_degree_distribution(Graph const &g)
{
  std::array<double, kDegreeBuckets> out{};
  for (auto d : g.degrees())
  {
    out[degree_bucket(d)] += 1.0;
  }
  for (auto &x : out)
  {
    x /= static_cast<double>(std::max<std::size_t>(1, g.node_count()));
  }
  return out;
}

std::array<double, kDegreeBuckets> DegreeSamplingHistogram::pooled() const
{
  std::array<double, kDegreeBuckets> out{};
  double                             total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i)
  {
    out[i % kDegreeBuckets] += static_cast<double>(counts[i]);
    total += static_cast<double>(counts[i]);
  }
  if (total > 0.0)
  {
    for (auto &x : out)
    {
      x /= total;
    }
  }
  return out;
}

AurSurface const *SweepResult::surface(PolicyKind kind) const noexcept
{
  for (auto const &s : surfaces)
  {
    if (s.policy == kind)
    {
      return &s;
    }
  }
  return nullptr;
}

DegreeSamplingHistogram const *SweepResult::histogram(PolicyKind kind, std::size_t tau_index) const noexcept
{
  for (auto const &h : histograms)
  {
    if (h.policy == kind && h.tau_index == tau_index)
    {
      return &h;
    }
  }
  return nullptr;
}

SweepResult sweep(PreparedExperiment const &exp, Execution mode)
{
  auto const       &cfg      = exp.config;
  std::size_t const n_tau    = exp.taus.size();
  std::size_t const n_rep    = cfg.replicas;
  std::size_t const horizon  = cfg.horizon;
  auto const        n_items  = static_cast<std::ptrdiff_t>(n_tau * n_rep);

  SweepResult result;
  result.taus = exp.taus;

  for (auto kind : cfg.policies)
  {
    std::vector<bool> want_hist(n_tau, false);
    if (kind != PolicyKind::kNone)
    {
      for (auto ti : exp.histogram_tau_indices)
      {
        want_hist[ti] = true;
      }
    }

    std::vector<ReplicaSummary> summaries(n_tau * n_rep);
    auto run_item = [&](std::ptrdiff_t item) {
      auto const ti  = static_cast<std::size_t>(item) / n_rep;
      auto const rep = static_cast<std::size_t>(item) % n_rep;
      auto const rec = run_replica(exp, kind, ti, rep);
      summaries[static_cast<std::size_t>(item)] = summarize(rec, exp.graph, kind, exp.taus[ti], rep, want_hist[ti]);
    };

    if (mode == Execution::kParallel)
    {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::ptrdiff_t item = 0; item < n_items; ++item)
      {
        run_item(item);
      }
    }
    else
    {
      for (std::ptrdiff_t item = 0; item < n_items; ++item)
      {
        run_item(item);
      }
    }

    // Fixed-order reduction.
    AurSurface surf;
    surf.policy        = kind;
    surf.taus          = exp.taus;
    surf.horizon       = horizon;
    surf.replica_count = n_rep;
    surf.values.assign(n_tau * horizon, std::numeric_limits<double>::quiet_NaN());
    surf.defined.assign(n_tau * horizon, 0);
    for (std::size_t ti = 0; ti < n_tau; ++ti)
    {
      for (std::size_t k = 0; k < horizon; ++k)
      {
        double      sum     = 0.0;
        std::size_t defined = 0;
        for (std::size_t rep = 0; rep < n_rep; ++rep)
        {
          double const a = summaries[ti * n_rep + rep].aur[k];
          if (!std::isnan(a))
          {
            sum += a;
            ++defined;
          }
        }
        surf.defined[ti * horizon + k] = defined;
        if (defined > 0)
        {
          surf.values[ti * horizon + k] = sum / static_cast<double>(defined);
        }
      }

      if (want_hist[ti])
      {
        DegreeSamplingHistogram h;
        h.policy    = kind;
        h.tau       = exp.taus[ti];
        h.tau_index = ti;
        h.horizon   = horizon;
        h.counts.assign(horizon * kDegreeBuckets, 0);
        for (std::size_t rep = 0; rep < n_rep; ++rep)
        {
          auto const &c = summaries[ti * n_rep + rep].bucket_counts;
          for (std::size_t i = 0; i < c.size(); ++i)
          {
            h.counts[i] += c[i];
          }
        }
        h.frequency.assign(horizon * kDegreeBuckets, 0.0);
        for (std::size_t k = 0; k < horizon; ++k)
        {
          std::size_t total = 0;
          for (std::size_t b = 0; b < kDegreeBuckets; ++b)
          {
            total += h.counts[k * kDegreeBuckets + b];
          }
          for (std::size_t b = 0; b < kDegreeBuckets && total > 0; ++b)
          {
            h.frequency[k * kDegreeBuckets + b] =
                static_cast<double>(h.counts[k * kDegreeBuckets + b]) / static_cast<double>(total);
          }
        }
        result.histograms.push_back(std::move(h));
      }

      auto &sel = summaries[ti * n_rep].selections;
      result.selections.insert(result.selections.end(), sel.begin(), sel.end());
    }
    result.surfaces.push_back(std::move(surf));
  }
  return result;
}

}  // namespace sistrack
