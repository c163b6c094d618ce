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

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "sistrack/belief.hpp"
#include "sistrack/config.hpp"
#include "sistrack/graph.hpp"
#include "sistrack/policy.hpp"
#include "sistrack/sensor.hpp"
#include "sistrack/sis.hpp"
#include "sistrack/spectral.hpp"
#include "sistrack/threshold.hpp"

namespace sistrack {

/// A validated config together with everything derived from it before any replica runs.
struct PreparedExperiment
{
  ExperimentConfig    config;
  Graph               graph;
  SpectralResult      spectral;
  double              tau_c = 0.0;
  std::vector<double> tau_units;  ///< grid as written in the config
  std::vector<double> taus;       ///< absolute tau values
  std::vector<std::size_t> histogram_tau_indices;
  SensorParams        sensor;
};

/// Builds or loads the graph, computes lambda_1 and tau_c, resolves the tau grid
/// and rejects any grid point with beta = tau * gamma outside [0, 1].
PreparedExperiment prepare_experiment(ExperimentConfig cfg);

struct StepRecord
{
  StateVector truth;
  FilterStep  filter;
  Selection   selection;
};

struct ReplicaRecord
{
  StateVector             initial_truth;
  BeliefVector            initial_belief;
  std::vector<StepRecord> steps;
};

/**
 * One tracking run: truth evolves by the SIS chain; each step predicts by
 * mean field, selects nodes, observes them and applies the Bayes update.
 *
 * Streams are keyed on (root_seed, tau_index, replica_index). The initial
 * state and truth trajectory do not depend on the policy, so every policy is
 * scored against the same realizations.
 */
ReplicaRecord run_replica(Graph const &g, ExperimentConfig const &cfg, SensorParams const &sp,
                          PolicyConfig const &policy, double tau, std::size_t tau_index, std::size_t replica_index);

ReplicaRecord run_replica(PreparedExperiment const &exp, PolicyKind kind, std::size_t tau_index,
                          std::size_t replica_index);

/// Degree buckets: exact degree 0..15, then one overflow bucket for >= 16.
inline constexpr std::size_t kDegreeBuckets = 17;
std::size_t                  degree_bucket(std::size_t degree) noexcept;

/// Fraction of nodes in each degree bucket.
std::array<double, kDegreeBuckets> population_degree_distribution(Graph const &g);

struct AurSurface
{
  PolicyKind               policy = PolicyKind::kNone;
  std::vector<double>      taus;
  std::size_t              horizon       = 0;
  std::size_t              replica_count = 0;
  std::vector<double>      values;   ///< [tau][k-1], NaN where no replica was defined
  std::vector<std::size_t> defined;  ///< replicas with both classes present

  double      at(std::size_t tau_index, std::size_t k) const { return values[tau_index * horizon + (k - 1)]; }
  std::size_t defined_at(std::size_t tau_index, std::size_t k) const { return defined[tau_index * horizon + (k - 1)]; }
};

struct DegreeSamplingHistogram
{
  PolicyKind          policy    = PolicyKind::kAdaptive;
  double              tau       = 0.0;
  std::size_t         tau_index = 0;
  std::size_t         horizon   = 0;
  std::vector<double> frequency;  ///< [k-1][bucket]; each slice sums to 1 when sampled
  std::vector<std::size_t> counts;

  double frequency_at(std::size_t k, std::size_t bucket) const { return frequency[(k - 1) * kDegreeBuckets + bucket]; }

  /// Relative frequency per bucket pooled over all time steps.
  std::array<double, kDegreeBuckets> pooled() const;
};

struct SelectionLogRow
{
  PolicyKind  policy     = PolicyKind::kNone;
  double      tau        = 0.0;
  std::size_t replica    = 0;
  std::size_t time_index = 0;
  std::size_t rank       = 0;
  NodeId      node       = 0;
  double      gain       = 0.0;
};

struct SweepResult
{
  std::vector<double>                  taus;
  std::vector<AurSurface>              surfaces;    ///< one per configured policy
  std::vector<DegreeSamplingHistogram> histograms;  ///< measured policies x histogram taus
  std::vector<SelectionLogRow>         selections;  ///< replica 0 of every (policy, tau)

  AurSurface const *surface(PolicyKind kind) const noexcept;
  DegreeSamplingHistogram const *histogram(PolicyKind kind, std::size_t tau_index) const noexcept;
};

enum class Execution
{
  kSerial,
  kParallel,
};

/// All (policy, tau, replica) runs, reduced in a fixed order; the result does
/// not depend on Execution or on the thread count.
SweepResult sweep(PreparedExperiment const &exp, Execution mode = Execution::kParallel);

/// aur_surface.csv, selections.csv, degree_histogram.csv and run_meta.json.
void write_sweep_outputs(SweepResult const &result, PreparedExperiment const &exp,
                         std::filesystem::path const &dir);

/// beliefs.csv, selections.csv, observations.csv, truth.csv and run_meta.json.
void write_trajectory(ReplicaRecord const &rec, PreparedExperiment const &exp, PolicyKind kind, double tau,
                      std::filesystem::path const &dir);

/// Rebuilds the filter steps from beliefs.csv and observations.csv.
std::vector<FilterStep> read_trajectory(std::filesystem::path const &dir);

/// time_index,node,case_tag,b,p_pred,p_updated,bound_value,valid,violated
void write_bound_report(BoundReport const &report, std::filesystem::path const &path);

}  // namespace sistrack
