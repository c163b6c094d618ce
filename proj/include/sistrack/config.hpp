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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "sistrack/policy.hpp"
#include "sistrack/sensor.hpp"

namespace sistrack {

struct GraphSource
{
  std::size_t   n        = 200;
  std::size_t   m_attach = 2;
  std::uint64_t seed     = 7;
  std::string   edge_list;  ///< when set, loaded instead of generated
};

struct SensorSpec
{
  std::size_t         dim        = 2;
  double              separation = 2.0;
  double              variance   = 1.0;
  std::vector<double> mean_susceptible;  ///< explicit overrides; empty = isotropic default
  std::vector<double> mean_infected;
  std::vector<double> covariance;  ///< row-major dim x dim

  SensorParams build() const;
};

enum class TauScale
{
  kRelative,  ///< grid values are multiples of tau_c
  kAbsolute,
};

/**
 * Declarative description of a sweep. Loaded from a flat "key = value" file
 * with dotted section keys; '#' starts a comment, unknown keys are errors.
 *
 * | key                          | default                 |
 * |------------------------------|-------------------------|
 * | graph.n / graph.m_attach     | 200 / 2                 |
 * | graph.seed                   | 7                       |
 * | graph.edge_list              | (generate)              |
 * | sensor.dim                   | 2                       |
 * | sensor.separation            | 2.0                     |
 * | sensor.variance              | 1.0                     |
 * | sensor.mean_susceptible      | (0, ..., 0)             |
 * | sensor.mean_infected         | (separation, 0, ...)    |
 * | sensor.covariance            | variance * I, row-major |
 * | sis.gamma                    | 0.2                     |
 * | sweep.tau_scale              | relative                |
 * | sweep.tau_min / tau_max      | 0.25 / 4.0              |
 * | sweep.tau_points             | 12 (log-spaced)         |
 * | sweep.tau_values             | (use min/max/points)    |
 * | sweep.horizon                | 50                      |
 * | sweep.replicas               | 100                     |
 * | sweep.initial_infections     | 10                      |
 * | sweep.root_seed              | 1                       |
 * | sweep.histogram_taus         | (every grid point)      |
 * | policy.kind                  | none,random,adaptive    |
 * | policy.m                     | 40                      |
 * | policy.alpha                 | 0.5                     |
 * | policy.mc_samples            | 64                      |
 * | policy.seed                  | 0                       |
 * | policy.common_random_numbers | false                   |
 * | run.jobs                     | 0 (OpenMP default)      |
 */
struct ExperimentConfig
{
  GraphSource graph;
  SensorSpec  sensor;
  double      gamma = 0.2;

  TauScale            tau_scale  = TauScale::kRelative;
  double              tau_min    = 0.25;
  double              tau_max    = 4.0;
  std::size_t         tau_points = 12;
  std::vector<double> tau_values;
  std::vector<double> histogram_taus;

  std::size_t   horizon            = 50;
  std::size_t   replicas           = 100;
  std::size_t   initial_infections = 10;
  std::uint64_t root_seed          = 1;

  std::vector<PolicyKind> policies{PolicyKind::kNone, PolicyKind::kRandom, PolicyKind::kAdaptive};
  PolicyConfig            policy;
  int                     jobs = 0;

  /// Grid in configured units (before scaling by tau_c).
  std::vector<double> tau_grid_units() const;
  /// Absolute tau values; multiplies by tau_c for relative grids.
  std::vector<double> resolve_taus(std::vector<double> const &units, double tau_c) const;

  /// Structural checks; the beta = tau * gamma <= 1 check needs tau_c and runs in validate_taus.
  void validate() const;
  void validate_taus(std::vector<double> const &absolute_taus) const;

  PolicyConfig policy_for(PolicyKind kind) const;

  nlohmann::json to_json() const;
};

ExperimentConfig parse_config(std::istream &in);
ExperimentConfig load_config(std::filesystem::path const &path);

}  // namespace sistrack
