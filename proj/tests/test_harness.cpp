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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "sistrack/aur.hpp"
#include "sistrack/harness.hpp"

using namespace sistrack;

namespace {

ExperimentConfig small_config()
{
  ExperimentConfig c;
  c.graph.n            = 60;
  c.graph.m_attach     = 2;
  c.tau_values         = {0.5, 1.5, 3.0};
  c.histogram_taus     = {1.5};
  c.horizon            = 8;
  c.replicas           = 6;
  c.initial_infections = 5;
  c.policy.m           = 10;
  c.policy.mc_samples  = 16;
  c.policies           = {PolicyKind::kNone, PolicyKind::kRandom, PolicyKind::kAdaptive};
  return c;
}

std::string slurp(std::filesystem::path const &p)
{
  std::ifstream      in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Harness, PrepareResolvesGridAndHistograms)
{
  auto const exp = prepare_experiment(small_config());
  ASSERT_EQ(exp.taus.size(), 3u);
  EXPECT_NEAR(exp.taus[1], 1.5 * exp.tau_c, 1e-15);
  EXPECT_EQ(exp.histogram_tau_indices, std::vector<std::size_t>{1});

  auto bad           = small_config();
  bad.histogram_taus = {1.7};
  EXPECT_THROW(prepare_experiment(bad), ParameterError);
  auto hot      = small_config();
  hot.tau_scale = TauScale::kAbsolute;
  hot.tau_values = {6.0};
  EXPECT_THROW(prepare_experiment(hot), ParameterError);
}

TEST(Harness, NonePolicyLeavesBeliefsPredictive)
{
  auto const exp = prepare_experiment(small_config());
  auto const rec = run_replica(exp, PolicyKind::kNone, 1, 0);
  ASSERT_EQ(rec.steps.size(), 8u);
  for (auto const &s : rec.steps)
  {
    EXPECT_TRUE(s.filter.observations.empty());
    EXPECT_EQ(s.filter.updated.probs, s.filter.predictive.probs);
  }
}

TEST(Harness, NearNoiselessFullSamplingRecoversTruth)
{
  auto cfg              = small_config();
  cfg.sensor.separation = 60.0;
  cfg.policy.m          = cfg.graph.n;
  auto const exp        = prepare_experiment(cfg);
  for (auto kind : {PolicyKind::kRandom, PolicyKind::kAdaptive})
  {
    auto const rec = run_replica(exp, kind, 2, 1);
    for (auto const &s : rec.steps)
    {
      for (std::size_t i = 0; i < s.truth.size(); ++i)
      {
        EXPECT_NEAR(s.filter.updated.probs[i], s.truth.states[i], 0.01);
      }
    }
  }
}

TEST(Harness, ReplicaDeterminismAndPairing)
{
  auto const exp = prepare_experiment(small_config());
  auto const a   = run_replica(exp, PolicyKind::kAdaptive, 1, 2);
  auto const b   = run_replica(exp, PolicyKind::kAdaptive, 1, 2);
  auto const c   = run_replica(exp, PolicyKind::kRandom, 1, 2);
  auto const d   = run_replica(exp, PolicyKind::kAdaptive, 1, 3);
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t k = 0; k < a.steps.size(); ++k)
  {
    EXPECT_EQ(a.steps[k].truth.states, b.steps[k].truth.states);
    EXPECT_EQ(a.steps[k].filter.updated.probs, b.steps[k].filter.updated.probs);
    EXPECT_EQ(a.steps[k].selection.nodes, b.steps[k].selection.nodes);
    // Truth depends on (tau, replica) only.
    EXPECT_EQ(a.steps[k].truth.states, c.steps[k].truth.states);
  }
  EXPECT_NE(a.initial_truth.states, d.initial_truth.states);
}

TEST(Harness, SingleCellSurfaceIsOneAur)
{
  auto cfg       = small_config();
  cfg.replicas   = 1;
  cfg.horizon    = 1;
  cfg.tau_values = {2.0};
  cfg.histogram_taus.clear();
  cfg.policies   = {PolicyKind::kNone};
  auto const exp = prepare_experiment(cfg);
  auto const res = sweep(exp);
  auto const rec = run_replica(exp, PolicyKind::kNone, 0, 0);
  auto const aur = compute_aur(rec.steps[0].filter.predictive.probs, rec.steps[0].truth.states);
  ASSERT_TRUE(aur.has_value());
  EXPECT_EQ(res.surface(PolicyKind::kNone)->at(0, 1), *aur);
  EXPECT_EQ(res.surface(PolicyKind::kNone)->defined_at(0, 1), 1u);
}

TEST(Harness, SubcriticalCellsGoUndefined)
{
  auto cfg               = small_config();
  cfg.tau_values         = {0.1};
  cfg.histogram_taus.clear();
  cfg.horizon            = 60;
  cfg.replicas           = 10;
  cfg.policies           = {PolicyKind::kNone};
  auto const res         = sweep(prepare_experiment(cfg));
  auto const *s          = res.surface(PolicyKind::kNone);
  EXPECT_LT(s->defined_at(0, 60), 10u);
  for (std::size_t k = 1; k <= 60; ++k)
  {
    EXPECT_EQ(std::isnan(s->at(0, k)), s->defined_at(0, k) == 0);
  }
}

TEST(Harness, SweepSerialEqualsParallel)
{
  auto const exp = prepare_experiment(small_config());
  auto const a   = sweep(exp, Execution::kSerial);
  auto const b   = sweep(exp, Execution::kParallel);
  ASSERT_EQ(a.surfaces.size(), b.surfaces.size());
  for (std::size_t i = 0; i < a.surfaces.size(); ++i)
  {
    auto const &x = a.surfaces[i].values;
    auto const &y = b.surfaces[i].values;
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t j = 0; j < x.size(); ++j)
    {
      EXPECT_TRUE(x[j] == y[j] || (std::isnan(x[j]) && std::isnan(y[j])));
    }
    EXPECT_EQ(a.surfaces[i].defined, b.surfaces[i].defined);
  }
  ASSERT_EQ(a.histograms.size(), b.histograms.size());
  for (std::size_t i = 0; i < a.histograms.size(); ++i)
  {
    EXPECT_EQ(a.histograms[i].counts, b.histograms[i].counts);
  }
}

TEST(Harness, HistogramSlicesSumToOne)
{
  auto const exp = prepare_experiment(small_config());
  auto const res = sweep(exp);
  // Measured policies only, at the one histogram tau.
  ASSERT_EQ(res.histograms.size(), 2u);
  for (auto const &h : res.histograms)
  {
    for (std::size_t k = 1; k <= h.horizon; ++k)
    {
      double sum = 0.0;
      for (std::size_t b = 0; b < kDegreeBuckets; ++b)
      {
        sum += h.frequency_at(k, b);
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
  EXPECT_EQ(degree_bucket(3), 3u);
  EXPECT_EQ(degree_bucket(16), 16u);
  EXPECT_EQ(degree_bucket(90), 16u);
}

TEST(Harness, NonePolicyIgnoresSensor)
{
  auto c1              = small_config();
  c1.policies          = {PolicyKind::kNone};
  auto c2              = c1;
  c2.sensor.separation = 0.3;
  c2.sensor.dim        = 4;
  auto const a         = sweep(prepare_experiment(c1));
  auto const b         = sweep(prepare_experiment(c2));
  auto const &x        = a.surfaces[0].values;
  auto const &y        = b.surfaces[0].values;
  for (std::size_t j = 0; j < x.size(); ++j)
  {
    EXPECT_TRUE(x[j] == y[j] || (std::isnan(x[j]) && std::isnan(y[j])));
  }
}

TEST(Harness, ReplicaOrderIndependence)
{
  // Reducing replicas in reverse order reproduces the sweep cell.
  auto cfg       = small_config();
  cfg.policies   = {PolicyKind::kRandom};
  auto const exp = prepare_experiment(cfg);
  auto const res = sweep(exp);
  std::vector<std::optional<double>> per(cfg.replicas);
  for (std::size_t r = cfg.replicas; r-- > 0;)
  {
    auto const rec = run_replica(exp, PolicyKind::kRandom, 2, r);
    per[r]         = compute_aur(rec.steps[4].filter.updated.probs, rec.steps[4].truth.states);
  }
  double      sum = 0.0;
  std::size_t n   = 0;
  for (auto const &a : per)
  {
    if (a)
    {
      sum += *a;
      ++n;
    }
  }
  ASSERT_GT(n, 0u);
  EXPECT_EQ(res.surfaces[0].at(2, 5), sum / static_cast<double>(n));
}

TEST(Harness, OutputsAreByteStable)
{
  auto const exp = prepare_experiment(small_config());
  auto const dir = std::filesystem::temp_directory_path() / "sistrack_outputs";
  write_sweep_outputs(sweep(exp, Execution::kParallel), exp, dir / "a");
  write_sweep_outputs(sweep(exp, Execution::kSerial), exp, dir / "b");
  for (auto name : {"aur_surface.csv", "selections.csv", "degree_histogram.csv", "run_meta.json"})
  {
    auto const a = slurp(dir / "a" / name);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir / "b" / name)) << name;
  }
  auto const head = slurp(dir / "a" / "aur_surface.csv").substr(0, 41);
  EXPECT_EQ(head, "policy,tau,time_index,aur,defined_replica");
  std::filesystem::remove_all(dir);
}

TEST(Harness, TrajectoryRoundTrip)
{
  auto const exp = prepare_experiment(small_config());
  auto const rec = run_replica(exp, PolicyKind::kAdaptive, 1, 0);
  auto const dir = std::filesystem::temp_directory_path() / "sistrack_traj";
  write_trajectory(rec, exp, PolicyKind::kAdaptive, exp.taus[1], dir);
  auto const steps = read_trajectory(dir);
  ASSERT_EQ(steps.size(), rec.steps.size());
  for (std::size_t k = 0; k < steps.size(); ++k)
  {
    EXPECT_EQ(steps[k].predictive.probs, rec.steps[k].filter.predictive.probs);
    EXPECT_EQ(steps[k].updated.probs, rec.steps[k].filter.updated.probs);
    ASSERT_EQ(steps[k].observations.size(), rec.steps[k].filter.observations.size());
    EXPECT_EQ(steps[k].observations[0].value, rec.steps[k].filter.observations[0].value);
  }
  std::filesystem::remove_all(dir);
}
