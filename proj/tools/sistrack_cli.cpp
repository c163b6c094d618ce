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

// Command-line front end: generate-graph, threshold, simulate, sweep, verify-bounds.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "sistrack/aur.hpp"
#include "sistrack/config.hpp"
#include "sistrack/harness.hpp"
#include "sistrack/kernels.hpp"
#include "sistrack/spectral.hpp"
#include "sistrack/threshold.hpp"
#include "sistrack/version.hpp"

namespace fs = std::filesystem;
using namespace sistrack;

namespace {

struct Common
{
  std::string                  config_path;
  std::optional<std::uint64_t> seed;
  std::string                  out_dir;
  std::string                  policy;
  int                          jobs = 0;
};

ExperimentConfig load_or_default(Common const &c)
{
  ExperimentConfig cfg = c.config_path.empty() ? ExperimentConfig{} : load_config(c.config_path);
  if (c.seed)
  {
    cfg.root_seed = *c.seed;
  }
  if (!c.policy.empty())
  {
    cfg.policies = {parse_policy_kind(c.policy)};
  }
  if (c.jobs > 0)
  {
    cfg.jobs = c.jobs;
  }
  kernels::set_threads(cfg.jobs);
  return cfg;
}

SensorSpec sensor_from_meta(nlohmann::json const &s)
{
  SensorSpec spec;
  spec.dim              = s.at("dim").get<std::size_t>();
  spec.separation       = s.at("separation").get<double>();
  spec.variance         = s.at("variance").get<double>();
  spec.mean_susceptible = s.at("mean_susceptible").get<std::vector<double>>();
  spec.mean_infected    = s.at("mean_infected").get<std::vector<double>>();
  spec.covariance       = s.at("covariance").get<std::vector<double>>();
  return spec;
}

int cmd_generate_graph(Common const &c, std::optional<std::size_t> n, std::optional<std::size_t> m_attach)
{
  ExperimentConfig cfg = c.config_path.empty() ? ExperimentConfig{} : load_config(c.config_path);
  if (n)
  {
    cfg.graph.n = *n;
  }
  if (m_attach)
  {
    cfg.graph.m_attach = *m_attach;
  }
  if (c.seed)
  {
    cfg.graph.seed = *c.seed;
  }
  auto const g = generate_scale_free(cfg.graph.n, cfg.graph.m_attach, cfg.graph.seed);
  if (c.out_dir.empty())
  {
    write_edge_list(std::cout, g);
  }
  else
  {
    fs::create_directories(c.out_dir);
    auto const path = fs::path(c.out_dir) / "graph.edges";
    save_edge_list(path, g);
    fmt::print("wrote {} ({} nodes, {} edges)\n", path.string(), g.node_count(), g.edge_count());
  }
  return 0;
}

int cmd_threshold(Common const &c, std::string const &edges)
{
  Graph g;
  if (!edges.empty())
  {
    g = load_edge_list(edges);
  }
  else
  {
    auto cfg = prepare_experiment(load_or_default(c));
    g        = cfg.graph;
  }
  auto const spec = spectral_radius(g);
  fmt::print("nodes {}\nedges {}\nmax_degree {}\naverage_degree {}\nlambda1 {}\ntau_c {}\niterations {}\nresidual {}\n",
             g.node_count(), g.edge_count(), g.max_degree(), g.average_degree(), spec.spectral_radius,
             epidemic_threshold(spec), spec.iterations, spec.residual);
  return 0;
}

int cmd_simulate(Common const &c, std::optional<std::size_t> tau_index, std::size_t replica)
{
  auto cfg = load_or_default(c);
  if (c.policy.empty())
  {
    cfg.policies = {cfg.policies.back()};
  }
  auto const        exp  = prepare_experiment(cfg);
  PolicyKind const  kind = exp.config.policies.front();
  std::size_t const ti   = tau_index.value_or(exp.taus.size() / 2);
  if (ti >= exp.taus.size())
  {
    throw ParameterError("--tau-index out of range");
  }
  auto const rec = run_replica(exp, kind, ti, replica);

  fmt::print("policy {} tau {} (tau/tau_c = {:.4f}) replica {}\n", to_string(kind), exp.taus[ti],
             exp.taus[ti] / exp.tau_c, replica);
  fmt::print("{:>5} {:>9} {:>9} {:>8}\n", "k", "infected", "sampled", "aur");
  for (auto const &step : rec.steps)
  {
    auto const aur = compute_aur(step.filter.updated.probs, step.truth.states);
    fmt::print("{:>5} {:>9} {:>9} {:>8}\n", step.truth.time_index, step.truth.infected_count(),
               step.selection.nodes.size(), aur ? fmt::format("{:.4f}", *aur) : std::string("undef"));
  }
  if (!c.out_dir.empty())
  {
    write_trajectory(rec, exp, kind, exp.taus[ti], c.out_dir);
    fmt::print("trajectory written to {}\n", c.out_dir);
  }
  return 0;
}

int cmd_sweep(Common const &c)
{
  auto const exp = prepare_experiment(load_or_default(c));
  fmt::print("lambda1 {} tau_c {} grid points {} replicas {} horizon {} threads {}\n",
             exp.spectral.spectral_radius, exp.tau_c, exp.taus.size(), exp.config.replicas, exp.config.horizon,
             kernels::max_threads());
  auto const result = sweep(exp);
  fs::path const out = c.out_dir.empty() ? fs::path("sweep_out") : fs::path(c.out_dir);
  write_sweep_outputs(result, exp, out);
  for (auto const &s : result.surfaces)
  {
    fmt::print("{:>9}:", to_string(s.policy));
    for (std::size_t ti = 0; ti < s.taus.size(); ++ti)
    {
      double sum = 0.0;
      int    cnt = 0;
      for (std::size_t k = 1; k <= s.horizon; ++k)
      {
        if (!std::isnan(s.at(ti, k)))
        {
          sum += s.at(ti, k);
          ++cnt;
        }
      }
      fmt::print(" {}", cnt > 0 ? fmt::format("{:.3f}", sum / cnt) : std::string("  -  "));
    }
    fmt::print("\n");
  }
  fmt::print("outputs written to {}\n", out.string());
  return 0;
}

int cmd_verify_bounds(Common const &c, std::string const &trajectory)
{
  fs::path const dir = trajectory;
  std::ifstream  meta_in(dir / "run_meta.json");
  if (!meta_in)
  {
    throw ParameterError("missing run_meta.json in " + dir.string());
  }
  auto const meta = nlohmann::json::parse(meta_in);

  SensorParams const sp = c.config_path.empty() ? sensor_from_meta(meta.at("config").at("sensor")).build()
                                                : load_config(c.config_path).sensor.build();
  auto const steps  = read_trajectory(dir);
  auto const report = verify_posterior_bound(steps, sp);

  fs::path const out = c.out_dir.empty() ? dir : fs::path(c.out_dir);
  fs::create_directories(out);
  write_bound_report(report, out / "bounds.csv");

  fmt::print("steps {}\nchecked {}\ninvalid {}\nviolations {}\n", steps.size(), report.checked, report.invalid,
             report.violations);

  SpectralResult spec;
  spec.spectral_radius = meta.at("lambda1").get<double>();
  SisParams const sis{meta.at("beta").get<double>(), meta.at("gamma").get<double>()};
  if (!report.coefficients.empty())
  {
    auto const mode = dominant_mode_estimate(spec, sis, report.coefficients);
    fmt::print("lambda1(S) {}\n", (1.0 - sis.gamma) + sis.beta * spec.spectral_radius);
    fmt::print("dominant_mode_final {}\n", mode.back());
  }
  fmt::print("report written to {}\n", (out / "bounds.csv").string());
  return report.violations == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Active tracking of SIS percolation on networks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common common;
  auto   add_common = [&](CLI::App *sub) {
    sub->add_option("--config", common.config_path, "Experiment config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", common.seed, "Override the root seed");
    sub->add_option("--out", common.out_dir, "Output directory");
    sub->add_option("--policy", common.policy, "Override the policy")
        ->check(CLI::IsMember({"none", "random", "hub", "adaptive"}));
    sub->add_option("--jobs", common.jobs, "Thread count hint");
  };

  std::optional<std::size_t> gen_n;
  std::optional<std::size_t> gen_m;
  auto *gen = app.add_subcommand("generate-graph", "Emit a scale-free edge list");
  add_common(gen);
  gen->add_option("--n", gen_n, "Node count");
  gen->add_option("--m-attach", gen_m, "Edges per new node");

  std::string edges;
  auto       *thr = app.add_subcommand("threshold", "Print lambda_1(A) and tau_c");
  add_common(thr);
  thr->add_option("--edges", edges, "Edge list file")->check(CLI::ExistingFile);

  std::optional<std::size_t> tau_index;
  std::size_t                replica = 0;
  auto *sim = app.add_subcommand("simulate", "Run one replica and record its trajectory");
  add_common(sim);
  sim->add_option("--tau-index", tau_index, "Index into the tau grid (default: middle)");
  sim->add_option("--replica", replica, "Replica index");

  auto *swp = app.add_subcommand("sweep", "Full AUR surfaces and degree histograms");
  add_common(swp);

  std::string trajectory;
  auto       *vb = app.add_subcommand("verify-bounds", "Check the posterior bound on a recorded trajectory");
  add_common(vb);
  vb->add_option("--trajectory", trajectory, "Directory written by simulate --out")->required();

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (gen->parsed())
    {
      return cmd_generate_graph(common, gen_n, gen_m);
    }
    if (thr->parsed())
    {
      return cmd_threshold(common, edges);
    }
    if (sim->parsed())
    {
      return cmd_simulate(common, tau_index, replica);
    }
    if (swp->parsed())
    {
      return cmd_sweep(common);
    }
    if (vb->parsed())
    {
      return cmd_verify_bounds(common, trajectory);
    }
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
