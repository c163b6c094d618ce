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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "json.hpp"

#include "sistrack/errors.hpp"
#include "sistrack/harness.hpp"
#include "sistrack/version.hpp"

namespace sistrack {

namespace {

// Shortest representation that parses back to the same double.
std::string num(double x)
{
  if (std::isnan(x))
  {
    return "nan";
  }
  return fmt::format("{}", x);
}

std::ofstream open_out(std::filesystem::path const &path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw ParameterError("cannot write " + path.string());
  }
  return out;
}

std::vector<std::string> split_csv(std::string const &line)
{
  std::vector<std::string> out;
  std::stringstream        ss(line);
  std::string              cell;
  while (std::getline(ss, cell, ','))
  {
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',')
  {
    out.emplace_back();
  }
  return out;
}

double parse_num(std::string const &s)
{
  char        *end = nullptr;
  double const x   = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
  {
    throw ParameterError("malformed number '" + s + "' in trajectory file");
  }
  return x;
}

std::vector<std::vector<std::string>> read_csv(std::filesystem::path const &path, std::string const &header_prefix)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ParameterError("cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line.rfind(header_prefix, 0) != 0)
  {
    throw ParameterError(path.string() + ": unexpected header");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line))
  {
    if (!line.empty())
    {
      rows.push_back(split_csv(line));
    }
  }
  return rows;
}

nlohmann::json base_meta(PreparedExperiment const &exp)
{
  nlohmann::json meta;
  meta["version"]    = kVersion;
  meta["config"]     = exp.config.to_json();
  meta["lambda1"]    = exp.spectral.spectral_radius;
  meta["tau_c"]      = exp.tau_c;
  meta["nodes"]      = exp.graph.node_count();
  meta["edges"]      = exp.graph.edge_count();
  meta["seeds"]      = {{"root_seed", exp.config.root_seed},
                        {"graph_seed", exp.config.graph.seed},
                        {"policy_seed", exp.config.policy.seed}};
  meta["tau_grid"]   = exp.taus;
  meta["tau_units"]  = exp.tau_units;
  return meta;
}

}  // namespace

void write_sweep_outputs(SweepResult const &result, PreparedExperiment const &exp, std::filesystem::path const &dir)
{
  std::filesystem::create_directories(dir);

  {
    auto out = open_out(dir / "aur_surface.csv");
    out << "policy,tau,time_index,aur,defined_replicas\n";
    for (auto const &s : result.surfaces)
    {
      for (std::size_t ti = 0; ti < s.taus.size(); ++ti)
      {
        for (std::size_t k = 1; k <= s.horizon; ++k)
        {
          out << to_string(s.policy) << ',' << num(s.taus[ti]) << ',' << k << ',' << num(s.at(ti, k)) << ','
              << s.defined_at(ti, k) << '\n';
        }
      }
    }
  }
  {
    auto out = open_out(dir / "selections.csv");
    out << "policy,tau,replica,time_index,rank,node,gain_estimate\n";
    for (auto const &r : result.selections)
    {
      out << to_string(r.policy) << ',' << num(r.tau) << ',' << r.replica << ',' << r.time_index << ',' << r.rank
          << ',' << r.node << ',' << num(r.gain) << '\n';
    }
  }
  {
    auto out = open_out(dir / "degree_histogram.csv");
    out << "policy,tau,time_index,degree_bucket,relative_frequency,count\n";
    for (auto const &h : result.histograms)
    {
      for (std::size_t k = 1; k <= h.horizon; ++k)
      {
        for (std::size_t b = 0; b < kDegreeBuckets; ++b)
        {
          std::string const bucket = b + 1 == kDegreeBuckets ? fmt::format("{}+", b) : fmt::format("{}", b);
          out << to_string(h.policy) << ',' << num(h.tau) << ',' << k << ',' << bucket << ','
              << num(h.frequency_at(k, b)) << ',' << h.counts[(k - 1) * kDegreeBuckets + b] << '\n';
        }
      }
    }
  }
  {
    auto meta      = base_meta(exp);
    meta["command"] = "sweep";
    auto out       = open_out(dir / "run_meta.json");
    out << meta.dump(2) << '\n';
  }
}

void write_trajectory(ReplicaRecord const &rec, PreparedExperiment const &exp, PolicyKind kind, double tau,
                      std::filesystem::path const &dir)
{
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "beliefs.csv");
    out << "time_index,node,p_predictive,p_updated\n";
    for (auto const &step : rec.steps)
    {
      auto const &f = step.filter;
      for (std::size_t i = 0; i < f.updated.size(); ++i)
      {
        out << f.updated.time_index << ',' << i << ',' << num(f.predictive.probs[i]) << ','
            << num(f.updated.probs[i]) << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "selections.csv");
    out << "time_index,rank,node,gain_estimate\n";
    for (auto const &step : rec.steps)
    {
      for (std::size_t r = 0; r < step.selection.nodes.size(); ++r)
      {
        out << step.truth.time_index << ',' << r << ',' << step.selection.nodes[r] << ','
            << num(step.selection.gains[r]) << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "observations.csv");
    out << "time_index,node";
    for (std::size_t d = 0; d < exp.sensor.dim(); ++d)
    {
      out << ",y" << d;
    }
    out << '\n';
    for (auto const &step : rec.steps)
    {
      for (auto const &o : step.filter.observations)
      {
        out << o.time_index << ',' << o.node;
        for (double v : o.value)
        {
          out << ',' << num(v);
        }
        out << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "truth.csv");
    out << "time_index,node,state\n";
    auto dump = [&](StateVector const &z) {
      for (std::size_t i = 0; i < z.size(); ++i)
      {
        out << z.time_index << ',' << i << ',' << static_cast<int>(z.states[i]) << '\n';
      }
    };
    dump(rec.initial_truth);
    for (auto const &step : rec.steps)
    {
      dump(step.truth);
    }
  }
  {
    auto meta       = base_meta(exp);
    meta["command"] = "simulate";
    meta["policy"]  = std::string(to_string(kind));
    meta["tau"]     = tau;
    meta["beta"]    = tau * exp.config.gamma;
    meta["gamma"]   = exp.config.gamma;
    auto out        = open_out(dir / "run_meta.json");
    out << meta.dump(2) << '\n';
  }
}

std::vector<FilterStep> read_trajectory(std::filesystem::path const &dir)
{
  auto const belief_rows = read_csv(dir / "beliefs.csv", "time_index,node,p_predictive,p_updated");
  auto const obs_rows    = read_csv(dir / "observations.csv", "time_index,node");

  std::map<std::size_t, FilterStep> steps;
  for (auto const &row : belief_rows)
  {
    if (row.size() != 4)
    {
      throw ParameterError("beliefs.csv: expected 4 columns");
    }
    auto const k    = static_cast<std::size_t>(parse_num(row[0]));
    auto const node = static_cast<std::size_t>(parse_num(row[1]));
    auto      &step = steps[k];
    if (step.predictive.probs.size() != node)
    {
      throw ParameterError("beliefs.csv: nodes must be listed in order for each time index");
    }
    step.predictive.kind       = BeliefKind::kPredictive;
    step.predictive.time_index = k;
    step.updated.time_index    = k;
    step.predictive.probs.push_back(parse_num(row[2]));
    step.updated.probs.push_back(parse_num(row[3]));
  }
  for (auto const &row : obs_rows)
  {
    if (row.size() < 3)
    {
      throw ParameterError("observations.csv: expected at least 3 columns");
    }
    Observation o;
    o.time_index = static_cast<std::size_t>(parse_num(row[0]));
    o.node       = static_cast<NodeId>(parse_num(row[1]));
    for (std::size_t c = 2; c < row.size(); ++c)
    {
      o.value.push_back(parse_num(row[c]));
    }
    auto it = steps.find(o.time_index);
    if (it == steps.end())
    {
      throw ParameterError("observations.csv references a time index missing from beliefs.csv");
    }
    it->second.observations.push_back(std::move(o));
  }
  std::vector<FilterStep> out;
  out.reserve(steps.size());
  for (auto &[k, step] : steps)
  {
    out.push_back(std::move(step));
  }
  return out;
}

void write_bound_report(BoundReport const &report, std::filesystem::path const &path)
{
  auto out = open_out(path);
  out << "time_index,node,case_tag,b,p_pred,p_updated,bound_value,valid,violated\n";
  for (auto const &r : report.rows)
  {
    out << r.time_index << ',' << r.node << ',' << to_string(r.case_tag) << ',' << num(r.b) << ',' << num(r.p_pred)
        << ',' << num(r.p_updated) << ',' << num(r.bound) << ',' << (r.valid ? 1 : 0) << ','
        << (r.violated ? 1 : 0) << '\n';
  }
}

}  // namespace sistrack
