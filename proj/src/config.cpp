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

#include "sistrack/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "sistrack/errors.hpp"

namespace sistrack {

namespace {

std::string trim(std::string const &s)
{
  auto const b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
  {
    return {};
  }
  auto const e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string const &v)
{
  std::vector<std::string> out;
  std::stringstream        ss(v);
  std::string              item;
  while (std::getline(ss, item, ','))
  {
    item = trim(item);
    if (!item.empty())
    {
      out.push_back(item);
    }
  }
  return out;
}

double to_double(std::string const &key, std::string const &v)
{
  char        *end = nullptr;
  double const x   = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x))
  {
    throw ParameterError("config key '" + key + "': expected a number, got '" + v + "'");
  }
  return x;
}

std::uint64_t to_uint(std::string const &key, std::string const &v)
{
  char *end = nullptr;
  if (v.empty() || v.front() == '-')
  {
    throw ParameterError("config key '" + key + "': expected a nonnegative integer, got '" + v + "'");
  }
  unsigned long long const x = std::strtoull(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size())
  {
    throw ParameterError("config key '" + key + "': expected a nonnegative integer, got '" + v + "'");
  }
  return x;
}

bool to_bool(std::string const &key, std::string const &v)
{
  if (v == "true" || v == "1" || v == "yes")
  {
    return true;
  }
  if (v == "false" || v == "0" || v == "no")
  {
    return false;
  }
  throw ParameterError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> to_doubles(std::string const &key, std::string const &v)
{
  std::vector<double> out;
  for (auto const &item : split_list(v))
  {
    out.push_back(to_double(key, item));
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig &, std::string const &, std::string const &)>;

std::map<std::string, Setter> const &setters()
{
  static std::map<std::string, Setter> const table = {
      {"graph.n", [](auto &c, auto const &k, auto const &v) { c.graph.n = to_uint(k, v); }},
      {"graph.m_attach", [](auto &c, auto const &k, auto const &v) { c.graph.m_attach = to_uint(k, v); }},
      {"graph.seed", [](auto &c, auto const &k, auto const &v) { c.graph.seed = to_uint(k, v); }},
      {"graph.edge_list", [](auto &c, auto const &, auto const &v) { c.graph.edge_list = v; }},
      {"sensor.dim", [](auto &c, auto const &k, auto const &v) { c.sensor.dim = to_uint(k, v); }},
      {"sensor.separation", [](auto &c, auto const &k, auto const &v) { c.sensor.separation = to_double(k, v); }},
      {"sensor.variance", [](auto &c, auto const &k, auto const &v) { c.sensor.variance = to_double(k, v); }},
      {"sensor.mean_susceptible",
       [](auto &c, auto const &k, auto const &v) { c.sensor.mean_susceptible = to_doubles(k, v); }},
      {"sensor.mean_infected", [](auto &c, auto const &k, auto const &v) { c.sensor.mean_infected = to_doubles(k, v); }},
      {"sensor.covariance", [](auto &c, auto const &k, auto const &v) { c.sensor.covariance = to_doubles(k, v); }},
      {"sis.gamma", [](auto &c, auto const &k, auto const &v) { c.gamma = to_double(k, v); }},
      {"sweep.tau_scale",
       [](auto &c, auto const &k, auto const &v) {
         if (v == "relative")
         {
           c.tau_scale = TauScale::kRelative;
         }
         else if (v == "absolute")
         {
           c.tau_scale = TauScale::kAbsolute;
         }
         else
         {
           throw ParameterError("config key '" + k + "': expected 'relative' or 'absolute'");
         }
       }},
      {"sweep.tau_min", [](auto &c, auto const &k, auto const &v) { c.tau_min = to_double(k, v); }},
      {"sweep.tau_max", [](auto &c, auto const &k, auto const &v) { c.tau_max = to_double(k, v); }},
      {"sweep.tau_points", [](auto &c, auto const &k, auto const &v) { c.tau_points = to_uint(k, v); }},
      {"sweep.tau_values", [](auto &c, auto const &k, auto const &v) { c.tau_values = to_doubles(k, v); }},
      {"sweep.histogram_taus", [](auto &c, auto const &k, auto const &v) { c.histogram_taus = to_doubles(k, v); }},
      {"sweep.horizon", [](auto &c, auto const &k, auto const &v) { c.horizon = to_uint(k, v); }},
      {"sweep.replicas", [](auto &c, auto const &k, auto const &v) { c.replicas = to_uint(k, v); }},
      {"sweep.initial_infections",
       [](auto &c, auto const &k, auto const &v) { c.initial_infections = to_uint(k, v); }},
      {"sweep.root_seed", [](auto &c, auto const &k, auto const &v) { c.root_seed = to_uint(k, v); }},
      {"policy.kind",
       [](auto &c, auto const &, auto const &v) {
         c.policies.clear();
         for (auto const &item : split_list(v))
         {
           c.policies.push_back(parse_policy_kind(item));
         }
       }},
      {"policy.m", [](auto &c, auto const &k, auto const &v) { c.policy.m = to_uint(k, v); }},
      {"policy.alpha", [](auto &c, auto const &k, auto const &v) { c.policy.alpha = to_double(k, v); }},
      {"policy.mc_samples", [](auto &c, auto const &k, auto const &v) { c.policy.mc_samples = to_uint(k, v); }},
      {"policy.seed", [](auto &c, auto const &k, auto const &v) { c.policy.seed = to_uint(k, v); }},
      {"policy.common_random_numbers",
       [](auto &c, auto const &k, auto const &v) { c.policy.common_random_numbers = to_bool(k, v); }},
      {"run.jobs", [](auto &c, auto const &k, auto const &v) { c.jobs = static_cast<int>(to_uint(k, v)); }},
  };
  return table;
}

}  // namespace

SensorParams SensorSpec::build() const
{
  bool const explicit_means = !mean_susceptible.empty() || !mean_infected.empty();
  if (!explicit_means && covariance.empty())
  {
    return SensorParams::isotropic(dim, separation, variance);
  }
  auto const      d   = static_cast<Eigen::Index>(explicit_means ? mean_susceptible.size() : dim);
  Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd mu1 = Eigen::VectorXd::Zero(d);
  if (explicit_means)
  {
    if (mean_susceptible.size() != mean_infected.size())
    {
      throw ParameterError("sensor.mean_susceptible and sensor.mean_infected differ in length");
    }
    mu0 = Eigen::Map<const Eigen::VectorXd>(mean_susceptible.data(), d);
    mu1 = Eigen::Map<const Eigen::VectorXd>(mean_infected.data(), d);
  }
  else if (d > 0)
  {
    mu1[0] = separation;
  }
  Eigen::MatrixXd cov = variance * Eigen::MatrixXd::Identity(d, d);
  if (!covariance.empty())
  {
    if (covariance.size() != static_cast<std::size_t>(d * d))
    {
      throw ParameterError("sensor.covariance must hold dim * dim entries");
    }
    cov = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        covariance.data(), d, d);
  }
  return SensorParams{mu0, mu1, cov};
}

std::vector<double> ExperimentConfig::tau_grid_units() const
{
  if (!tau_values.empty())
  {
    return tau_values;
  }
  std::vector<double> out;
  if (tau_points == 1)
  {
    out.push_back(tau_min);
    return out;
  }
  double const lo = std::log(tau_min);
  double const hi = std::log(tau_max);
  for (std::size_t i = 0; i < tau_points; ++i)
  {
    out.push_back(std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(tau_points - 1)));
  }
  // Pin the end points so the grid spans exactly [tau_min, tau_max].
  out.front() = tau_min;
  out.back()  = tau_max;
  return out;
}

std::vector<double> ExperimentConfig::resolve_taus(std::vector<double> const &units, double tau_c) const
{
  std::vector<double> out(units);
  if (tau_scale == TauScale::kRelative)
  {
    for (auto &t : out)
    {
      t *= tau_c;
    }
  }
  return out;
}

void ExperimentConfig::validate() const
{
  if (!(gamma > 0.0 && gamma <= 1.0))
  {
    throw ParameterError("sis.gamma must lie in (0, 1]");
  }
  if (tau_values.empty())
  {
    if (tau_points < 1 || !(tau_min > 0.0) || !(tau_max >= tau_min))
    {
      throw ParameterError("tau grid must be nonempty with 0 < tau_min <= tau_max");
    }
  }
  for (double t : tau_values)
  {
    if (!(t > 0.0))
    {
      throw ParameterError("every tau must be positive");
    }
  }
  if (horizon < 1)
  {
    throw ParameterError("sweep.horizon must be at least 1");
  }
  if (replicas < 1)
  {
    throw ParameterError("sweep.replicas must be at least 1");
  }
  if (policies.empty())
  {
    throw ParameterError("policy.kind must name at least one policy");
  }
  if (graph.edge_list.empty())
  {
    if (initial_infections > graph.n)
    {
      throw ParameterError("sweep.initial_infections exceeds graph.n");
    }
    policy.validate(graph.n);
  }
  sensor.build();
}

void ExperimentConfig::validate_taus(std::vector<double> const &absolute_taus) const
{
  for (double t : absolute_taus)
  {
    double const beta = t * gamma;
    if (!(t > 0.0) || !(beta >= 0.0 && beta <= 1.0))
    {
      throw ParameterError("tau = " + std::to_string(t) + " gives beta = tau * gamma outside [0, 1]");
    }
  }
}

PolicyConfig ExperimentConfig::policy_for(PolicyKind kind) const
{
  PolicyConfig p = policy;
  p.kind         = kind;
  return p;
}

nlohmann::json ExperimentConfig::to_json() const
{
  nlohmann::json j;
  j["graph"] = {{"n", graph.n}, {"m_attach", graph.m_attach}, {"seed", graph.seed}, {"edge_list", graph.edge_list}};
  j["sensor"] = {{"dim", sensor.dim},
                 {"separation", sensor.separation},
                 {"variance", sensor.variance},
                 {"mean_susceptible", sensor.mean_susceptible},
                 {"mean_infected", sensor.mean_infected},
                 {"covariance", sensor.covariance}};
  j["sis"]    = {{"gamma", gamma}};
  j["sweep"]  = {{"tau_scale", tau_scale == TauScale::kRelative ? "relative" : "absolute"},
                 {"tau_min", tau_min},
                 {"tau_max", tau_max},
                 {"tau_points", tau_points},
                 {"tau_values", tau_values},
                 {"histogram_taus", histogram_taus},
                 {"horizon", horizon},
                 {"replicas", replicas},
                 {"initial_infections", initial_infections},
                 {"root_seed", root_seed}};
  std::vector<std::string> kinds;
  for (auto k : policies)
  {
    kinds.emplace_back(to_string(k));
  }
  j["policy"] = {{"kind", kinds},
                 {"m", policy.m},
                 {"alpha", policy.alpha},
                 {"mc_samples", policy.mc_samples},
                 {"seed", policy.seed},
                 {"common_random_numbers", policy.common_random_numbers}};
  return j;
}

ExperimentConfig parse_config(std::istream &in)
{
  ExperimentConfig cfg;
  std::string      line;
  std::size_t      lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
    {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty())
    {
      continue;
    }
    auto const eq = line.find('=');
    if (eq == std::string::npos)
    {
      throw ParameterError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string const key   = trim(line.substr(0, eq));
    std::string const value = trim(line.substr(eq + 1));
    auto const        it    = setters().find(key);
    if (it == setters().end())
    {
      throw ParameterError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    it->second(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ParameterError("cannot open config " + path.string());
  }
  return parse_config(in);
}

}  // namespace sistrack
