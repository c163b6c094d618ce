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

#include "sistrack/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "sistrack/rng.hpp"

namespace sistrack {

Graph::Graph(std::size_t n, std::vector<Edge> edges)
  : degrees_(n, 0)
{
  for (auto &e : edges)
  {
    if (e.first >= n || e.second >= n)
    {
      throw ParameterError("edge endpoint out of range");
    }
    if (e.first == e.second)
    {
      throw ParameterError("self-loop on node " + std::to_string(e.first));
    }
    if (e.first > e.second)
    {
      std::swap(e.first, e.second);
    }
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
  {
    throw ParameterError("duplicate edge");
  }
  edges_ = std::move(edges);

  for (auto const &[a, b] : edges_)
  {
    ++degrees_[a];
    ++degrees_[b];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
  {
    offsets_[i + 1] = offsets_[i] + degrees_[i];
  }
  neighbors_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (auto const &[a, b] : edges_)
  {
    neighbors_[cursor[a]++] = b;
    neighbors_[cursor[b]++] = a;
  }
  for (std::size_t i = 0; i < n; ++i)
  {
    std::sort(neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }
}

std::size_t Graph::max_degree() const noexcept
{
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

double Graph::average_degree() const noexcept
{
  return degrees_.empty() ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(degrees_.size());
}

bool Graph::adjacent(NodeId i, NodeId j) const noexcept
{
  if (i >= node_count() || j >= node_count())
  {
    return false;
  }
  auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

Graph generate_scale_free(std::size_t n, std::size_t m_attach, std::uint64_t seed)
{
  if (m_attach < 1 || n < m_attach + 1)
  {
    throw ParameterError("generate_scale_free requires m_attach >= 1 and n >= m_attach + 1");
  }
  Rng               rng{derive_seed({seed, 0x6752'4150ull})};
  std::vector<Edge> edges;
  // Each endpoint occurrence is one ticket; uniform draws from this pool are
  // degree-proportional.
  std::vector<NodeId> pool;

  std::size_t const core = m_attach + 1;
  for (NodeId i = 0; i < core; ++i)
  {
    for (NodeId j = i + 1; j < core; ++j)
    {
      edges.emplace_back(i, j);
      pool.push_back(i);
      pool.push_back(j);
    }
  }

  std::vector<NodeId> targets;
  for (auto v = static_cast<NodeId>(core); v < n; ++v)
  {
    targets.clear();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    while (targets.size() < m_attach)
    {
      NodeId t = pool[pick(rng)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end())
      {
        targets.push_back(t);
      }
    }
    for (auto t : targets)
    {
      edges.emplace_back(t, v);
      pool.push_back(t);
      pool.push_back(v);
    }
  }
  return Graph{n, std::move(edges)};
}

Graph read_edge_list(std::istream &in, std::size_t n)
{
  std::vector<Edge> edges;
  std::string       line;
  std::size_t       lineno   = 0;
  std::size_t       max_node = 0;
  bool              any      = false;
  while (std::getline(in, line))
  {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
    {
      continue;
    }
    std::istringstream ls(line);
    long long          a = -1;
    long long          b = -1;
    std::string        rest;
    if (!(ls >> a >> b) || (ls >> rest) || a < 0 || b < 0)
    {
      throw ParameterError("malformed edge on line " + std::to_string(lineno));
    }
    edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    max_node = std::max<std::size_t>(max_node, static_cast<std::size_t>(std::max(a, b)));
    any      = true;
  }
  std::size_t const count = any ? max_node + 1 : 0;
  if (n != 0 && n < count)
  {
    throw ParameterError("edge list references nodes beyond the declared node count");
  }
  return Graph{std::max(n, count), std::move(edges)};
}

Graph load_edge_list(std::filesystem::path const &path, std::size_t n)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ParameterError("cannot open edge list " + path.string());
  }
  return read_edge_list(in, n);
}

void write_edge_list(std::ostream &out, Graph const &g)
{
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  for (auto const &[a, b] : g.edges())
  {
    out << a << ' ' << b << '\n';
  }
}

void save_edge_list(std::filesystem::path const &path, Graph const &g)
{
  std::ofstream out(path);
  if (!out)
  {
    throw ParameterError("cannot write edge list " + path.string());
  }
  write_edge_list(out, g);
}

}  // namespace sistrack
