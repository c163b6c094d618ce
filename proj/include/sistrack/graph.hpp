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
#include <span>
#include <utility>
#include <vector>

#include "sistrack/errors.hpp"

namespace sistrack {

using NodeId = std::uint32_t;
using Edge   = std::pair<NodeId, NodeId>;

/**
 * Immutable undirected simple graph stored in compressed sparse row form.
 *
 * Edges are kept canonical (first < second) and sorted; neighbor lists are
 * sorted ascending. Construction rejects self-loops, duplicates and
 * out-of-range endpoints.
 */
class Graph
{
public:
  Graph() = default;
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return degrees_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge>   edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId i) const noexcept
  {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }
  std::size_t                  degree(NodeId i) const noexcept { return degrees_[i]; }
  std::span<const std::size_t> degrees() const noexcept { return degrees_; }
  std::size_t                  max_degree() const noexcept;
  double                       average_degree() const noexcept;

  bool adjacent(NodeId i, NodeId j) const noexcept;

  bool operator==(Graph const &other) const noexcept { return edges_ == other.edges_ && degrees_.size() == other.degrees_.size(); }

private:
  std::vector<Edge>        edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId>      neighbors_;
  std::vector<std::size_t> degrees_;
};

/// Preferential attachment seeded by a clique on m_attach + 1 nodes; each later
/// node attaches to m_attach distinct existing nodes chosen proportionally to degree.
Graph generate_scale_free(std::size_t n, std::size_t m_attach, std::uint64_t seed);

/// Edge list text: one "i j" pair per line, '#' lines ignored. The node count is
/// max index + 1 unless `n` is given (which allows trailing isolated nodes).
Graph read_edge_list(std::istream &in, std::size_t n = 0);
Graph load_edge_list(std::filesystem::path const &path, std::size_t n = 0);
void  write_edge_list(std::ostream &out, Graph const &g);
void  save_edge_list(std::filesystem::path const &path, Graph const &g);

}  // namespace sistrack
