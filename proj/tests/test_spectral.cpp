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

#include <gtest/gtest.h>

#include "sistrack/spectral.hpp"
#include "test_support.hpp"

using namespace sistrack;
using sistrack::testing::dense_lambda1;
using sistrack::testing::random_nonempty_graph;

namespace {

Graph star(std::size_t leaves)
{
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i)
  {
    e.emplace_back(0, i);
  }
  return Graph(leaves + 1, e);
}

}  // namespace

TEST(Spectral, StarAndComplete)
{
  EXPECT_NEAR(spectral_radius(star(4)).spectral_radius, 2.0, 1e-9);
  EXPECT_NEAR(spectral_radius(generate_scale_free(5, 4, 0)).spectral_radius, 4.0, 1e-9);
  EXPECT_NEAR(epidemic_threshold(star(4)), 0.5, 1e-9);
  EXPECT_NEAR(epidemic_threshold(generate_scale_free(5, 4, 0)), 0.25, 1e-9);
}

TEST(Spectral, BipartiteConverges)
{
  // Even cycles and paths have -lambda_1 in the spectrum.
  Graph const c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  EXPECT_NEAR(spectral_radius(c6).spectral_radius, 2.0, 1e-9);
  Graph const p4(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_NEAR(spectral_radius(p4).spectral_radius, dense_lambda1(p4), 1e-9);
}

TEST(Spectral, MatchesDenseOracleOnSmallGraphs)
{
  auto const g = random_nonempty_graph(8, 0.4, 3);
  EXPECT_NEAR(spectral_radius(g).spectral_radius, dense_lambda1(g), 1e-6);
  for (std::uint64_t s = 0; s < 40; ++s)
  {
    auto const h = random_nonempty_graph(2 + s % 7, 0.5, 100 + s);
    auto const r = spectral_radius(h);
    EXPECT_NEAR(r.spectral_radius, dense_lambda1(h), 1e-6) << "seed " << s;
    EXPECT_LE(r.residual, 1e-8);
  }
}

TEST(Spectral, DisconnectedComponentsTakeTheLargest)
{
  Graph const g(7, {{0, 1}, {2, 3}, {3, 4}, {4, 2}, {5, 6}});
  EXPECT_NEAR(spectral_radius(g).spectral_radius, 2.0, 1e-9);
}

TEST(Spectral, ErrorsAndNonConvergence)
{
  EXPECT_THROW(epidemic_threshold(Graph(4, {})), DomainError);
  auto const g = generate_scale_free(100, 2, 1);
  try
  {
    spectral_radius(g, 1e-15, 2);
    FAIL() << "expected ConvergenceError";
  }
  catch (ConvergenceError const &e)
  {
    EXPECT_GT(e.best().spectral_radius, 0.0);
    EXPECT_LE(e.best().iterations, 2u);
  }
}

TEST(Spectral, PaperSanityBand)
{
  double const tc = epidemic_threshold(generate_scale_free(200, 2, 7));
  EXPECT_GE(tc, 0.05);
  EXPECT_LE(tc, 0.3);
}
