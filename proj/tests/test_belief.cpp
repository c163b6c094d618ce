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

#include <gtest/gtest.h>

#include "sistrack/belief.hpp"
#include "test_support.hpp"

using namespace sistrack;
using sistrack::testing::JointChain;
using sistrack::testing::random_nonempty_graph;

namespace {

BeliefVector updated(std::vector<double> p)
{
  return BeliefVector{std::move(p), BeliefKind::kUpdated, 0};
}

}  // namespace

TEST(MeanField, ZeroIsAbsorbing)
{
  auto const g = generate_scale_free(30, 2, 1);
  auto const b = predict_mean_field(g, updated(std::vector<double>(30, 0.0)), SisParams(0.9, 0.1));
  for (double p : b.probs)
  {
    EXPECT_EQ(p, 0.0);
  }
  EXPECT_EQ(b.kind, BeliefKind::kPredictive);
  EXPECT_EQ(b.time_index, 1u);
}

TEST(MeanField, HandValues)
{
  Graph const g(4, {{0, 1}, {0, 2}});
  auto const  b = predict_mean_field(g, updated({0.0, 0.5, 0.5, 0.6}), SisParams(0.5, 0.5));
  EXPECT_DOUBLE_EQ(b.probs[0], 0.4375);
  EXPECT_DOUBLE_EQ(b.probs[3], 0.3);
}

TEST(MeanField, OneStepFromProductMeasureIsExact)
{
  // Starting from independent marginals the Reed-Frost product is exact.
  for (std::uint64_t s = 0; s < 10; ++s)
  {
    auto const          g = random_nonempty_graph(5, 0.5, 40 + s);
    std::vector<double> p{0.1, 0.7, 0.3, 0.9, 0.5};
    SisParams const     sis(0.4, 0.3);
    JointChain const    chain(g, sis.beta, sis.gamma);
    auto const          exact = chain.marginals(chain.step(chain.product(p)));
    auto const          mf    = predict_mean_field(g, updated(p), sis);
    for (std::size_t i = 0; i < 5; ++i)
    {
      EXPECT_NEAR(mf.probs[i], exact[i], 1e-12);
    }
  }
}

TEST(MeanField, BiasAgainstJointChain)
{
  // From a known initial state the first two steps are exact; afterwards
  // neighbour correlations build up and the mean-field total prevalence is
  // on average above the exact value. The bias is not element-wise.
  double bias_sum  = 0.0;
  int    instances = 0;
  for (std::uint64_t s = 0; s < 20; ++s)
  {
    auto const          g = random_nonempty_graph(6, 0.5, 900 + s);
    std::vector<double> z0(6, 0.0);
    z0[s % 6]       = 1.0;
    z0[(s + 3) % 6] = 1.0;
    SisParams const  sis(0.3 + 0.02 * static_cast<double>(s), 0.2);
    JointChain const chain(g, sis.beta, sis.gamma);
    auto             pi = chain.product(z0);
    auto             b  = updated(z0);
    for (int k = 1; k <= 8; ++k)
    {
      pi                = chain.step(pi);
      b                 = predict_mean_field(g, b, sis);
      auto const exact  = chain.marginals(pi);
      double     diff   = 0.0;
      for (std::size_t i = 0; i < 6; ++i)
      {
        if (k <= 2)
        {
          EXPECT_NEAR(b.probs[i], exact[i], 1e-12);
        }
        diff += b.probs[i] - exact[i];
      }
      if (k == 8)
      {
        bias_sum += diff;
        ++instances;
      }
    }
  }
  EXPECT_GT(bias_sum / instances, 0.0);
}

TEST(Bayes, PosteriorProbability)
{
  EXPECT_NEAR(posterior_probability(0.5, std::log(0.8), std::log(0.2)), 0.8, 1e-15);
  EXPECT_EQ(posterior_probability(0.0, 1.0, -5.0), 0.0);
  EXPECT_EQ(posterior_probability(1.0, -5.0, 1.0), 1.0);
  EXPECT_NEAR(posterior_probability(0.3, -1.0, -1.0), 0.3, 1e-15);
  // Far tails stay finite.
  EXPECT_NEAR(posterior_probability(0.5, -800.0, -1.0), 0.0, 1e-300);
}

TEST(Bayes, UnsampledUntouchedSampledClamped)
{
  auto const        sp = SensorParams::isotropic(2, 40.0, 1.0);
  BeliefVector const pred{{0.3, 0.0, 0.5, 1.0}, BeliefKind::kPredictive, 4};
  Rng               rng(9);
  std::vector<Observation> obs{{2, sp.sample(0, rng), 4}, {0, sp.sample(1, rng), 4}};
  auto const        up = bayes_update(pred, obs, sp);
  EXPECT_EQ(up.kind, BeliefKind::kUpdated);
  EXPECT_EQ(up.probs[1], 0.0);
  EXPECT_EQ(up.probs[3], 1.0);
  EXPECT_EQ(up.probs[2], kBeliefClamp);
  EXPECT_EQ(up.probs[0], 1.0 - kBeliefClamp);
}

TEST(Bayes, EqualLikelihoodsLeaveBeliefUnchanged)
{
  auto const        sp = SensorParams::isotropic(2, 0.0, 1.0);
  BeliefVector const pred{{0.37, 0.6}, BeliefKind::kPredictive, 1};
  Rng               rng(1);
  std::vector<Observation> obs{{0, sp.sample(1, rng), 1}};
  EXPECT_NEAR(bayes_update(pred, obs, sp).probs[0], 0.37, 1e-15);
}

TEST(Bayes, RejectsDuplicatesAndUnknownNodes)
{
  auto const               sp = SensorParams::isotropic(2, 1.0, 1.0);
  BeliefVector const       pred{{0.5, 0.5}, BeliefKind::kPredictive, 1};
  std::vector<double> const y{0.0, 0.0};
  std::vector<Observation> dup{{0, y, 1}, {0, y, 1}};
  std::vector<Observation> unknown{{2, y, 1}};
  EXPECT_THROW(bayes_update(pred, dup, sp), ParameterError);
  EXPECT_THROW(bayes_update(pred, unknown, sp), ParameterError);
}

TEST(Bayes, MartingaleAndChiSquare)
{
  // Under y ~ g = p f1 + (1-p) f0 the posterior has mean p and variance
  // p^2 chi^2(f1 || g).
  auto const    sp = SensorParams::isotropic(2, 1.5, 1.0);
  Rng           rng(31);
  constexpr int N  = 200000;
  for (double p : {0.1, 0.5, 0.8})
  {
    std::bernoulli_distribution coin(p);
    double                      s1 = 0.0;
    double                      s2 = 0.0;
    for (int t = 0; t < N; ++t)
    {
      auto const   y    = sp.sample(coin(rng) ? 1 : 0, rng);
      double const post = posterior_probability(p, sp.log_density(y, 1), sp.log_density(y, 0));
      s1 += post;
      s2 += post * post;
    }
    double const mean = s1 / N;
    double const var  = s2 / N - mean * mean;
    EXPECT_NEAR(mean, p, 4.0 * std::sqrt(var / N));
    double const predicted = p * p * chi_square_to_mixture(p, sp);
    EXPECT_NEAR(var, predicted, 0.02 * predicted + 1e-6);
  }
}

TEST(TotalDeviation, EdgeCases)
{
  auto const          sp = SensorParams::isotropic(2, 2.0, 1.0);
  BeliefVector const  pred{{0.2, 0.5, 0.9}, BeliefKind::kPredictive, 1};
  std::vector<NodeId> none;
  EXPECT_EQ(total_deviation(pred, none, sp), 0.0);
  std::vector<NodeId> all{0, 1, 2};
  EXPECT_NEAR(total_deviation(pred, all, SensorParams::isotropic(2, 0.0, 1.0)), 0.0, 1e-15);
  EXPECT_GT(total_deviation(pred, all, sp), 0.0);
  std::vector<NodeId> bad{3};
  EXPECT_THROW(total_deviation(pred, bad, sp), ParameterError);
}

TEST(InitialBelief, IsIndicator)
{
  StateVector const z{{0, 1, 1, 0}, 0};
  auto const        b = initial_belief(z);
  EXPECT_EQ(b.probs, (std::vector<double>{0, 1, 1, 0}));
  EXPECT_EQ(b.kind, BeliefKind::kUpdated);
}
