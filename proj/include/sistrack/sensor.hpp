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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sistrack/graph.hpp"
#include "sistrack/rng.hpp"

namespace sistrack {

/**
 * Two-class Gaussian sensor: y = mean(z) + w with w ~ N(0, covariance) shared
 * by both classes.
 *
 * Because the covariance is shared, log f1(y) - log f0(y) is affine in y. Its
 * weights, offset and the squared Mahalanobis separation between the class
 * means are cached at construction; the covariance must be symmetric
 * positive-definite or construction throws ParameterError.
 */
class SensorParams
{
public:
  SensorParams(Eigen::VectorXd mean_susceptible, Eigen::VectorXd mean_infected, Eigen::MatrixXd covariance);

  /// mean_susceptible = 0, mean_infected = separation * e_1, covariance = variance * I.
  static SensorParams isotropic(std::size_t dim, double separation, double variance = 1.0);

  std::size_t            dim() const noexcept { return static_cast<std::size_t>(mean0_.size()); }
  Eigen::VectorXd const &mean(int z) const noexcept { return z != 0 ? mean1_ : mean0_; }
  Eigen::MatrixXd const &covariance() const noexcept { return cov_; }

  double log_density(std::span<const double> y, int z) const;
  double log_likelihood_ratio(std::span<const double> y) const noexcept;

  /// (mu1 - mu0)^T Sigma^{-1} (mu1 - mu0). Under class z the log-likelihood
  /// ratio is N((2z - 1) d2 / 2, d2).
  double separation_sq() const noexcept { return sep_sq_; }

  void                sample_into(int z, Rng &rng, std::span<double> out) const;
  std::vector<double> sample(int z, Rng &rng) const;

private:
  Eigen::VectorXd       mean0_;
  Eigen::VectorXd       mean1_;
  Eigen::MatrixXd       cov_;
  Eigen::MatrixXd       chol_;  // lower factor L, cov = L L^T
  std::vector<double>   llr_weights_;
  double                llr_offset_  = 0.0;
  double                log_norm_    = 0.0;
  double                sep_sq_      = 0.0;
};

struct Observation
{
  NodeId              node = 0;
  std::vector<double> value;
  std::size_t         time_index = 0;
};

/// Noisy measurement of one node whose true state is z_i.
std::vector<double> observe(int z_i, SensorParams const &sp, Rng &rng);

double log_likelihood(std::span<const double> y, int z, SensorParams const &sp);

/// p f1(y) + (1 - p) f0(y).
double marginal_likelihood(std::span<const double> y, double p_pred, SensorParams const &sp);

}  // namespace sistrack
