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

#include "sistrack/sensor.hpp"

#include <cmath>
#include <numbers>

#include "sistrack/errors.hpp"

namespace sistrack {

SensorParams::SensorParams(Eigen::VectorXd mean_susceptible, Eigen::VectorXd mean_infected,
                           Eigen::MatrixXd covariance)
  : mean0_(std::move(mean_susceptible))
  , mean1_(std::move(mean_infected))
  , cov_(std::move(covariance))
{
  auto const d = mean0_.size();
  if (d == 0 || mean1_.size() != d || cov_.rows() != d || cov_.cols() != d)
  {
    throw ParameterError("sensor means and covariance must share one nonzero dimension");
  }
  if (!mean0_.allFinite() || !mean1_.allFinite() || !cov_.allFinite())
  {
    throw ParameterError("sensor parameters must be finite");
  }
  if (!cov_.isApprox(cov_.transpose(), 1e-12))
  {
    throw ParameterError("sensor covariance must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov_);
  if (llt.info() != Eigen::Success)
  {
    throw ParameterError("sensor covariance must be positive-definite");
  }
  chol_ = llt.matrixL();
  if ((chol_.diagonal().array() <= 0.0).any())
  {
    throw ParameterError("sensor covariance must be positive-definite");
  }

  double const log_det = 2.0 * chol_.diagonal().array().log().sum();
  log_norm_            = -0.5 * (static_cast<double>(d) * std::log(2.0 * std::numbers::pi) + log_det);

  Eigen::VectorXd const diff = mean1_ - mean0_;
  Eigen::VectorXd const w    = llt.solve(diff);
  llr_weights_.assign(w.data(), w.data() + d);
  // log f1 - log f0 = w^T y - (mu1^T w + mu0^T w) / 2
  llr_offset_ = -0.5 * (mean1_ + mean0_).dot(w);
  sep_sq_     = diff.dot(w);
}

SensorParams SensorParams::isotropic(std::size_t dim, double separation, double variance)
{
  if (dim == 0)
  {
    throw ParameterError("sensor dimension must be positive");
  }
  if (!(variance > 0.0))
  {
    throw ParameterError("sensor variance must be positive");
  }
  Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  Eigen::VectorXd mu1 = mu0;
  mu1[0]              = separation;
  return SensorParams{mu0, mu1,
                      variance * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};
}

double SensorParams::log_density(std::span<const double> y, int z) const
{
  if (y.size() != dim())
  {
    throw ParameterError("observation dimension does not match the sensor");
  }
  Eigen::Map<const Eigen::VectorXd> ym(y.data(), static_cast<Eigen::Index>(y.size()));
  Eigen::VectorXd const             white = chol_.triangularView<Eigen::Lower>().solve(ym - mean(z));
  return log_norm_ - 0.5 * white.squaredNorm();
}

double SensorParams::log_likelihood_ratio(std::span<const double> y) const noexcept
{
  double s = llr_offset_;
  for (std::size_t i = 0; i < llr_weights_.size(); ++i)
  {
    s += llr_weights_[i] * y[i];
  }
  return s;
}

void SensorParams::sample_into(int z, Rng &rng, std::span<double> out) const
{
  std::normal_distribution<double> normal(0.0, 1.0);
  auto const                       d = dim();
  // out = mu_z + L eps
  for (std::size_t i = 0; i < d; ++i)
  {
    out[i] = normal(rng);
  }
  Eigen::Map<Eigen::VectorXd> om(out.data(), static_cast<Eigen::Index>(d));
  om = chol_.triangularView<Eigen::Lower>() * om;
  om += mean(z);
}

std::vector<double> SensorParams::sample(int z, Rng &rng) const
{
  std::vector<double> y(dim());
  sample_into(z, rng, y);
  return y;
}

std::vector<double> observe(int z_i, SensorParams const &sp, Rng &rng)
{
  return sp.sample(z_i, rng);
}

double log_likelihood(std::span<const double> y, int z, SensorParams const &sp)
{
  return sp.log_density(y, z);
}

double marginal_likelihood(std::span<const double> y, double p_pred, SensorParams const &sp)
{
  if (!(p_pred >= 0.0 && p_pred <= 1.0))
  {
    throw ParameterError("predictive probability must lie in [0, 1]");
  }
  double const l1 = sp.log_density(y, 1);
  double const l0 = sp.log_density(y, 0);
  return p_pred * std::exp(l1) + (1.0 - p_pred) * std::exp(l0);
}

}  // namespace sistrack
