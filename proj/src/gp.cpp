// Copyright 2026 The SCORE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "score/gp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "score/error.hpp"

namespace score::gp {

void KernelConfig::validate() const {
  const bool finite = std::isfinite(lengthscale) && std::isfinite(signal_variance) &&
                      std::isfinite(noise_variance) && std::isfinite(jitter);
  if (!finite || lengthscale <= 0.0 || signal_variance <= 0.0 || noise_variance < 0.0 ||
      jitter < 1e-12) {
    throw ConfigError("invalid kernel configuration");
  }
}

Eigen::MatrixXd kernel_matrix(const Inputs& a, const Inputs& b, const KernelConfig& k) {
  const double scale = -0.5 / (k.lengthscale * k.lengthscale);
  Eigen::MatrixXd out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      double d2 = 0.0;
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        const double diff = a(i, c) - b(j, c);
        d2 += diff * diff;
      }
      out(i, j) = k.signal_variance * std::exp(scale * d2);
    }
  }
  return out;
}

GpModel::GpModel(Inputs inputs, std::span<const double> targets,
                 const KernelConfig& kernel)
    : inputs_(std::move(inputs)), kernel_(kernel) {
  kernel_.validate();
  const auto n = static_cast<Eigen::Index>(targets.size());
  if (n < 1 || inputs_.rows() != n || inputs_.cols() < 1) {
    throw ConfigError("gp_fit: need >= 1 training pair with matching input rows");
  }
  targets_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(targets[static_cast<std::size_t>(i)]) || !inputs_.row(i).allFinite()) {
      throw ConfigError("gp_fit: non-finite training data");
    }
    targets_[i] = targets[static_cast<std::size_t>(i)];
  }
  target_mean_ = targets_.mean();
  const double var = (targets_.array() - target_mean_).square().mean();
  target_std_ = var > 0.0 ? std::sqrt(var) : 1.0;
  targets_ = (targets_.array() - target_mean_) / target_std_;

  const Eigen::MatrixXd k = kernel_matrix(inputs_, inputs_, kernel_);
  double jitter = kernel_.jitter;
  for (;;) {
    Eigen::MatrixXd kn = k;
    kn.diagonal().array() += kernel_.noise_variance + jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(kn);
    if (llt.info() == Eigen::Success) {
      chol_ = llt.matrixL();
      alpha_ = llt.solve(targets_);
      jitter_used_ = jitter;
      break;
    }
    if (jitter >= 1e-2) {
      throw SurrogateError("Cholesky failed with jitter up to 1e-2 (" +
                           std::to_string(n) + " points)");
    }
    jitter = std::min(jitter * 10.0, 1e-2);
  }
}

std::vector<PosteriorStats> GpModel::predict(const Inputs& queries) const {
  if (queries.cols() != inputs_.cols()) {
    throw ConfigError("gp_predict: query dimensionality does not match training data");
  }
  const Eigen::MatrixXd ks = kernel_matrix(inputs_, queries, kernel_);  // n x q
  std::vector<PosteriorStats> out(static_cast<std::size_t>(queries.rows()));
  // Column by column so a query's result does not depend on its batch.
  const auto lower = chol_.triangularView<Eigen::Lower>();
  Eigen::VectorXd v(ks.rows());
  for (Eigen::Index j = 0; j < queries.rows(); ++j) {
    const double mean = ks.col(j).dot(alpha_);
    v = lower.solve(ks.col(j));
    const double var = std::max(0.0, kernel_.signal_variance - v.squaredNorm());
    out[static_cast<std::size_t>(j)] = {target_mean_ + target_std_ * mean,
                                        target_std_ * std::sqrt(var)};
  }
  return out;
}

PosteriorStats GpModel::predict_one(std::span<const double> query) const {
  Inputs q(1, static_cast<Eigen::Index>(query.size()));
  for (std::size_t i = 0; i < query.size(); ++i) q(0, static_cast<Eigen::Index>(i)) = query[i];
  return predict(q).front();
}

GpModel gp_fit(Inputs inputs, std::span<const double> targets, const KernelConfig& kernel) {
  return GpModel(std::move(inputs), targets, kernel);
}

std::vector<PosteriorStats> gp_predict(const GpModel& model, const Inputs& queries) {
  return model.predict(queries);
}

Inputs column(std::span<const double> xs) {
  Inputs m(static_cast<Eigen::Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = xs[i];
  return m;
}

}  // namespace score::gp
