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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace score::gp {

enum class KernelKind { kSquaredExponential };

/// Squared-exponential kernel hyperparameters.
///
/// Variances are expressed on the standardized target scale the model works
/// in: signal_variance = 1 reproduces the sample variance of the targets once
/// de-standardized. `lengthscale` is in input units.
struct KernelConfig {
  KernelKind kind = KernelKind::kSquaredExponential;
  double lengthscale = 1.0;
  double signal_variance = 1.0;
  double noise_variance = 1e-6;
  double jitter = 1e-12;

  void validate() const;
};

struct PosteriorStats {
  double mean = 0.0;
  double std = 0.0;
};

/// Row-major training inputs: one row per point.
using Inputs = Eigen::MatrixXd;

/// Exact GP regression model. Immutable after construction.
class GpModel {
 public:
  /// Fits on `inputs` (rows are points) and raw `targets`. Throws
  /// SurrogateError when the Cholesky factorization fails even with the
  /// jitter escalated up to 1e-2.
  GpModel(Inputs inputs, std::span<const double> targets, const KernelConfig& kernel);

  std::vector<PosteriorStats> predict(const Inputs& queries) const;
  PosteriorStats predict_one(std::span<const double> query) const;

  std::size_t size() const { return static_cast<std::size_t>(inputs_.rows()); }
  std::size_t input_dims() const { return static_cast<std::size_t>(inputs_.cols()); }
  double target_mean() const { return target_mean_; }
  double target_std() const { return target_std_; }
  /// Diagonal addition actually used after escalation.
  double jitter_used() const { return jitter_used_; }
  const KernelConfig& kernel() const { return kernel_; }
  const Eigen::MatrixXd& chol() const { return chol_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  const Inputs& train_inputs() const { return inputs_; }
  const Eigen::VectorXd& train_targets() const { return targets_; }

  /// Standardize / de-standardize an objective value with the fit constants.
  double standardize(double y) const { return (y - target_mean_) / target_std_; }

 private:
  Inputs inputs_;
  Eigen::VectorXd targets_;
  double target_mean_ = 0.0;
  double target_std_ = 1.0;
  KernelConfig kernel_;
  double jitter_used_ = 0.0;
  Eigen::MatrixXd chol_;
  Eigen::VectorXd alpha_;
};

/// Covariance matrix between the rows of `a` and `b` (no noise, no jitter).
Eigen::MatrixXd kernel_matrix(const Inputs& a, const Inputs& b, const KernelConfig& k);

GpModel gp_fit(Inputs inputs, std::span<const double> targets, const KernelConfig& kernel);
std::vector<PosteriorStats> gp_predict(const GpModel& model, const Inputs& queries);

/// Column-vector convenience for 1D data.
Inputs column(std::span<const double> xs);

}  // namespace score::gp
