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

#include <span>
#include <vector>

#include "score/gp.hpp"

namespace score {

/// Incumbent value and exploration offset for expected improvement.
/// Both are expressed on the same scale as the posterior statistics.
struct AcquisitionParams {
  double best_value = 0.0;
  double zeta = 0.01;
};

/// Standard normal CDF.
double normal_cdf(double z);
/// Standard normal density.
double normal_pdf(double z);

/// Expected improvement for minimization:
///   (f* - mu - zeta) * Phi(z) + sigma * phi(z),  z = (f* - mu - zeta) / sigma.
/// Returns the deterministic limit max(f* - mu - zeta, 0) when sigma < 1e-12.
double expected_improvement(const gp::PosteriorStats& stats, const AcquisitionParams& params);

std::vector<double> score_grid(std::span<const gp::PosteriorStats> posteriors,
                               const AcquisitionParams& params);

/// Exploration offset schedule zeta_t = zeta0 * decay^t.
struct ZetaSchedule {
  double initial = 0.01;
  double decay = 1.0;

  double at(std::size_t iteration) const;
  void validate() const;
};

}  // namespace score
