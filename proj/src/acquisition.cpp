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

#include "score/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "score/error.hpp"

namespace score {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double expected_improvement(const gp::PosteriorStats& stats, const AcquisitionParams& params) {
  const double improvement = params.best_value - stats.mean - params.zeta;
  if (stats.std < 1e-12) return std::max(improvement, 0.0);
  const double z = improvement / stats.std;
  const double ei = improvement * normal_cdf(z) + stats.std * normal_pdf(z);
  return std::max(ei, 0.0);
}

std::vector<double> score_grid(std::span<const gp::PosteriorStats> posteriors,
                               const AcquisitionParams& params) {
  std::vector<double> out(posteriors.size());
  std::transform(posteriors.begin(), posteriors.end(), out.begin(),
                 [&](const gp::PosteriorStats& s) { return expected_improvement(s, params); });
  return out;
}

double ZetaSchedule::at(std::size_t iteration) const {
  return initial * std::pow(decay, static_cast<double>(iteration));
}

void ZetaSchedule::validate() const {
  if (!std::isfinite(initial) || initial < 0.0 || !std::isfinite(decay) || decay <= 0.0 ||
      decay > 1.0) {
    throw ConfigError("zeta schedule needs initial >= 0 and decay in (0, 1]");
  }
}

}  // namespace score
