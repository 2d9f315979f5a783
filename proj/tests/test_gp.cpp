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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "score/error.hpp"
#include "score/gp.hpp"

using namespace score;
using namespace score::gp;

namespace {

KernelConfig kernel(double ls, double noise = 0.0, double signal = 1.0) {
  KernelConfig k;
  k.lengthscale = ls;
  k.noise_variance = noise;
  k.signal_variance = signal;
  return k;
}

}  // namespace

TEST_CASE("single pair interpolates") {
  const std::vector<double> x{0.0}, y{1.0};
  const auto m = gp_fit(column(x), y, kernel(1.0));
  const auto p = m.predict_one(std::vector<double>{0.0});
  CHECK(p.mean == doctest::Approx(1.0).epsilon(1e-12));
  // The 1e-12 jitter floor alone leaves std = 1e-6 exactly; allow roundoff.
  CHECK(p.std <= 1e-6 * (1 + 1e-3));
}

TEST_CASE("prior recovery far from data") {
  const std::vector<double> x{0.0, 1.0, 2.0}, y{3.0, -1.0, 2.0};
  const auto m = gp_fit(column(x), y, kernel(0.5, 1e-6, 2.0));
  const auto p = m.predict_one(std::vector<double>{1e3});
  CHECK(std::abs(p.mean - m.target_mean()) < 1e-3);
  CHECK(std::abs(p.std - m.target_std() * std::sqrt(2.0)) < 1e-3);
}

TEST_CASE("three pairs match the dense-inversion oracle") {
  const std::vector<double> x{-1.0, 0.25, 2.0}, y{0.3, -1.2, 4.0};
  const std::vector<double> q{-2.0, -1.0, 0.0, 0.5, 1.7, 3.0};
  const auto m = gp_fit(column(x), y, kernel(1.3, 1e-4, 1.0));
  const auto got = m.predict(column(q));
  const auto want = oracle::dense_gp_1d(x, y, q, 1.3, 1.0, 1e-4 + m.jitter_used());
  for (std::size_t i = 0; i < q.size(); ++i) {
    CHECK(got[i].mean == doctest::Approx(want[i].mean).epsilon(1e-8));
    CHECK(std::abs(got[i].std - want[i].std) < 1e-8);
  }
}

TEST_CASE("query at a training input returns its target") {
  const std::vector<double> x{0.0, 1.0, 3.0}, y{2.0, 5.0, -1.0};
  const auto m = gp_fit(column(x), y, kernel(1.0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(m.predict_one(std::vector<double>{x[i]}).mean - y[i]) < 1e-6);
  }
}

TEST_CASE("batch prediction equals single-point loop") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 10.0);
  std::vector<double> x, y, grid;
  for (int i = 0; i < 12; ++i) {
    x.push_back(u(rng));
    y.push_back(u(rng));
  }
  for (int i = 0; i < 61; ++i) grid.push_back(-5.0 + 0.25 * i);
  const auto m = gp_fit(column(x), y, kernel(0.75, 1e-6));
  const auto batch = m.predict(column(grid));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto one = m.predict_one(std::vector<double>{grid[i]});
    CHECK(std::abs(batch[i].mean - one.mean) <= 1e-12);
    CHECK(std::abs(batch[i].std - one.std) <= 1e-12);
  }
}

TEST_CASE("cholesky factor reconstructs the kernel matrix") {
  const std::vector<double> x{0.0, 0.5, 1.0, 4.0};
  const std::vector<double> y{1.0, 2.0, 0.0, 1.0};
  const auto k = kernel(1.0, 1e-3);
  const auto m = gp_fit(column(x), y, k);
  Eigen::MatrixXd K = kernel_matrix(column(x), column(x), k);
  K.diagonal().array() += k.noise_variance + m.jitter_used();
  const Eigen::MatrixXd r = m.chol() * m.chol().transpose();
  CHECK((r - K).norm() / K.norm() < 1e-8);
}

TEST_CASE("duplicated inputs with zero noise still fit") {
  const std::vector<double> x{1.0, 1.0, 1.0}, y{2.0, 2.0, 2.0};
  KernelConfig k = kernel(1.0, 0.0);
  const auto m = gp_fit(column(x), y, k);
  CHECK(m.jitter_used() >= k.jitter);
  CHECK(m.target_std() == 1.0);
  CHECK(m.predict_one(std::vector<double>{1.0}).mean == doctest::Approx(2.0));
}

TEST_CASE("kernel config validation") {
  CHECK_THROWS_AS(gp_fit(column(std::vector<double>{0.0}), std::vector<double>{1.0},
                         kernel(0.0)),
                  ConfigError);
  KernelConfig k;
  k.jitter = 1e-13;
  CHECK_THROWS_AS(k.validate(), ConfigError);
}

TEST_CASE("property: 100 random datasets match the oracle, variance bounded, duplicates help") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> n_of(1, 20);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = n_of(rng);
    std::vector<double> x, y, q;
    for (int i = 0; i < n; ++i) {
      x.push_back(0.37 * i + 0.05 * u(rng));
      y.push_back(u(rng));
    }
    for (int i = 0; i < 15; ++i) q.push_back(u(rng) * 3.0);
    const auto k = kernel(0.6, 1e-4, 1.0);
    const auto m = gp_fit(column(x), y, k);
    const auto got = m.predict(column(q));
    const auto want = oracle::dense_gp_1d(x, y, q, 0.6, 1.0, 1e-4 + m.jitter_used());
    const double sd2 = m.target_std() * m.target_std();
    for (std::size_t i = 0; i < q.size(); ++i) {
      CHECK(std::abs(got[i].mean - want[i].mean) < 1e-8);
      CHECK(std::abs(got[i].std - want[i].std) < 1e-8);
      CHECK(got[i].std * got[i].std / sd2 <= k.signal_variance + k.noise_variance + 10 * k.jitter);
    }

    // A duplicated observation with the same target cannot widen the posterior.
    auto x2 = x;
    auto y2 = y;
    x2.push_back(x[0]);
    y2.push_back(y[0]);
    const auto m2 = gp_fit(column(x2), y2, k);
    const auto got2 = m2.predict(column(q));
    for (std::size_t i = 0; i < q.size(); ++i) {
      // Compare on the standardized scale: the duplicate shifts the constants.
      CHECK(got2[i].std / m2.target_std() <= got[i].std / m.target_std() + 1e-8);
    }
  }
}

TEST_CASE("61-point 1D fit is fast") {
  std::vector<double> x, y;
  for (int i = 0; i < 61; ++i) {
    x.push_back(-5.0 + 0.25 * i);
    y.push_back(std::sin(x.back()));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = gp_fit(column(x), y, kernel(0.75, 1e-6));
  (void)m.predict(column(x));
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0);
  CHECK(ms.count() < 10.0);
}
