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
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "score/param_space.hpp"

namespace score::problems {

// ---------------------------------------------------------------------------
// Ackley

struct AckleySpec {
  std::size_t dims = 10;
  double a = 20.0;
  double b = 0.2;
  double c = 6.283185307179586;
  double lo = -5.0;
  double hi = 10.0;
};

/// -a exp(-b sqrt(mean x^2)) - exp(mean cos(c x)) + a + e
double ackley(std::span<const double> point, const AckleySpec& spec = {});

/// D identical grids over [spec.lo, spec.hi]. 61 points gives step 0.25 on the
/// default domain, which puts the minimizer 0.0 exactly on the mesh.
SearchSpace ackley_space(const AckleySpec& spec, std::size_t points_per_dim = 61);

// ---------------------------------------------------------------------------
// Single-diode model

struct SdmParams {
  double light_current = 9.0;         // I_L [A]
  double saturation_current = 3e-10;  // I_o [A]
  double series_resistance = 0.35;    // R_s [ohm]
  double shunt_resistance = 800.0;    // R_sh [ohm]
  double ideality = 1.9;              // a [V], modified ideality factor

  void validate() const;
};

/// Datasheet points: short circuit, maximum power point, open circuit.
struct IvTargets {
  double isc = 0.0;
  double vmp = 0.0;
  double imp = 0.0;
  double voc = 0.0;

  void validate() const;
};

/// Terminal current at voltage `v`, i.e. the root of
///   I = I_L - I_o [exp((v + I R_s) / a) - 1] - (v + I R_s) / R_sh
/// found by bisection. Throws SolverError if no sign change can be bracketed.
double sdm_current(const SdmParams& params, double v);

/// RMS of the three relative residuals (normalized by isc) at the datasheet
/// points. Returns kResidualSentinel when an inner solve fails.
double sdm_residual(const SdmParams& params, const IvTargets& targets);

/// Largest finite double; marks a failed residual evaluation.
inline constexpr double kResidualSentinel = 1.7976931348623157e308;

/// Forward-simulates the datasheet points of `ground_truth`.
IvTargets make_synthetic_datasheet(const SdmParams& ground_truth);

struct Datasheet {
  IvTargets targets;
  std::optional<SdmParams> ground_truth;
};

/// Plain-text key=value fixture (isc, vmp, imp, voc, plus I_L, I_o, R_s, R_sh,
/// a for provenance). '#' starts a comment.
void write_datasheet(const std::string& path, const Datasheet& sheet);
Datasheet read_datasheet(const std::string& path);
std::string format_datasheet(const Datasheet& sheet);
Datasheet parse_datasheet(const std::string& text);

/// Parameter order of the SDM search space.
SdmParams sdm_params_from_point(std::span<const double> point);

/// Default fitting grids, centered on the target short-circuit current.
SearchSpace sdm_space(const IvTargets& targets);

// ---------------------------------------------------------------------------

/// An objective over a discrete search space. `pure` objectives may be called
/// concurrently.
struct Problem {
  std::string name;
  std::shared_ptr<const SearchSpace> space;
  std::function<double(std::span<const double>)> objective;
  bool pure = true;
};

Problem make_ackley_problem(const AckleySpec& spec, std::size_t points_per_dim = 61);
Problem make_sdm_problem(const IvTargets& targets);
Problem make_sdm_problem(const IvTargets& targets, SearchSpace space);

}  // namespace score::problems
