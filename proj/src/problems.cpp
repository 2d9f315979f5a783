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

#include "score/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "score/error.hpp"

namespace score::problems {

double ackley(std::span<const double> point, const AckleySpec& spec) {
  const double n = static_cast<double>(point.size());
  // Summing in sorted order makes the value exactly permutation invariant.
  std::vector<double> xs(point.begin(), point.end());
  std::sort(xs.begin(), xs.end());
  double sq = 0.0;
  double cs = 0.0;
  for (double x : xs) {
    sq += x * x;
    cs += std::cos(spec.c * x);
  }
  return -spec.a * std::exp(-spec.b * std::sqrt(sq / n)) - std::exp(cs / n) + spec.a +
         std::numbers::e;
}

SearchSpace ackley_space(const AckleySpec& spec, std::size_t points_per_dim) {
  if (spec.dims < 1) throw ConfigError("ackley: dims must be >= 1");
  std::vector<ParameterGrid> grids;
  grids.reserve(spec.dims);
  for (std::size_t d = 0; d < spec.dims; ++d) {
    grids.push_back(make_grid(spec.lo, spec.hi, points_per_dim, GridScale::kLinear,
                              "x" + std::to_string(d)));
  }
  return SearchSpace(std::move(grids));
}

void SdmParams::validate() const {
  const bool ok = std::isfinite(light_current) && light_current >= 0.0 &&
                  std::isfinite(saturation_current) && saturation_current > 0.0 &&
                  std::isfinite(series_resistance) && series_resistance >= 0.0 &&
                  std::isfinite(shunt_resistance) && shunt_resistance > 0.0 &&
                  std::isfinite(ideality) && ideality > 0.0;
  if (!ok) throw ConfigError("invalid single-diode parameters");
}

void IvTargets::validate() const {
  const bool finite =
      std::isfinite(isc) && std::isfinite(vmp) && std::isfinite(imp) && std::isfinite(voc);
  if (!finite || isc <= 0.0 || vmp <= 0.0 || imp <= 0.0 || voc <= 0.0 || !(vmp < voc) ||
      !(imp < isc)) {
    throw ConfigError("invalid IV targets: need positive values, vmp < voc, imp < isc");
  }
}

namespace {

// Strictly decreasing in current.
double diode_balance(const SdmParams& p, double v, double current) {
  const double vd = v + current * p.series_resistance;
  return p.light_current - p.saturation_current * std::expm1(vd / p.ideality) -
         vd / p.shunt_resistance - current;
}

}  // namespace

double sdm_current(const SdmParams& p, double v) {
  if (!std::isfinite(v)) throw SolverError("sdm_current: non-finite voltage");
  // Without series resistance the equation is explicit.
  if (p.series_resistance == 0.0) return diode_balance(p, v, 0.0);
  double lo = -p.light_current - std::abs(v) / p.shunt_resistance - 1.0;
  double hi = p.light_current + 1.0;
  double glo = diode_balance(p, v, lo);
  double ghi = diode_balance(p, v, hi);
  for (int expansions = 0; !(glo >= 0.0 && ghi <= 0.0); ++expansions) {
    if (expansions == 10) {
      std::ostringstream os;
      os << "sdm_current: no sign change bracketed at v=" << v << " (I in [" << lo << ", "
         << hi << "], g=" << glo << ", " << ghi << ")";
      throw SolverError(os.str());
    }
    const double half = 0.5 * (hi - lo);
    lo -= half;
    hi += half;
    glo = diode_balance(p, v, lo);
    ghi = diode_balance(p, v, hi);
  }
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = diode_balance(p, v, mid);
    if (g == 0.0) return mid;
    (g > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double sdm_residual(const SdmParams& params, const IvTargets& t) {
  try {
    const double e_sc = (sdm_current(params, 0.0) - t.isc) / t.isc;
    const double e_mp = (sdm_current(params, t.vmp) - t.imp) / t.isc;
    const double e_oc = sdm_current(params, t.voc) / t.isc;
    const double r = std::sqrt((e_sc * e_sc + e_mp * e_mp + e_oc * e_oc) / 3.0);
    return std::isfinite(r) ? r : kResidualSentinel;
  } catch (const SolverError&) {
    return kResidualSentinel;
  }
}

IvTargets make_synthetic_datasheet(const SdmParams& gt) {
  gt.validate();
  IvTargets t;
  t.isc = sdm_current(gt, 0.0);

  double lo = 0.0;
  double hi = 2.0 * gt.ideality * std::log(gt.light_current / gt.saturation_current + 1.0);
  // The balance is decreasing in I, so the sign of I(v) is the sign of the
  // balance at I = 0. Bisecting that avoids solving for huge reverse currents.
  if (!(diode_balance(gt, hi, 0.0) < 0.0)) {
    throw SolverError("make_synthetic_datasheet: open-circuit voltage not bracketed");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (diode_balance(gt, mid, 0.0) > 0.0 ? lo : hi) = mid;
  }
  t.voc = 0.5 * (lo + hi);

  constexpr int kScan = 2000;
  const double dv = t.voc / (kScan - 1);
  int best = 0;
  double best_power = -1.0;
  for (int k = 0; k < kScan; ++k) {
    const double v = dv * k;
    const double power = v * sdm_current(gt, v);
    if (power > best_power) {
      best_power = power;
      best = k;
    }
  }
  // Golden-section refinement over the neighbouring scan cells.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = dv * std::max(best - 1, 0);
  double b = dv * std::min(best + 1, kScan - 1);
  auto power = [&](double v) { return v * sdm_current(gt, v); };
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = power(c);
  double fd = power(d);
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = power(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = power(d);
    }
  }
  t.vmp = 0.5 * (a + b);
  t.imp = sdm_current(gt, t.vmp);
  t.validate();
  return t;
}

std::string format_datasheet(const Datasheet& sheet) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# Synthetic single-diode datasheet points\n";
  os << "isc=" << sheet.targets.isc << '\n';
  os << "vmp=" << sheet.targets.vmp << '\n';
  os << "imp=" << sheet.targets.imp << '\n';
  os << "voc=" << sheet.targets.voc << '\n';
  if (sheet.ground_truth) {
    const auto& g = *sheet.ground_truth;
    os << "# generating parameters\n";
    os << "I_L=" << g.light_current << '\n';
    os << "I_o=" << g.saturation_current << '\n';
    os << "R_s=" << g.series_resistance << '\n';
    os << "R_sh=" << g.shunt_resistance << '\n';
    os << "a=" << g.ideality << '\n';
  }
  return os.str();
}

Datasheet parse_datasheet(const std::string& text) {
  std::map<std::string, double> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("datasheet line " + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      std::size_t used = 0;
      kv[key] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ConfigError("datasheet line " + std::to_string(lineno) + ": bad number for '" +
                        key + "'");
    }
  }
  auto need = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError(std::string("datasheet missing '") + key + "'");
    return it->second;
  };
  Datasheet sheet;
  sheet.targets = {need("isc"), need("vmp"), need("imp"), need("voc")};
  sheet.targets.validate();
  if (kv.contains("I_L")) {
    sheet.ground_truth =
        SdmParams{need("I_L"), need("I_o"), need("R_s"), need("R_sh"), need("a")};
  }
  return sheet;
}

void write_datasheet(const std::string& path, const Datasheet& sheet) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write datasheet '" + path + "'");
  out << format_datasheet(sheet);
  if (!out) throw IoError("error writing datasheet '" + path + "'");
}

Datasheet read_datasheet(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read datasheet '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_datasheet(ss.str());
}

SdmParams sdm_params_from_point(std::span<const double> point) {
  if (point.size() != 5) throw ConfigError("SDM point must have 5 parameters");
  return {point[0], point[1], point[2], point[3], point[4]};
}

SearchSpace sdm_space(const IvTargets& t) {
  std::vector<ParameterGrid> grids;
  grids.push_back(make_grid(0.8 * t.isc, 1.2 * t.isc, 41, GridScale::kLinear, "I_L"));
  grids.push_back(make_grid(1e-12, 1e-6, 61, GridScale::kLog, "I_o"));
  grids.push_back(make_grid(0.0, 1.0, 41, GridScale::kLinear, "R_s"));
  grids.push_back(make_grid(10.0, 1e4, 41, GridScale::kLog, "R_sh"));
  grids.push_back(make_grid(1.0, 4.0, 31, GridScale::kLinear, "a"));
  return SearchSpace(std::move(grids));
}

Problem make_ackley_problem(const AckleySpec& spec, std::size_t points_per_dim) {
  Problem p;
  p.name = "ackley";
  p.space = std::make_shared<const SearchSpace>(ackley_space(spec, points_per_dim));
  p.objective = [spec](std::span<const double> x) { return ackley(x, spec); };
  return p;
}

Problem make_sdm_problem(const IvTargets& targets) {
  return make_sdm_problem(targets, sdm_space(targets));
}

Problem make_sdm_problem(const IvTargets& targets, SearchSpace space) {
  targets.validate();
  if (space.dims() != 5) throw ConfigError("SDM search space must have 5 dimensions");
  Problem p;
  p.name = "sdm";
  p.space = std::make_shared<const SearchSpace>(std::move(space));
  p.objective = [targets](std::span<const double> x) {
    return sdm_residual(sdm_params_from_point(x), targets);
  };
  return p;
}

}  // namespace score::problems
