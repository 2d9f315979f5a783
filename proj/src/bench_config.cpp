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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "score/bench.hpp"
#include "score/error.hpp"

namespace score::bench {

namespace {

using json = nlohmann::json;

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': expected a finite number, got '" + v + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("'" + key + "': expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("'" + key + "': expected true/false, got '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  return out;
}

GridSpec parse_grid(const std::string& key, const std::string& v) {
  const auto parts = split(v, ',');
  if (parts.size() != 4) throw ConfigError("'" + key + "': expected lo,hi,count,scale");
  GridSpec g;
  g.lo = parse_double(key, parts[0]);
  g.hi = parse_double(key, parts[1]);
  g.count = parse_uint(key, parts[2]);
  if (parts[3] == "linear") {
    g.scale = GridScale::kLinear;
  } else if (parts[3] == "log") {
    g.scale = GridScale::kLog;
  } else {
    throw ConfigError("'" + key + "': scale must be linear or log");
  }
  return g;
}

std::string num(double d) {
  std::ostringstream os;
  os.precision(17);
  os << d;
  return os.str();
}

constexpr const char* kSdmNames[] = {"I_L", "I_o", "R_s", "R_sh", "a"};

}  // namespace

std::string method_name(Method m) { return m == Method::kScore ? "score" : "bo"; }
std::string problem_name(ProblemKind p) { return p == ProblemKind::kAckley ? "ackley" : "sdm"; }

std::size_t RunConfig::effective_n_init() const {
  if (n_init > 0) return n_init;
  const std::size_t d = problem == ProblemKind::kAckley ? dims : 5;
  return 2 * d;
}

void RunConfig::validate() const {
  if (dims < 1) throw ConfigError("dims must be >= 1");
  if (batch_size < 1) throw ConfigError("batch must be >= 1");
  const std::size_t ni = effective_n_init();
  if (ni < 1) throw ConfigError("n_init must be >= 1");
  if (max_evals < ni) {
    throw ConfigError("max_evals (" + std::to_string(max_evals) + ") must be >= n_init (" +
                      std::to_string(ni) + ")");
  }
  if (ackley_points < 2 || !(ackley_lo < ackley_hi)) {
    throw ConfigError("ackley grid needs >= 2 points and lo < hi");
  }
  if (candidate_pool < 1) throw ConfigError("candidate_pool must be >= 1");
  if (!(zeta >= 0.0) || !(bo_zeta >= 0.0) || !(zeta_decay > 0.0 && zeta_decay <= 1.0)) {
    throw ConfigError("zeta must be >= 0 and zeta_decay in (0, 1]");
  }
  if (!(lengthscale_steps > 0.0) || !(bo_lengthscale > 0.0) || !(signal_variance > 0.0) ||
      !(noise_variance >= 0.0) || !(bo_noise_variance >= 0.0) || !(jitter >= 1e-12) || !(temperature > 0.0)) {
    throw ConfigError("invalid surrogate settings");
  }
}

void RunConfig::set(const std::string& key, const std::string& v) {
  if (key == "method") {
    if (v == "score") method = Method::kScore;
    else if (v == "bo") method = Method::kBo;
    else throw ConfigError("method must be 'score' or 'bo', got '" + v + "'");
  } else if (key == "problem") {
    if (v == "ackley") problem = ProblemKind::kAckley;
    else if (v == "sdm") problem = ProblemKind::kSdm;
    else throw ConfigError("problem must be 'ackley' or 'sdm', got '" + v + "'");
  } else if (key == "dims") {
    dims = parse_uint(key, v);
  } else if (key == "ackley_points") {
    ackley_points = parse_uint(key, v);
  } else if (key == "ackley_lo") {
    ackley_lo = parse_double(key, v);
  } else if (key == "ackley_hi") {
    ackley_hi = parse_double(key, v);
  } else if (key == "n_init") {
    n_init = parse_uint(key, v);
  } else if (key == "batch" || key == "batch_size") {
    batch_size = parse_uint(key, v);
  } else if (key == "max_evals") {
    max_evals = parse_uint(key, v);
  } else if (key == "seed") {
    seed = parse_uint(key, v);
  } else if (key == "seeds") {
    seeds.clear();
    for (const auto& s : split(v, ',')) {
      if (!s.empty()) seeds.push_back(parse_uint(key, s));
    }
  } else if (key == "zeta") {
    zeta = parse_double(key, v);
  } else if (key == "bo_zeta") {
    bo_zeta = parse_double(key, v);
  } else if (key == "bo_noise_variance") {
    bo_noise_variance = parse_double(key, v);
  } else if (key == "zeta_decay") {
    zeta_decay = parse_double(key, v);
  } else if (key == "lengthscale_steps") {
    lengthscale_steps = parse_double(key, v);
  } else if (key == "bo_lengthscale") {
    bo_lengthscale = parse_double(key, v);
  } else if (key == "signal_variance") {
    signal_variance = parse_double(key, v);
  } else if (key == "noise_variance") {
    noise_variance = parse_double(key, v);
  } else if (key == "jitter") {
    jitter = parse_double(key, v);
  } else if (key == "temperature") {
    temperature = parse_double(key, v);
  } else if (key == "candidate_pool") {
    candidate_pool = parse_uint(key, v);
  } else if (key == "datasheet") {
    datasheet = v;
  } else if (key == "out" || key == "out_dir") {
    out_dir = v;
  } else if (key == "concurrent") {
    concurrent = parse_bool(key, v);
  } else if (key == "parallel_objective") {
    parallel_objective = parse_bool(key, v);
  } else if (key.starts_with("grid_")) {
    const std::string name = key.substr(5);
    if (std::find(std::begin(kSdmNames), std::end(kSdmNames), name) == std::end(kSdmNames)) {
      throw ConfigError("unknown SDM grid '" + name + "'");
    }
    const GridSpec g = parse_grid(key, v);
    std::erase_if(sdm_grids, [&](const auto& e) { return e.first == name; });
    sdm_grids.emplace_back(name, g);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

std::string RunConfig::to_json() const {
  json j;
  j["method"] = method_name(method);
  j["problem"] = problem_name(problem);
  j["dims"] = dims;
  j["ackley_points"] = ackley_points;
  j["ackley_lo"] = ackley_lo;
  j["ackley_hi"] = ackley_hi;
  j["n_init"] = n_init;
  j["batch_size"] = batch_size;
  j["max_evals"] = max_evals;
  j["seed"] = seed;
  j["seeds"] = seeds;
  j["zeta"] = zeta;
  j["zeta_decay"] = zeta_decay;
  j["lengthscale_steps"] = lengthscale_steps;
  j["bo_lengthscale"] = bo_lengthscale;
  j["signal_variance"] = signal_variance;
  j["noise_variance"] = noise_variance;
  j["bo_zeta"] = bo_zeta;
  j["bo_noise_variance"] = bo_noise_variance;
  j["jitter"] = jitter;
  j["temperature"] = temperature;
  j["candidate_pool"] = candidate_pool;
  j["datasheet"] = datasheet;
  j["out_dir"] = out_dir;
  j["concurrent"] = concurrent;
  j["parallel_objective"] = parallel_objective;
  for (const auto& [name, g] : sdm_grids) {
    j["grid_" + name] = num(g.lo) + "," + num(g.hi) + "," + std::to_string(g.count) + "," +
                        (g.scale == GridScale::kLog ? "log" : "linear");
  }
  return j.dump(2);
}

RunConfig config_from_json(const std::string& text, RunConfig base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config JSON must be a flat object");
  for (const auto& [key, value] : j.items()) {
    std::string v;
    if (value.is_string()) {
      v = value.get<std::string>();
    } else if (value.is_boolean()) {
      v = value.get<bool>() ? "true" : "false";
    } else if (value.is_number_unsigned() || value.is_number_integer()) {
      if (value.is_number_integer() && value.get<std::int64_t>() < 0) {
        v = std::to_string(value.get<std::int64_t>());
      } else {
        v = std::to_string(value.get<std::uint64_t>());
      }
    } else if (value.is_number_float()) {
      v = num(value.get<double>());
    } else if (value.is_array()) {
      for (const auto& e : value) {
        if (!e.is_number_unsigned() && !e.is_number_integer()) {
          throw ConfigError("'" + key + "': arrays may only hold integers");
        }
        if (!v.empty()) v += ',';
        v += std::to_string(e.get<std::int64_t>());
      }
    } else {
      throw ConfigError("'" + key + "': nested values are not allowed");
    }
    base.set(key, v);
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str(), std::move(base));
}

}  // namespace score::bench
