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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "score/bench.hpp"
#include "score/error.hpp"

using namespace score;
using namespace score::bench;
namespace fs = std::filesystem;

namespace {

RunConfig small(Method m = Method::kScore) {
  RunConfig c;
  c.method = m;
  c.dims = 3;
  c.max_evals = 30;
  c.seed = 4;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops the two timing columns from every data line.
std::string strip_timing(const std::string& csv) {
  std::istringstream is(csv);
  std::string line, out;
  while (std::getline(is, line)) {
    for (int k = 0; k < 2; ++k) line.erase(line.rfind(','));
    out += line + "\n";
  }
  return out;
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("score_test_bench_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config keys, aliases and validation") {
  RunConfig c;
  c.set("method", "bo");
  c.set("problem", "sdm");
  c.set("batch", "4");
  c.set("out", "/tmp/x");
  c.set("grid_R_s", "0,2,21,linear");
  CHECK(c.method == Method::kBo);
  CHECK(c.problem == ProblemKind::kSdm);
  CHECK(c.batch_size == 4);
  CHECK(c.out_dir == "/tmp/x");
  REQUIRE(c.sdm_grids.size() == 1);
  CHECK(c.sdm_grids[0].second.count == 21);
  CHECK_THROWS_AS(c.set("nonsense", "1"), ConfigError);
  CHECK_THROWS_AS(c.set("dims", "ten"), ConfigError);
  CHECK_THROWS_AS(c.set("method", "sgd"), ConfigError);

  RunConfig d;
  d.dims = 5;
  CHECK(d.effective_n_init() == 10);
  d.max_evals = 9;
  CHECK_THROWS_AS(d.validate(), ConfigError);
  d.max_evals = 10;
  CHECK_NOTHROW(d.validate());
  d.batch_size = 0;
  CHECK_THROWS_AS(d.validate(), ConfigError);
}

TEST_CASE("json config round trip and unknown keys") {
  RunConfig c = small();
  c.seeds = {1, 2, 3};
  c.zeta = 0.25;
  const RunConfig back = config_from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(back.zeta == 0.25);
  CHECK_THROWS_AS(config_from_json(R"({"dims": 3, "bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
  const RunConfig part = config_from_json(R"({"dims": 7, "method": "bo"})");
  CHECK(part.dims == 7);
  CHECK(part.method == Method::kBo);
  CHECK(part.max_evals == RunConfig{}.max_evals);
}

TEST_CASE("10D protocol run has 280 post-init iterations") {
  RunConfig c;
  c.dims = 10;
  c.n_init = 20;
  c.max_evals = 300;
  c.seed = 7;
  const auto r = run_experiment(c);
  CHECK(r.trace.rows.size() == 281);
  CHECK(r.trace.rows.back().iteration == 280);
  CHECK(r.trace.rows.back().evals == 300);
  CHECK(r.trace.rows.front().evals == 20);
  for (std::size_t i = 1; i < r.trace.rows.size(); ++i) {
    CHECK(r.trace.rows[i].evals > r.trace.rows[i - 1].evals);
    CHECK(r.trace.rows[i].best_value <= r.trace.rows[i - 1].best_value);
    CHECK(r.trace.rows[i].cum_time_ms >= r.trace.rows[i - 1].cum_time_ms);
  }
}

TEST_CASE("budget equal to the initial design yields only the init row") {
  RunConfig c = small();
  c.n_init = 6;
  c.max_evals = 6;
  CHECK(run_experiment(c).trace.rows.size() == 1);
  c.method = Method::kBo;
  CHECK(run_experiment(c).trace.rows.size() == 1);
}

TEST_CASE("batch of ten over 500 post-init evaluations is 50 iterations") {
  RunConfig c;
  c.dims = 4;
  c.n_init = 20;
  c.batch_size = 10;
  c.max_evals = 520;
  const auto r = run_experiment(c);
  CHECK(r.trace.rows.back().iteration == 50);
  CHECK(r.gp_fits == 50 * 4);
}

TEST_CASE("same config twice gives identical CSV outside timing columns") {
  for (Method m : {Method::kScore, Method::kBo}) {
    const auto a = format_trace_csv({run_experiment(small(m)).trace});
    const auto b = format_trace_csv({run_experiment(small(m)).trace});
    CHECK(strip_timing(a) == strip_timing(b));
  }
}

TEST_CASE("CSV round trip reproduces traces") {
  RunConfig c = small();
  c.seeds = {1, 2};
  const auto results = run_sweep(c);
  std::vector<ConvergenceTrace> traces;
  for (const auto& r : results) traces.push_back(r.trace);
  const auto text = format_trace_csv(traces);
  CHECK(text.substr(0, text.find('\n')) == kCsvHeader);
  const auto back = parse_trace_csv(text);
  REQUIRE(back.size() == traces.size());
  for (std::size_t k = 0; k < traces.size(); ++k) {
    CHECK(back[k].method == traces[k].method);
    CHECK(back[k].seed == traces[k].seed);
    REQUIRE(back[k].rows.size() == traces[k].rows.size());
    for (std::size_t i = 0; i < traces[k].rows.size(); ++i) {
      const auto& x = back[k].rows[i];
      const auto& y = traces[k].rows[i];
      CHECK(x.iteration == y.iteration);
      CHECK(x.evals == y.evals);
      CHECK(x.best_value == y.best_value);
      CHECK(x.iter_time_ms == y.iter_time_ms);
      CHECK(x.cum_time_ms == y.cum_time_ms);
    }
  }
  CHECK_THROWS(parse_trace_csv("a,b\n1,2\n"));
}

TEST_CASE("median trace") {
  ConvergenceTrace a{"score", "ackley", 1, {}}, b = a, c = a;
  for (int i = 0; i < 3; ++i) {
    a.rows.push_back({.iteration = std::size_t(i), .evals = std::size_t(i + 1), .best_value = 3.0 - i});
    b.rows.push_back({.iteration = std::size_t(i), .evals = std::size_t(i + 1), .best_value = 1.0});
    c.rows.push_back({.iteration = std::size_t(i), .evals = std::size_t(i + 1), .best_value = 5.0});
  }
  const auto m = median_trace({a, b, c});
  CHECK(m.method == "score-median");
  REQUIRE(m.rows.size() == 3);
  CHECK(m.rows[0].best_value == 3.0);
  CHECK(m.rows[2].best_value == 1.0);
}

TEST_CASE("emit_report writes CSV and labelled SVGs") {
  const auto dir = scratch("report");
  const auto r = run_experiment(small());
  const auto conv = emit_report({r.trace}, ReportKind::kConvergence, dir.string(), "one");
  CHECK(fs::exists(conv.csv));
  CHECK(fs::exists(conv.svg));
  CHECK(slurp(conv.svg).find("kind=convergence;x=evals;y=best_value") != std::string::npos);
  const auto timing = emit_report({r.trace}, ReportKind::kTiming, dir.string(), "one");
  const auto svg = slurp(timing.svg);
  CHECK(svg.find("kind=timing") != std::string::npos);
  CHECK(svg.find(";y=cum_time_ms") != std::string::npos);
  CHECK(svg.find("id=\"y-label\"") != std::string::npos);

  const auto rb = run_experiment(small(Method::kBo));
  const auto both = render_svg({r.trace, rb.trace}, ReportKind::kConvergence);
  CHECK(both.find("legend") != std::string::npos);
  CHECK(both.find(">bo") != std::string::npos);

  CHECK_THROWS_AS(emit_report({r.trace}, ReportKind::kConvergence, "/proc/score-nope", "x"),
                  IoError);
  fs::remove_all(dir);
}

TEST_CASE("sdm problem runs with both methods") {
  RunConfig c;
  c.problem = ProblemKind::kSdm;
  c.max_evals = 25;
  for (Method m : {Method::kScore, Method::kBo}) {
    c.method = m;
    const auto r = run_experiment(c);
    CHECK(r.trace.rows.back().evals == 25);
    CHECK(r.best_point.size() == 5);
  }
}
