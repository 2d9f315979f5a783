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

// score-bench: run SCORE / baseline BO experiments and render reports.
//
//   score-bench run    [--config PATH] [--method score|bo] [--problem ackley|sdm] ...
//   score-bench sweep  --seeds 1,2,3 ...
//   score-bench report --kind convergence|timing --out DIR a.csv b.csv
//   score-bench datasheet --out FILE
//
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "score/score.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int exit_code(score_status s) {
  switch (s) {
    case SCORE_OK: return 0;
    case SCORE_ERR_CONFIG:
    case SCORE_ERR_ARGUMENT: return kExitConfig;
    default: return kExitRuntime;
  }
}

int report_failure(score_status s, const char* what) {
  std::cerr << "score-bench: " << what << ": " << score_last_error() << '\n';
  return exit_code(s);
}

struct ConfigHandle {
  score_config* ptr = nullptr;
  ~ConfigHandle() { score_config_destroy(ptr); }
};

struct ResultHandle {
  score_result* ptr = nullptr;
  ~ResultHandle() { score_result_destroy(ptr); }
};

struct RunFlags {
  std::string config_path;
  std::optional<std::string> method, problem, dims, seed, seeds, max_evals, batch, out, n_init;
  std::vector<std::string> sets;
  std::string stem;
  bool concurrent = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_path, "flat JSON configuration file");
  cmd->add_option("--method", f.method, "score | bo");
  cmd->add_option("--problem", f.problem, "ackley | sdm");
  cmd->add_option("--dims", f.dims, "Ackley dimensions");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--seeds", f.seeds, "comma-separated seed list (sweep)");
  cmd->add_option("--max-evals", f.max_evals, "objective evaluation budget");
  cmd->add_option("--batch", f.batch, "candidates per iteration");
  cmd->add_option("--n-init", f.n_init, "initial random points (default 2*D)");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--set", f.sets, "extra key=value configuration override")->take_all();
  cmd->add_option("--stem", f.stem, "output file stem (default <method>_<problem>)");
  cmd->add_flag("--concurrent", f.concurrent, "run sweep seeds concurrently");
}

score_status build_config(const RunFlags& f, ConfigHandle& cfg) {
  if (auto s = score_config_create(&cfg.ptr); s != SCORE_OK) return s;
  if (!f.config_path.empty()) {
    if (auto s = score_config_load(cfg.ptr, f.config_path.c_str()); s != SCORE_OK) return s;
  }
  const std::pair<const char*, const std::optional<std::string>*> flags[] = {
      {"method", &f.method},       {"problem", &f.problem}, {"dims", &f.dims},
      {"seed", &f.seed},           {"seeds", &f.seeds},     {"max_evals", &f.max_evals},
      {"batch_size", &f.batch},    {"out_dir", &f.out},     {"n_init", &f.n_init}};
  for (const auto& [key, value] : flags) {
    if (!*value) continue;
    if (auto s = score_config_set(cfg.ptr, key, (*value)->c_str()); s != SCORE_OK) return s;
  }
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "score-bench: --set expects key=value, got '" << kv << "'\n";
      return SCORE_ERR_CONFIG;
    }
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    if (auto s = score_config_set(cfg.ptr, key.c_str(), value.c_str()); s != SCORE_OK) return s;
  }
  if (f.concurrent) {
    if (auto s = score_config_set(cfg.ptr, "concurrent", "true"); s != SCORE_OK) return s;
  }
  return score_config_validate(cfg.ptr);
}

std::string config_value(const ConfigHandle& cfg, const std::string& key) {
  size_t needed = 0;
  score_config_to_json(cfg.ptr, nullptr, 0, &needed);
  std::string json(needed, '\0');
  score_config_to_json(cfg.ptr, json.data(), json.size(), &needed);
  // Flat document written by the library: "key": value
  const std::string pat = "\"" + key + "\": ";
  auto p = json.find(pat);
  if (p == std::string::npos) return {};
  p += pat.size();
  auto e = json.find_first_of(",\n", p);
  std::string v = json.substr(p, e - p);
  if (v.size() >= 2 && v.front() == '"') v = v.substr(1, v.size() - 2);
  return v;
}

int execute(const RunFlags& f, bool sweep) {
  ConfigHandle cfg;
  if (auto s = build_config(f, cfg); s != SCORE_OK) return report_failure(s, "configuration");
  ResultHandle result;
  const score_status s = sweep ? score_sweep(cfg.ptr, &result.ptr) : score_run(cfg.ptr, &result.ptr);
  if (s != SCORE_OK) return report_failure(s, sweep ? "sweep" : "run");

  const std::string out = config_value(cfg, "out_dir");
  const std::string stem = f.stem.empty()
                               ? config_value(cfg, "method") + "_" + config_value(cfg, "problem")
                               : f.stem;
  if (auto w = score_result_write(result.ptr, out.c_str(), stem.c_str(), sweep ? 1 : 0);
      w != SCORE_OK) {
    return report_failure(w, "writing outputs");
  }
  for (size_t i = 0; i < score_result_count(result.ptr); ++i) {
    size_t needed = 0;
    score_result_summary(result.ptr, i, nullptr, 0, &needed);
    std::string line(needed, '\0');
    score_result_summary(result.ptr, i, line.data(), line.size(), &needed);
    line.resize(needed - 1);
    std::cout << line << '\n';
  }
  std::cout << "wrote " << out << "/" << stem << ".csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SCORE dimension-decomposed Bayesian optimization benchmarks"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "run one experiment");
  add_run_flags(run, run_flags);

  RunFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "run one experiment per seed");
  add_run_flags(sweep, sweep_flags);

  std::vector<std::string> csvs;
  std::string kind = "convergence";
  std::string report_out = "out";
  std::string report_stem = "report";
  auto* report = app.add_subcommand("report", "re-render plots from trace CSVs");
  report->add_option("csv", csvs, "trace CSV files")->required();
  report->add_option("--kind", kind, "convergence | timing")
      ->check(CLI::IsMember({"convergence", "timing"}));
  report->add_option("--out", report_out, "output directory");
  report->add_option("--stem", report_stem, "output file stem");

  std::string sheet_path = "datasheet.txt";
  auto* sheet = app.add_subcommand("datasheet", "write the synthetic SDM datasheet fixture");
  sheet->add_option("--out", sheet_path, "fixture path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (run->parsed()) return execute(run_flags, false);
  if (sweep->parsed()) return execute(sweep_flags, true);
  if (report->parsed()) {
    std::vector<const char*> paths;
    for (const auto& c : csvs) paths.push_back(c.c_str());
    const auto k = kind == "timing" ? SCORE_REPORT_TIMING : SCORE_REPORT_CONVERGENCE;
    if (auto s = score_report_from_csv(paths.data(), paths.size(), k, report_out.c_str(),
                                       report_stem.c_str());
        s != SCORE_OK) {
      return report_failure(s, "report");
    }
    std::cout << "wrote " << report_out << "/" << report_stem << ".csv\n";
    return 0;
  }
  if (sheet->parsed()) {
    if (auto s = score_sdm_write_datasheet(nullptr, sheet_path.c_str()); s != SCORE_OK) {
      return report_failure(s, "datasheet");
    }
    std::cout << "wrote " << sheet_path << '\n';
    return 0;
  }
  return kExitConfig;
}
