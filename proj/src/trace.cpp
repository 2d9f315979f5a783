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

#include <future>
#include <iostream>

#include "score/trace.hpp"

namespace score {

std::optional<std::uint64_t> remaining_combinations(const SearchSpace& space,
                                                    const EvaluatedSet& evaluated) {
  const auto total = space.exact_combination_count();
  if (!total) return std::nullopt;
  return *total - std::min<std::uint64_t>(*total, evaluated.size());
}

std::optional<IndexTuple> random_unevaluated(const SearchSpace& space, Rng& rng,
                                             const EvaluatedSet& evaluated,
                                             const EvaluatedSet* exclude) {
  auto taken = [&](const IndexTuple& t) {
    return evaluated.contains(t) || (exclude && exclude->contains(t));
  };
  const auto total = space.exact_combination_count();
  IndexTuple t(space.dims());
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (std::size_t d = 0; d < space.dims(); ++d) {
      std::uniform_int_distribution<std::uint32_t> pick(
          0, static_cast<std::uint32_t>(space.grid(d).size() - 1));
      t[d] = pick(rng);
    }
    if (!taken(t)) return t;
  }
  if (!total || *total > (1ULL << 24)) return std::nullopt;
  // Small, nearly exhausted space: enumerate the free tuples.
  std::vector<IndexTuple> free;
  IndexTuple cur(space.dims(), 0);
  for (std::uint64_t k = 0; k < *total; ++k) {
    if (!taken(cur)) free.push_back(cur);
    for (std::size_t d = 0; d < space.dims(); ++d) {
      if (++cur[d] < space.grid(d).size()) break;
      cur[d] = 0;
    }
  }
  if (free.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
  return free[pick(rng)];
}

std::vector<IndexTuple> random_design(const SearchSpace& space, std::size_t count, Rng& rng,
                                      const EvaluatedSet& evaluated) {
  std::vector<IndexTuple> out;
  EvaluatedSet chosen;
  while (out.size() < count) {
    auto t = random_unevaluated(space, rng, evaluated, &chosen);
    if (!t) break;
    chosen.insert(*t);
    out.push_back(std::move(*t));
  }
  return out;
}

std::vector<std::size_t> evaluate_batch(std::span<const IndexTuple> batch,
                                        const Objective& objective, bool parallel,
                                        History& history, EvaluatedSet& evaluated,
                                        RunCounters& counters) {
  using clock = std::chrono::steady_clock;
  struct Result {
    double value;
    std::chrono::nanoseconds wall;
  };
  const SearchSpace& space = history.space();
  auto run = [&](const IndexTuple& t) {
    const auto point = space.point(t);
    const auto t0 = clock::now();
    const double v = objective(point);
    return Result{v, clock::now() - t0};
  };
  std::vector<Result> results;
  results.reserve(batch.size());
  if (parallel && batch.size() > 1) {
    std::vector<std::future<Result>> pending;
    for (const auto& t : batch) pending.push_back(std::async(std::launch::async, run, t));
    for (auto& f : pending) results.push_back(f.get());
  } else {
    for (const auto& t : batch) results.push_back(run(t));
  }

  std::vector<std::size_t> appended;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    evaluated.insert(batch[i]);
    ++counters.evaluations;
    try {
      history.record(batch[i], results[i].value, results[i].wall);
      appended.push_back(history.size() - 1);
    } catch (const NonFiniteValue& e) {
      ++counters.dropped;
      std::clog << "warning: " << e.what() << "; dropped\n";
    }
  }
  return appended;
}

}  // namespace score
