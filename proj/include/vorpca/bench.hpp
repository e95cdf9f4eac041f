// Copyright 2026 The vorpca Authors
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

// Benchmark harness: a grid of planted instance specs x trials, each solved
// by the requested methods (sampled methods once per T), compared against
// the exact oracle when C(n, k) fits the budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "vorpca/error.hpp"
#include "vorpca/instance.hpp"
#include "vorpca/json_io.hpp"
#include "vorpca/parallel.hpp"
#include "vorpca/randomized.hpp"
#include "vorpca/result.hpp"
#include "vorpca/rng.hpp"
#include "vorpca/voronoi.hpp"

namespace vorpca {

/// Relative agreement at 1e-9, with an absolute floor of 1e-15 ||X||_F^2
/// so losses that are both at roundoff level compare equal.
inline bool losses_match(double loss, double oracle, const DataMatrix& x) {
  const double floor = 1e-15 * x.values().squaredNorm();
  return std::abs(loss - oracle) <= 1e-9 * std::max(std::abs(oracle), floor);
}

struct BenchConfig {
  std::uint64_t seed = 0;
  std::vector<PlantedParams> instances;
  std::vector<Method> methods;
  std::vector<std::uint64_t> t_grid;
  std::uint64_t trials = 1;
  double oracle_budget = kDefaultEnumerationBudget;
};

struct BenchRecord {
  std::string instance_id;
  Method method;
  std::optional<std::uint64_t> T;
  double loss;
  std::optional<bool> match_oracle;
  double wall_time_s;
  std::uint64_t seed;
  std::size_t group;  ///< index into BenchConfig::instances
};

inline bool is_sampled(Method m) { return m == Method::kVoronoiSampled || m == Method::kRandomized; }

inline void validate(const BenchConfig& c) {
  for (const auto& p : c.instances) {
    validate(p);
    for (Method m : c.methods)
      if (m == Method::kVoronoi2d && (p.d != 2 || p.r != 1))
        throw InvalidArgument("voronoi2d requires every instance to have d = 2 and r = 1");
  }
  const bool sampled = std::any_of(c.methods.begin(), c.methods.end(), is_sampled);
  if (sampled && c.t_grid.empty()) throw InvalidArgument("sampled methods need a non-empty T grid");
  for (auto t : c.t_grid)
    if (t < 1) throw InvalidArgument("every T must be at least 1");
  if (c.trials < 1) throw InvalidArgument("trials must be at least 1");
  if (!(c.oracle_budget >= 0)) throw InvalidArgument("oracle budget must be nonnegative");
}

/// Parses a config document:
///   {"seed": 1, "trials": 10, "oracle_budget": 2e6, "T": [4, 16],
///    "methods": ["brute", "randomized"],
///    "instances": [{"n": 30, "d": 4, "r": 2, "k": 3, "sigma": 0.01, "gamma": 10}]}
inline BenchConfig parse_bench_config(const nlohmann::json& j) {
  BenchConfig c;
  try {
    c.seed = j.value("seed", std::uint64_t{0});
    c.trials = j.value("trials", std::uint64_t{1});
    c.oracle_budget = j.value("oracle_budget", kDefaultEnumerationBudget);
    for (const auto& t : j.value("T", nlohmann::json::array())) c.t_grid.push_back(t.get<std::uint64_t>());
    for (const auto& m : j.at("methods")) c.methods.push_back(parse_method(m.get<std::string>()));
    for (const auto& s : j.at("instances"))
      c.instances.push_back(PlantedParams{s.at("n").get<Index>(), s.at("d").get<Index>(),
                                          s.at("r").get<Index>(), s.at("k").get<Index>(),
                                          s.value("sigma", 0.0), s.at("gamma").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad benchmark config: ") + e.what());
  }
  validate(c);
  return c;
}

namespace detail {

template <class F>
auto timed(F&& f, double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  auto out = f();
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline std::uint64_t cell_seed(std::uint64_t seed, std::size_t group, std::uint64_t trial) {
  return SeededRng::splitmix64(SeededRng::splitmix64(seed ^ (group * 0xA24BAED4963EE407ULL)) +
                               trial);
}

}  // namespace detail

/// Runs the grid. Records are ordered by (group, trial, method order in
/// the config, T) and are identical for identical configs apart from
/// wall_time_s.
inline std::vector<BenchRecord> run_benchmark(const BenchConfig& config) {
  validate(config);
  if (config.methods.empty()) return {};
  struct Cell {
    std::size_t group;
    std::uint64_t trial;
  };
  std::vector<Cell> cells;
  for (std::size_t g = 0; g < config.instances.size(); ++g)
    for (std::uint64_t t = 0; t < config.trials; ++t) cells.push_back({g, t});

  std::vector<std::vector<BenchRecord>> per_cell(cells.size());
  parallel_for(cells.size(), [&](std::size_t ci) {
    const auto [g, trial] = cells[ci];
    const PlantedParams& p = config.instances[g];
    const std::uint64_t seed = detail::cell_seed(config.seed, g, trial);
    const Instance inst = generate_planted_instance(p, SeededRng(seed));
    const std::string id = "g" + std::to_string(g) + "-t" + std::to_string(trial);

    std::optional<double> oracle;
    std::optional<SolveResult> brute;
    double brute_time = 0.0;
    if (binomial(p.n, p.k) <= config.oracle_budget) {
      brute = detail::timed([&] { return brute_force_solve(inst.data, p.r, p.k, config.oracle_budget); },
                            brute_time);
      oracle = brute->loss;
    }
    auto record = [&](Method m, std::optional<std::uint64_t> T, double loss, double secs) {
      std::optional<bool> match;
      if (oracle) match = losses_match(loss, *oracle, inst.data);
      per_cell[ci].push_back(BenchRecord{id, m, T, loss, match, secs, seed, g});
    };
    const SeededRng solver_rng(SeededRng::splitmix64(seed + 1));
    for (Method m : config.methods) {
      double secs = 0.0;
      switch (m) {
        case Method::kBrute:
          if (brute) record(m, std::nullopt, brute->loss, brute_time);
          break;
        case Method::kVoronoi2d: {
          const SolveResult r = detail::timed([&] { return voronoi_solve_2d(inst.data, p.k); }, secs);
          record(m, std::nullopt, r.loss, secs);
          break;
        }
        case Method::kVoronoiSampled:
        case Method::kRandomized:
          for (std::uint64_t T : config.t_grid) {
            const SolveResult r = detail::timed(
                [&] {
                  return m == Method::kRandomized
                             ? randomized_solve(inst.data, p.r, p.k, T, solver_rng)
                             : voronoi_solve_sampled(inst.data, p.r, p.k, T, solver_rng);
                },
                secs);
            record(m, T, r.loss, secs);
          }
          break;
      }
    }
  });

  std::vector<BenchRecord> out;
  for (auto& v : per_cell)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

/// One JSON line: {instance_id, method, T, loss, match_oracle, wall_time_s, seed}.
inline std::string record_json(const BenchRecord& r) {
  JsonObjectWriter w;
  w.field("instance_id", r.instance_id)
      .field("method", to_string(r.method))
      .field("T", r.T)
      .field("loss", r.loss)
      .field("match_oracle", r.match_oracle)
      .field("wall_time_s", r.wall_time_s)
      .field("seed", r.seed);
  return w.str();
}

/// Aggregate over trials for one (instance parameters, method, T).
struct BenchSummaryRow {
  std::size_t group;
  Method method;
  std::optional<std::uint64_t> T;
  std::uint64_t trials;
  std::uint64_t compared;  ///< trials where the oracle ran
  std::uint64_t matches;
  double mean_wall_time_s;

  double success_rate() const {
    return compared ? static_cast<double>(matches) / static_cast<double>(compared) : 0.0;
  }
};

inline std::vector<BenchSummaryRow> summarize(const std::vector<BenchRecord>& records) {
  using Key = std::tuple<std::size_t, int, std::uint64_t>;
  std::map<Key, BenchSummaryRow> rows;
  for (const auto& r : records) {
    const Key key{r.group, static_cast<int>(r.method), r.T.value_or(0)};
    auto [it, fresh] = rows.try_emplace(key, BenchSummaryRow{r.group, r.method, r.T, 0, 0, 0, 0.0});
    BenchSummaryRow& row = it->second;
    ++row.trials;
    row.mean_wall_time_s += r.wall_time_s;
    if (r.match_oracle) {
      ++row.compared;
      row.matches += *r.match_oracle ? 1 : 0;
    }
  }
  std::vector<BenchSummaryRow> out;
  for (auto& [key, row] : rows) {
    row.mean_wall_time_s /= static_cast<double>(row.trials);
    out.push_back(row);
  }
  return out;
}

}  // namespace vorpca
