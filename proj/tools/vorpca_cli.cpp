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

// vorpca: command-line front end.
//
//   vorpca gen     --n 20 --d 3 --r 1 --k 2 --sigma 0 --gamma 5 --seed 7 --output data.csv
//   vorpca solve   --input data.csv --method brute --r 1 --k 2
//   vorpca diag    volume|ball|samples|mc|gap|bound ...
//   vorpca bench   --config suite.json --output records.jsonl
//   vorpca diagram --input planar.csv --k 1 --output cells.svg
//
// JSON goes to stdout, human-readable notes to stderr. Exit codes: 0 ok,
// 2 usage or validation, 3 enumeration budget exceeded, 4 degenerate gap.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "vorpca/vorpca.hpp"

namespace {

using namespace vorpca;

constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitDegenerate = 4;

struct Options {
  // shared
  std::string input, output, basis, config;
  Index n = 0, d = 0, r = 0, k = 0;
  std::string method;
  std::optional<std::uint64_t> T;
  std::optional<double> alpha;
  double eps = 0.95;
  std::optional<std::uint64_t> seed;
  bool center = false;
  bool header = false;
  double sigma = 0.0;
  double gamma = 0.0;
  double budget = kDefaultEnumerationBudget;
  std::uint64_t samples = 100000;
  std::uint64_t probes = kDefaultProbes;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << s << '\n';
  return s;
}

void emit(const std::string& json, const std::string& path = {}) {
  if (path.empty()) {
    std::cout << json << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << json << '\n';
}

int cmd_gen(const Options& o) {
  const PlantedParams p{o.n, o.d, o.r, o.k, o.sigma, o.gamma};
  validate(p);
  const std::uint64_t seed = resolve_seed(o.seed);
  const Instance inst = generate_planted_instance(p, SeededRng(seed));
  write_csv(o.output, inst.data, o.header);
  std::ofstream side(o.output + ".json");
  if (!side) throw Error("cannot write sidecar '" + o.output + ".json'");
  side << sidecar_json(inst) << '\n';
  std::cerr << "wrote " << o.output << " and " << o.output << ".json\n";
  return 0;
}

int cmd_solve(const Options& o) {
  const Method method = parse_method(o.method);
  DataMatrix x = read_csv(o.input, o.header);
  if (method == Method::kVoronoi2d && (x.cols() != 2 || o.r != 1))
    throw InvalidArgument("voronoi2d requires d = 2 and r = 1");
  detail::check_problem(x, o.r, o.k);

  std::optional<Eigen::VectorXd> mean;
  if (o.center) {
    auto [centred, m] = center_columns(x);
    x = std::move(centred);
    mean = std::move(m);
  }

  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  if (is_sampled(method)) {
    if (o.T) {
      samples = *o.T;
    } else if (o.alpha) {
      samples = required_samples(*o.alpha, o.eps, o.r, x.cols());
      std::cerr << "T = required_samples(alpha=" << *o.alpha << ", eps=" << o.eps << ") = " << samples
                << '\n';
    } else {
      throw InvalidArgument("sampled methods need --T or --alpha (with optional --eps)");
    }
    if (samples < 1) throw InvalidArgument("--T must be at least 1");
    seed = resolve_seed(o.seed);
  }

  const SolveResult result = [&] {
    switch (method) {
      case Method::kBrute: return brute_force_solve(x, o.r, o.k, o.budget);
      case Method::kVoronoi2d: return voronoi_solve_2d(x, o.k);
      case Method::kVoronoiSampled: return voronoi_solve_sampled(x, o.r, o.k, samples, SeededRng(seed));
      case Method::kRandomized: return randomized_solve(x, o.r, o.k, samples, SeededRng(seed));
    }
    throw InvalidArgument("unknown method");
  }();
  JsonObjectWriter w = result_json(result);
  if (mean) w.vector("center", *mean);
  emit(w.str(), o.output);
  return 0;
}

int cmd_diag_volume(const Options& o) {
  JsonObjectWriter w;
  w.field("r", static_cast<std::uint64_t>(o.r))
      .field("d", static_cast<std::uint64_t>(o.d))
      .field("dimension", grassmannian_dimension(o.r, o.d))
      .field("grassmannian_volume", grassmannian_volume(o.r, o.d));
  emit(w.str());
  return 0;
}

int cmd_diag_ball(const Options& o) {
  JsonObjectWriter w;
  w.field("alpha", *o.alpha)
      .field("r", static_cast<std::uint64_t>(o.r))
      .field("d", static_cast<std::uint64_t>(o.d))
      .field("ball_measure_lower_bound", ball_measure_lower_bound(*o.alpha, o.r, o.d));
  emit(w.str());
  return 0;
}

int cmd_diag_samples(const Options& o) {
  const double bound = ball_measure_lower_bound(*o.alpha, o.r, o.d);
  JsonObjectWriter w;
  w.field("alpha", *o.alpha)
      .field("eps", o.eps)
      .field("r", static_cast<std::uint64_t>(o.r))
      .field("d", static_cast<std::uint64_t>(o.d))
      .field("delta", std::min(1.0, bound))
      .field("required_samples", required_samples(*o.alpha, o.eps, o.r, o.d));
  emit(w.str());
  return 0;
}

int cmd_diag_mc(const Options& o) {
  detail::check_rank(o.r, o.d);
  const std::uint64_t seed = resolve_seed(o.seed);
  // Haar invariance: the coordinate subspace is as good a centre as any.
  const Subspace centre(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(o.d),
                                                  static_cast<Eigen::Index>(o.r)));
  const McEstimate mc = mc_ball_measure(centre, *o.alpha, o.samples, SeededRng(seed));
  const double bound = ball_measure_lower_bound(*o.alpha, o.r, o.d);
  JsonObjectWriter w;
  w.field("alpha", *o.alpha)
      .field("r", static_cast<std::uint64_t>(o.r))
      .field("d", static_cast<std::uint64_t>(o.d))
      .field("samples", mc.samples)
      .field("mc_ball_measure", mc.fraction)
      .field("std_error", mc.std_error)
      .field("ball_measure_lower_bound", bound)
      .field("bound_exceeds_estimate", bound > mc.fraction + 3 * mc.std_error)
      .field("seed", seed);
  emit(w.str());
  return 0;
}

int cmd_diag_gap(const Options& o) {
  const DataMatrix x = read_csv(o.input, o.header);
  const Subspace l = read_basis(o.basis);
  const std::uint64_t seed = resolve_seed(o.seed);
  const PreservationReport pres = ordering_preservation_radius(x, l, o.k, o.probes, SeededRng(seed));
  const GapReport gap = alpha_gap(x, l, o.k);
  JsonObjectWriter w;
  w.field("k", static_cast<std::uint64_t>(o.k))
      .field("d1", gap.d1)
      .field("d2", gap.d2)
      .field("alpha", gap.alpha)
      .field("preservation_radius", pres.radius)
      .field("probes_used", pres.probes_used)
      .field("seed", seed);
  emit(w.str());
  return 0;
}

int cmd_diag_bound(const Options& o) {
  detail::check_rank(o.r, o.d);
  const std::uint64_t seed = resolve_seed(o.seed);
  const SeededRng rng(seed);
  double worst_corrected = std::numeric_limits<double>::infinity();
  double worst_printed = std::numeric_limits<double>::infinity();
  std::uint64_t printed_violations = 0;
  for (std::uint64_t i = 0; i < o.samples; ++i) {
    SeededRng local = rng.substream(i);
    const Subspace u = sample_uniform(o.r, o.d, local);
    const Subspace v = sample_uniform(o.r, o.d, local);
    // points close to U expose the gap between the two forms
    const double tilt = local.uniform();
    const Eigen::VectorXd g = gaussian_matrix(o.d, 1, local);
    const Eigen::VectorXd x = u.project(g) + tilt * tilt * (g - u.project(g));
    const DistanceBoundSlack s = distance_bound_slack(x, u, v);
    worst_corrected = std::min(worst_corrected, s.corrected);
    worst_printed = std::min(worst_printed, s.printed);
    printed_violations += s.printed < -1e-9;
  }
  JsonObjectWriter w;
  w.field("r", static_cast<std::uint64_t>(o.r))
      .field("d", static_cast<std::uint64_t>(o.d))
      .field("triples", o.samples)
      .field("corrected_min_slack", worst_corrected)
      .field("printed_min_slack", worst_printed)
      .field("printed_violations", printed_violations)
      .field("seed", seed);
  emit(w.str());
  return 0;
}

int cmd_bench(const Options& o) {
  std::ifstream in(o.config);
  if (!in) throw Error("cannot open '" + o.config + "' for reading");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad benchmark config: ") + e.what());
  }
  const BenchConfig config = parse_bench_config(doc);
  const std::vector<BenchRecord> records = run_benchmark(config);

  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) throw Error("cannot open '" + o.output + "' for writing");
  }
  std::ostream& out = o.output.empty() ? std::cout : file;
  for (const auto& r : records) out << record_json(r) << '\n';

  std::fprintf(stderr, "%-6s %-16s %8s %7s %9s %12s\n", "group", "method", "T", "trials",
               "success", "mean_wall_s");
  for (const auto& row : summarize(records)) {
    const std::string t = row.T ? std::to_string(*row.T) : "-";
    const std::string rate = row.compared ? std::to_string(row.success_rate()).substr(0, 5) : "n/a";
    std::fprintf(stderr, "%-6zu %-16s %8s %7llu %9s %12.6f\n", row.group,
                 std::string(to_string(row.method)).c_str(), t.c_str(),
                 static_cast<unsigned long long>(row.trials), rate.c_str(), row.mean_wall_time_s);
  }
  return 0;
}

int cmd_diagram(const Options& o) {
  const DataMatrix x = read_csv(o.input, o.header);
  const auto cells = build_arc_diagram_2d(x, o.k);
  const SolveResult best = voronoi_solve_2d(x, o.k);
  std::ofstream out(o.output);
  if (!out) throw Error("cannot open '" + o.output + "' for writing");
  out << arc_diagram_svg(x, cells, best.outliers);
  JsonObjectWriter w;
  w.field("cells", static_cast<std::uint64_t>(cells.size()))
      .field("candidates", best.candidates)
      .field("svg", o.output);
  emit(w.str());
  return 0;
}

void apply_thread_env() {
  if (const char* env = std::getenv("VORPCA_THREADS")) {
    try {
      set_thread_limit(static_cast<unsigned>(std::stoul(env)));
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed VORPCA_THREADS='" << env << "'\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"PCA with outliers: exact, Voronoi and randomized Grassmannian solvers"};
  app.require_subcommand(1);
  auto positive = CLI::PositiveNumber;

  auto* gen = app.add_subcommand("gen", "Generate a planted instance (CSV + JSON sidecar)");
  gen->add_option("--n", o.n, "Number of points")->required()->check(positive);
  gen->add_option("--d", o.d, "Ambient dimension")->required()->check(positive);
  gen->add_option("--r", o.r, "Subspace rank")->required()->check(positive);
  gen->add_option("--k", o.k, "Number of outliers")->required();
  gen->add_option("--sigma", o.sigma, "Inlier noise scale")->capture_default_str();
  gen->add_option("--gamma", o.gamma, "Outlier gap factor (> 1)")->required();
  gen->add_option("--seed", o.seed, "RNG seed");
  gen->add_option("--output", o.output, "Output CSV path")->required();
  gen->add_flag("--header", o.header, "Write a header row");

  auto* solve = app.add_subcommand("solve", "Solve PCA with outliers; JSON result on stdout");
  solve->add_option("--input", o.input, "Input CSV")->required();
  solve->add_option("--method", o.method, "brute | voronoi2d | voronoi-sampled | randomized")
      ->required()
      ->check(CLI::IsMember({"brute", "voronoi2d", "voronoi-sampled", "randomized"}));
  solve->add_option("--r", o.r, "Subspace rank")->required()->check(positive);
  solve->add_option("--k", o.k, "Number of outliers")->required();
  solve->add_option("--T", o.T, "Sample count for sampled methods");
  solve->add_option("--alpha", o.alpha, "Gap used to derive T when --T is absent");
  solve->add_option("--eps", o.eps, "Target success used to derive T")->capture_default_str();
  solve->add_option("--seed", o.seed, "RNG seed");
  solve->add_option("--budget", o.budget, "Subset budget for brute force")->capture_default_str();
  solve->add_option("--output", o.output, "Write JSON here instead of stdout");
  solve->add_flag("--center", o.center, "Subtract column means first");
  solve->add_flag("--header", o.header, "Input has a header row");

  auto* diag = app.add_subcommand("diag", "Grassmannian and gap diagnostics");
  diag->require_subcommand(1);
  auto* volume = diag->add_subcommand("volume", "Volume of Gr(r, d)");
  auto* ball = diag->add_subcommand("ball", "Ball-measure lower bound");
  auto* samples = diag->add_subcommand("samples", "Required sample count T");
  auto* mc = diag->add_subcommand("mc", "Monte-Carlo ball measure vs the lower bound");
  auto* bound = diag->add_subcommand("bound", "Point-to-subspace distance bound check");
  for (auto* sub : {volume, ball, samples, mc, bound}) {
    sub->add_option("--r", o.r, "Subspace rank")->required()->check(positive);
    sub->add_option("--d", o.d, "Ambient dimension")->required()->check(positive);
  }
  for (auto* sub : {ball, samples, mc})
    sub->add_option("--alpha", o.alpha, "Ball radius / gap")->required();
  samples->add_option("--eps", o.eps, "Target success")->capture_default_str();
  for (auto* sub : {mc, bound}) {
    sub->add_option("--samples", o.samples, "Monte-Carlo draws")->capture_default_str()->check(positive);
    sub->add_option("--seed", o.seed, "RNG seed");
  }
  auto* gap = diag->add_subcommand("gap", "Relative gap and ordering-preservation radius");
  gap->add_option("--input", o.input, "Input CSV")->required();
  gap->add_option("--basis", o.basis, "Basis: solve JSON, gen sidecar JSON, or d x r CSV")->required();
  gap->add_option("--k", o.k, "Number of outliers")->required();
  gap->add_option("--probes", o.probes, "Probe subspaces")->capture_default_str()->check(positive);
  gap->add_option("--seed", o.seed, "RNG seed");
  gap->add_flag("--header", o.header, "Input has a header row");

  auto* bench = app.add_subcommand("bench", "Run a benchmark suite; JSON lines out");
  bench->add_option("--config", o.config, "Suite config JSON")->required();
  bench->add_option("--output", o.output, "Records path (default stdout)");

  auto* diagram = app.add_subcommand("diagram", "SVG of the planar arc diagram");
  diagram->add_option("--input", o.input, "Input CSV (d = 2)")->required();
  diagram->add_option("--k", o.k, "Number of outliers")->required();
  diagram->add_option("--output", o.output, "SVG path")->required();
  diagram->add_flag("--header", o.header, "Input has a header row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }
  apply_thread_env();

  try {
    if (*gen) return cmd_gen(o);
    if (*solve) return cmd_solve(o);
    if (*bench) return cmd_bench(o);
    if (*diagram) return cmd_diagram(o);
    if (*volume) return cmd_diag_volume(o);
    if (*ball) return cmd_diag_ball(o);
    if (*samples) return cmd_diag_samples(o);
    if (*mc) return cmd_diag_mc(o);
    if (*gap) return cmd_diag_gap(o);
    if (*bound) return cmd_diag_bound(o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\nhint: try --method randomized or voronoi-sampled\n";
    return kExitBudget;
  } catch (const DegenerateGap& e) {
    JsonObjectWriter w;
    w.field("error", "degenerate_gap").field("message", e.what()).field("d1", e.d1()).field("d2", e.d2());
    std::cout << w.str() << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
