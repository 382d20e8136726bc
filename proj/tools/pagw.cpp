// Copyright 2026 The pagw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pagw: generate, couple and compare the seven multigraph models, run
// scaling experiments and the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pagw/couplings.hpp"
#include "pagw/distance.hpp"
#include "pagw/errors.hpp"
#include "pagw/experiments.hpp"
#include "pagw/manifest.hpp"
#include "pagw/models.hpp"
#include "pagw/multigraph.hpp"

namespace fs = std::filesystem;
using namespace pagw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

// Raised for bad flag combinations detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string real(double v) { return format_real(v); }

void finish_manifest(RunManifest& m, const Timer& timer, const std::string& path) {
  m.duration_seconds = timer.seconds();
  write_text_file(path, m.to_text());
}

void print_reports(const std::vector<TestReport>& reports) {
  std::cout << std::left << std::setw(58) << "test" << std::setw(24) << "statistic"
            << std::setw(6) << "dof" << std::setw(24) << "p_value" << std::setw(14)
            << "threshold" << "result\n";
  for (const auto& r : reports) {
    std::cout << std::left << std::setw(58) << r.name << std::setw(24) << real(r.statistic)
              << std::setw(6) << r.dof << std::setw(24)
              << (r.p_value ? real(*r.p_value) : std::string("-")) << std::setw(14)
              << real(r.threshold) << (r.pass ? "PASS" : "FAIL");
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ')';
    std::cout << '\n';
  }
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  int model = 1;
  std::size_t n = 0;
  double c = 1.0;
  std::optional<double> alpha;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  if (model_needs_alpha(a.model) && !a.alpha) {
    throw UsageError("model " + std::to_string(a.model) + " requires --alpha (models 2-5 need alpha in (1,2))");
  }
  const Timer timer;
  const ModelParams params{a.n, a.c, model_needs_alpha(a.model) ? a.alpha : std::nullopt};
  Stream s({a.seed, 0, "gen/model" + std::to_string(a.model)});
  const Multigraph g = gen_model(a.model, params, s);
  save_graph(a.out, {a.n, a.c, std::to_string(a.model), a.seed}, g);

  RunManifest m;
  m.command = "gen";
  m.run_seed = a.seed;
  m.set("model", std::to_string(a.model));
  m.set("n", std::to_string(a.n));
  m.set("c", real(a.c));
  if (params.alpha) m.set("alpha", real(*params.alpha));
  m.set("out", a.out);
  m.artifacts = {a.out};
  finish_manifest(m, timer, a.out + ".manifest");
  std::cout << "wrote " << a.out << " (n=" << a.n << ", edges=" << g.edge_count() << ")\n";
  return kExitOk;
}

// --- couple ----------------------------------------------------------------

struct CoupleArgs {
  std::size_t n = 0;
  double c = 1.0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::string out_dir;
};

std::string graph_name(int model) { return "model" + std::to_string(model) + ".graph"; }

int cmd_couple(const CoupleArgs& a) {
  const Timer timer;
  const ModelParams params{a.n, a.c, a.alpha};
  params.validate(true);
  Stream s({a.seed, 0, "couple"});
  const CoupledRealization chain = build_chain(params, s);

  fs::create_directories(a.out_dir);
  RunManifest m;
  m.command = "couple";
  m.run_seed = a.seed;
  m.set("n", std::to_string(a.n));
  m.set("c", real(a.c));
  m.set("alpha", real(a.alpha));
  m.set("out_dir", a.out_dir);
  for (int k = 1; k <= 7; ++k) {
    const std::string path = (fs::path(a.out_dir) / graph_name(k)).string();
    save_graph(path, {a.n, a.c, std::to_string(k), a.seed}, chain.graph(k));
    m.artifacts.push_back(path);
  }
  const std::string sidecar = (fs::path(a.out_dir) / "latent.txt").string();
  write_text_file(sidecar, latent_sidecar(chain.latent));
  m.artifacts.push_back(sidecar);

  // Audit what was written, not what is in memory.
  std::vector<Multigraph> g;
  for (int k = 1; k <= 7; ++k) {
    g.push_back(load_graph((fs::path(a.out_dir) / graph_name(k)).string()).graph);
  }
  const SidecarRecord rec = parse_latent_sidecar(read_text_file(sidecar));
  bool g2_below_g1 = true, g7_loopless = true;
  for (Vertex i = 0; i < a.n; ++i) {
    g7_loopless &= g[6](i, i) == 0;
    for (Vertex j = 0; j < a.n; ++j) g2_below_g1 &= g[1](i, j) <= g[0](i, j);
  }
  std::int64_t sum_c = 0;
  for (auto ci : rec.C) sum_c += ci;
  const bool r_consistent = rec.r == sum_c - static_cast<std::int64_t>(a.n);

  finish_manifest(m, timer, (fs::path(a.out_dir) / "manifest.txt").string());
  std::cout << "r=" << chain.latent.r << " floor(cn^2)=" << params.urn_steps()
            << (chain.truncated() ? " (truncated: models 2-4 empty)" : "") << '\n';
  for (int k = 1; k <= 7; ++k) {
    std::cout << "model " << k << ": edges=" << chain.graph(k).edge_count() << '\n';
  }
  std::cout << "audit G2 <= G1: " << (g2_below_g1 ? "ok" : "FAILED") << '\n';
  std::cout << "audit G7 loopless: " << (g7_loopless ? "ok" : "FAILED") << '\n';
  std::cout << "audit sidecar r = sum C - n: " << (r_consistent ? "ok" : "FAILED") << '\n';
  return g2_below_g1 && g7_loopless && r_consistent ? kExitOk : kExitFailed;
}

// --- dist ------------------------------------------------------------------

struct DistArgs {
  std::string file_a;
  std::string file_b;
  std::size_t exact_cap = kDefaultExactCap;
  std::string out;
};

int cmd_dist(const DistArgs& a) {
  const Timer timer;
  const GraphFile ga = load_graph(a.file_a);
  const GraphFile gb = load_graph(a.file_b);
  if (ga.graph.size() != gb.graph.size()) {
    throw UsageError("graphs differ in vertex count (" + std::to_string(ga.graph.size()) + " vs " +
                     std::to_string(gb.graph.size()) + ")");
  }
  const DistanceReport report = distance_report(ga.graph, gb.graph, a.exact_cap);
  if (!report.jumble_exact) {
    std::cerr << "notice: n=" << report.n << " exceeds the exact cap " << a.exact_cap
              << "; exact jumble and cut norms skipped\n";
  }
  const std::string csv = distance_csv_header() + "\n" + distance_csv_row(report) + "\n";
  std::cout << csv;
  if (!a.out.empty()) {
    write_text_file(a.out, csv);
    RunManifest m;
    m.command = "dist";
    m.set("file_a", a.file_a);
    m.set("file_b", a.file_b);
    m.set("exact_cap", std::to_string(a.exact_cap));
    m.set("out", a.out);
    m.artifacts = {a.out};
    finish_manifest(m, timer, a.out + ".manifest");
  }
  return kExitOk;
}

// --- scaling ---------------------------------------------------------------

struct ScalingArgs {
  std::string config;
  std::string out_dir = ".";
  std::optional<unsigned> workers;
};

int cmd_scaling(const ScalingArgs& a) {
  std::vector<ExperimentConfig> cfgs = parse_experiment_config(read_text_file(a.config));
  for (auto& cfg : cfgs) {
    if (a.workers) cfg.workers = *a.workers;
    cfg.validate();
  }
  fs::create_directories(a.out_dir);
  for (const auto& cfg : cfgs) {
    const Timer timer;
    const ScalingRun run = run_scaling(cfg);
    const std::string stem =
        (fs::path(a.out_dir) / (cfg.name + "_seed" + std::to_string(cfg.run_seed))).string();
    write_text_file(stem + ".csv", scaling_csv(run));
    write_text_file(stem + ".json", scaling_json(run).dump(2) + "\n");
    write_text_file(stem + ".plot.dat", scaling_plot_data(run));

    RunManifest m;
    m.command = "scaling";
    m.run_seed = cfg.run_seed;
    m.set("config", a.config);
    m.set("experiment", cfg.name);
    m.set("c", real(cfg.c));
    m.set("alpha", real(cfg.alpha));
    std::string grid;
    for (std::size_t n : cfg.n_grid) grid += (grid.empty() ? "" : ",") + std::to_string(n);
    m.set("n_grid", grid);
    m.set("replications", std::to_string(cfg.replications));
    m.set("pair", to_string(cfg.pair));
    m.set("statistic", to_string(cfg.statistic));
    m.set("exact_cap", std::to_string(cfg.exact_cap));
    m.artifacts = {stem + ".csv", stem + ".json", stem + ".plot.dat"};
    finish_manifest(m, timer, stem + ".manifest");

    std::cout << "[" << cfg.name << "] pair " << to_string(cfg.pair) << ", "
              << to_string(cfg.statistic) << '\n';
    std::cout << scaling_csv(run);
    std::cout << "slope=" << real(run.fit.slope) << " r_squared=" << real(run.fit.r_squared)
              << " nonincreasing_within_2se=" << (is_nonincreasing_within(run, 2.0) ? "yes" : "no")
              << '\n';
  }
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::optional<std::size_t> n;
  std::optional<double> alpha;
  std::optional<double> c;
  std::optional<std::size_t> samples;
  std::vector<std::size_t> n_grid;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  bool inject_fault = false;
  std::string json;
};

int cmd_verify(const VerifyArgs& a) {
  const Timer timer;
  std::vector<TestReport> reports;
  std::optional<ScalingRun> scaling;
  std::map<std::string, std::size_t> structural;

  if (a.suite == "lemma3") {
    const std::size_t n = a.n.value_or(3);
    const double alpha = a.alpha.value_or(1.5);
    const std::size_t samples = a.samples.value_or(200000);
    reports = verify_lemma3(n, alpha, samples, a.seed, 0, a.workers);
    for (TestReport r : verify_lemma3(n, alpha, samples, a.seed, 1, a.workers)) {
      r.name = "negative control (C+1): " + r.name;
      r.threshold = kNegativeControlThreshold;
      r.pass = *r.p_value < kNegativeControlThreshold;
      r.detail = "must reject";
      reports.push_back(r);
    }
  } else if (a.suite == "marginals") {
    const MarginalSuite suite =
        verify_marginals({1, 2, 3, 4, 5, 6, 7}, a.n.value_or(8), a.alpha.value_or(1.5),
                         a.c.value_or(1.0), a.samples.value_or(10000), a.seed,
                         FaultInjection{a.inject_fault}, a.workers);
    reports = suite.reports;
    structural = suite.structural_violations;
    for (const auto& [name, count] : structural) {
      TestReport r;
      r.name = "structural: " + name;
      r.statistic = static_cast<double>(count);
      r.pass = count == 0;
      r.detail = "violations in " + std::to_string(suite.samples) + " samples";
      reports.push_back(r);
    }
  } else if (a.suite == "lowerbounds") {
    reports = verify_lower_bounds(a.n.value_or(100), a.c.value_or(1.0), a.samples.value_or(10000),
                                  a.seed, a.workers);
  } else if (a.suite == "hstar") {
    const std::vector<std::size_t> grid =
        a.n_grid.empty() ? std::vector<std::size_t>{32, 64, 128, 256, 512} : a.n_grid;
    const double alpha = a.alpha.value_or(5.0 / 3.0);
    scaling = verify_hstar_mean(grid, alpha, a.c.value_or(1.0), a.samples.value_or(200), a.seed,
                                a.workers);
    TestReport r;
    r.name = "fitted slope of E(H*)";
    r.statistic = scaling->fit.slope;
    r.threshold = -0.4;
    r.pass = scaling->fit.slope <= -0.4;
    r.detail = "leading exponent " + real(hstar_exponent(alpha));
    reports.push_back(r);
    std::cout << scaling_csv(*scaling);
  } else if (a.suite == "norms") {
    reports = verify_norms(200, 500, a.seed);
  } else {
    throw UsageError("unknown suite '" + a.suite + "' (lemma3 | marginals | lowerbounds | hstar | norms)");
  }

  print_reports(reports);
  const bool ok = all_pass(reports);
  std::cout << (ok ? "all tests passed" : "verification FAILED") << '\n';

  if (!a.json.empty()) {
    nlohmann::json j;
    j["suite"] = a.suite;
    j["seed"] = a.seed;
    j["pass"] = ok;
    j["reports"] = nlohmann::json::array();
    for (const auto& r : reports) j["reports"].push_back(report_json(r));
    if (scaling) j["scaling"] = scaling_json(*scaling);
    write_text_file(a.json, j.dump(2) + "\n");
    RunManifest m;
    m.command = "verify";
    m.run_seed = a.seed;
    m.set("suite", a.suite);
    if (a.n) m.set("n", std::to_string(*a.n));
    if (a.alpha) m.set("alpha", real(*a.alpha));
    if (a.c) m.set("c", real(*a.c));
    if (a.samples) m.set("samples", std::to_string(*a.samples));
    m.artifacts = {a.json};
    finish_manifest(m, timer, a.json + ".manifest");
  }
  return ok ? kExitOk : kExitFailed;
}

// --- beta ------------------------------------------------------------------

int cmd_beta(double step) {
  if (!(step > 0.0 && step < 1.0)) throw UsageError("--step must lie in (0, 1)");
  std::cout << "alpha,beta\n";
  for (int k = 1;; ++k) {
    const double alpha = std::round((1.0 + k * step) * 1e9) / 1e9;
    if (alpha >= 2.0 - 1e-12) break;
    std::cout << real(alpha) << ',' << real(beta_exponent(alpha)) << '\n';
  }
  const auto [alpha, beta] = beta_optimum();
  std::cout << "optimum alpha=" << real(alpha) << " (5/3) beta=" << real(beta) << " (-1/3)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preferential attachment and W-random multigraphs: generators, couplings, distances"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate one graph of a given model");
  gen_cmd->add_option("--model", gen.model, "Model number 1..7")->required()->check(CLI::Range(1, 7));
  gen_cmd->add_option("--n", gen.n, "Vertex count")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--c", gen.c, "Edge density constant c > 0");
  gen_cmd->add_option("--alpha", gen.alpha, "Warm-up exponent in (1,2), models 2-5");
  gen_cmd->add_option("--seed", gen.seed, "Run seed");
  gen_cmd->add_option("--out", gen.out, "Output graph file")->required();

  CoupleArgs couple;
  auto* couple_cmd = app.add_subcommand("couple", "Build one coupled realization of all seven models");
  couple_cmd->add_option("--n", couple.n, "Vertex count")->required()->check(CLI::PositiveNumber);
  couple_cmd->add_option("--c", couple.c, "Edge density constant c > 0");
  couple_cmd->add_option("--alpha", couple.alpha, "Warm-up exponent in (1,2)")->required();
  couple_cmd->add_option("--seed", couple.seed, "Run seed");
  couple_cmd->add_option("--out-dir", couple.out_dir, "Output directory")->required();

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "Distance statistics between two graph files");
  dist_cmd->add_option("file_a", dist.file_a, "First graph file")->required();
  dist_cmd->add_option("file_b", dist.file_b, "Second graph file")->required();
  dist_cmd->add_option("--exact-cap", dist.exact_cap, "Largest n for the exact norms");
  dist_cmd->add_option("--out", dist.out, "Also write the CSV row here");

  ScalingArgs scaling;
  auto* scaling_cmd = app.add_subcommand("scaling", "Run scaling experiments from a config file");
  scaling_cmd->add_option("config", scaling.config, "Experiment config (key = value, [sections])")
      ->required();
  scaling_cmd->add_option("--out-dir", scaling.out_dir, "Directory for CSV, JSON and plot data");
  scaling_cmd->add_option("--workers", scaling.workers, "Worker threads (default: all cores)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("--suite", verify.suite, "lemma3 | marginals | lowerbounds | hstar | norms")
      ->required();
  verify_cmd->add_option("--n", verify.n, "Vertex count");
  verify_cmd->add_option("--alpha", verify.alpha, "Warm-up exponent");
  verify_cmd->add_option("--c", verify.c, "Edge density constant");
  verify_cmd->add_option("--samples", verify.samples, "Samples or replications");
  verify_cmd->add_option("--n-grid", verify.n_grid, "Grid of n for the hstar suite")->delimiter(',');
  verify_cmd->add_option("--seed", verify.seed, "Run seed");
  verify_cmd->add_option("--workers", verify.workers, "Worker threads (default: all cores)");
  verify_cmd->add_option("--json", verify.json, "Write the report table as JSON");
  verify_cmd->add_flag("--inject-fault", verify.inject_fault,
                       "Test hook: keep one deleted edge in model 2")
      ->group("");

  double beta_step = 0.05;
  auto* beta_cmd = app.add_subcommand("beta", "Print the rate exponent beta(alpha) and its optimum");
  beta_cmd->add_option("--step", beta_step, "Grid step for alpha");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*couple_cmd) return cmd_couple(couple);
    if (*dist_cmd) return cmd_dist(dist);
    if (*scaling_cmd) return cmd_scaling(scaling);
    if (*verify_cmd) return cmd_verify(verify);
    if (*beta_cmd) return cmd_beta(beta_step);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
