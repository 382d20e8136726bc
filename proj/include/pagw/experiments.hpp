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

// Monte Carlo harness: distance scaling runs over a grid of n, and the
// distributional checks on the generators and couplings.
//
// Every replication draws from its own StreamKey (run seed, replication
// index, experiment label), so results do not depend on the worker count.

#ifndef PAGW_EXPERIMENTS_HPP_
#define PAGW_EXPERIMENTS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pagw/couplings.hpp"
#include "pagw/stats.hpp"

namespace pagw {

inline constexpr double kPValueThreshold = 1e-3;
inline constexpr double kNegativeControlThreshold = 1e-6;

enum class Statistic { rowsum_bound, exact, edge_stat };

std::string to_string(Statistic s);
Statistic parse_statistic(const std::string& text);

struct ModelPair {
  int first = 1;
  int second = 7;
  friend bool operator==(const ModelPair&, const ModelPair&) = default;
};

std::string to_string(ModelPair p);
/// "1-7" or "6,7".
ModelPair parse_model_pair(const std::string& text);

struct ExperimentConfig {
  std::string name = "scaling";
  double c = 1.0;
  double alpha = 1.5;
  std::vector<std::size_t> n_grid;
  std::size_t replications = 2;
  std::uint64_t run_seed = 0;
  ModelPair pair;
  Statistic statistic = Statistic::rowsum_bound;
  std::size_t exact_cap = 16;
  unsigned workers = 0;  // 0: hardware concurrency

  void validate() const;
};

struct ScalingPoint {
  std::size_t n = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t replications = 0;
};

struct ScalingRun {
  ExperimentConfig config;
  std::vector<ScalingPoint> points;
  SlopeFit fit;
};

/// For each n, builds `replications` coupled realizations and averages the
/// configured statistic on the configured model pair; then fits the log-log
/// slope.
ScalingRun run_scaling(const ExperimentConfig& cfg);

/// True when every consecutive mean rises by at most k combined standard
/// errors, sqrt(se_a^2 + se_b^2).
bool is_nonincreasing_within(const ScalingRun& run, double k_stderr);

/// Runs `count` jobs f(0..count-1) on up to `workers` threads.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& f);

struct TestReport {
  std::string name;
  double statistic = 0.0;
  int dof = 0;
  std::optional<double> p_value;  // absent for threshold checks
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

/// Sets `pass` on every report carrying a p-value: p * count > threshold.
void apply_bonferroni(std::vector<TestReport>& reports, double threshold = kPValueThreshold);

bool all_pass(const std::vector<TestReport>& reports);

/// Urn counts after a negative-binomial number of steps against the rounded
/// exponentials C_i: first coordinate and totals. `shift` adds a constant
/// to C (negative control).
std::vector<TestReport> verify_lemma3(std::size_t n, double alpha, std::size_t samples,
                                      std::uint64_t seed, std::int64_t shift = 0,
                                      unsigned workers = 0);

struct MarginalSuite {
  std::vector<TestReport> reports;  // two per model: edge count, max row sum
  std::map<std::string, std::size_t> structural_violations;
  std::size_t samples = 0;
  bool pass() const;
};

/// Chain-extracted graphs of the given models against their standalone
/// generators, plus the pathwise coupling properties on every realization.
MarginalSuite verify_marginals(const std::vector<int>& models, std::size_t n, double alpha,
                               double c, std::size_t samples, std::uint64_t seed,
                               FaultInjection fault = {}, unsigned workers = 0);

/// Models of an adjacent pair, e.g. {5, 6}.
std::vector<int> models_of(ModelPair pair);

/// Two-sample chi-square on edge counts of two standalone generators.
TestReport compare_standalone_edge_counts(int model_a, int model_b, std::size_t n, double alpha,
                                          double c, std::size_t samples, std::uint64_t seed,
                                          unsigned workers = 0);

/// Mean absolute deviation of the loopy and loopless W-random edge counts
/// from the deterministic preferential attachment edge count.
std::vector<TestReport> verify_lower_bounds(std::size_t n, double c, std::size_t samples,
                                            std::uint64_t seed, unsigned workers = 0);

/// Mean of the splitting difference H*_ij over n_grid with a fitted slope.
/// Each replication averages H* over all off-diagonal pairs of one latent draw.
ScalingRun verify_hstar_mean(const std::vector<std::size_t>& n_grid, double alpha, double c,
                             std::size_t samples, std::uint64_t seed, unsigned workers = 0);

/// Norm property sets on random multigraph pairs with multiplicities <= 3:
/// exact jumble norm against the naive enumeration (n <= 8, tolerance
/// 1e-12), and the ordering matrix <= cut <= jumble <= row-sum (n <= 10).
std::vector<TestReport> verify_norms(std::size_t oracle_pairs, std::size_t ordering_pairs,
                                     std::uint64_t seed);

/// max(-1/2, -(alpha - 1)), the leading exponent of E(H*).
double hstar_exponent(double alpha);

// --- Config files and reports ---------------------------------------------

/// Flat "key = value" text with "[section]" headers, one experiment per
/// section. Unknown keys are collected and reported together.
std::vector<ExperimentConfig> parse_experiment_config(const std::string& text);

std::string scaling_csv(const ScalingRun& run);
/// Two columns, log n and log mean, for plotting.
std::string scaling_plot_data(const ScalingRun& run);
nlohmann::json scaling_json(const ScalingRun& run);
nlohmann::json report_json(const TestReport& report);

}  // namespace pagw

#endif  // PAGW_EXPERIMENTS_HPP_
