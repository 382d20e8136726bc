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

#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "pagw/errors.hpp"
#include "pagw/models.hpp"
#include "pagw/stats.hpp"

using namespace pagw;

namespace {

double log_choose(double a, double b) {
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

// P(r = k) for r = sum of n geometrics on {1, 2, ...} minus n, success
// probability p: the negative binomial C(k + n - 1, k) p^n (1 - p)^k.
double nb_pmf(std::int64_t k, std::size_t n, double p) {
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return std::exp(log_choose(kd + nd - 1.0, kd) + nd * std::log(p) + kd * std::log1p(-p));
}

double success_probability(std::size_t n, double alpha) {
  return 1.0 - std::exp(-std::pow(static_cast<double>(n), 1.0 - alpha));
}

std::vector<double> poisson_cells(double lambda, std::size_t cells) {
  std::vector<double> p(cells);
  double tail = 1.0;
  for (std::size_t k = 0; k + 1 < cells; ++k) {
    p[k] = std::exp(static_cast<double>(k) * std::log(lambda) - lambda -
                    std::lgamma(static_cast<double>(k) + 1.0));
    tail -= p[k];
  }
  p.back() = std::max(tail, 0.0);
  return p;
}

template <typename F>
MeanStderr sample_mean(std::size_t reps, F&& f) {
  std::vector<double> v(reps);
  for (std::size_t r = 0; r < reps; ++r) v[r] = f(r);
  return mean_stderr(v);
}

}  // namespace

TEST_CASE("parameter validation") {
  Stream s({1, 0, "models"});
  CHECK_THROWS_AS(gen_model(2, ModelParams{4, 1.0, std::nullopt}, s), InvalidParameter);
  CHECK_THROWS_AS(gen_model(5, ModelParams{4, 1.0, 2.0}, s), InvalidParameter);
  CHECK_THROWS_AS(gen_model(1, ModelParams{4, 0.0, std::nullopt}, s), InvalidParameter);
  CHECK_THROWS_AS(gen_model(8, ModelParams{4, 1.0, 1.5}, s), InvalidParameter);
  CHECK_NOTHROW(gen_model(6, ModelParams{4, 1.0, std::nullopt}, s));
  for (int m = 1; m <= 7; ++m) CHECK(model_needs_alpha(m) == (m >= 2 && m <= 5));
  CHECK(ModelParams{10, 0.5, std::nullopt}.urn_steps() == 50);
  CHECK(ModelParams{10, 0.5, std::nullopt}.pag_edges() == 25);
  CHECK(ModelParams{3, 0.5, std::nullopt}.pag_edges() == 2);  // floor(4.5) = 4 steps
}

TEST_CASE("model 1 has a deterministic edge count") {
  Stream s({1, 1, "models"});
  CHECK(gen_model1(ModelParams{10, 0.5, std::nullopt}, s).edge_count() == 25);
  CHECK(gen_model1(ModelParams{7, 1.3, std::nullopt}, s).edge_count() == 31);  // floor(63.7) = 63
}

TEST_CASE("model 1 at n = 2 matches the enumerated urn law") {
  // Four urn steps give two edges. Enumerate the 16 choice sequences and
  // map each to its (loops at 0, edges 01, loops at 1) signature.
  std::map<std::tuple<int, int, int>, double> law;
  for (int code = 0; code < 16; ++code) {
    int seq[4];
    for (int k = 0; k < 4; ++k) seq[k] = (code >> (3 - k)) & 1;
    double counts[2] = {1.0, 1.0};
    double p = 1.0;
    for (int k = 0; k < 4; ++k) {
      p *= counts[seq[k]] / (counts[0] + counts[1]);
      counts[seq[k]] += 1.0;
    }
    int a00 = 0, a01 = 0, a11 = 0;
    for (int e = 0; e < 2; ++e) {
      const int x = seq[2 * e], y = seq[2 * e + 1];
      if (x != y) ++a01;
      else if (x == 0) ++a00;
      else ++a11;
    }
    law[{a00, a01, a11}] += p;
  }
  std::map<std::tuple<int, int, int>, std::int64_t> seen;
  for (std::uint64_t rep = 0; rep < 60000; ++rep) {
    Stream s({2, rep, "model1-n2"});
    const Multigraph g = gen_model1(ModelParams{2, 1.0, std::nullopt}, s);
    REQUIRE(g.edge_count() == 2);
    ++seen[{static_cast<int>(g(0, 0)), static_cast<int>(g(0, 1)), static_cast<int>(g(1, 1))}];
  }
  std::vector<std::int64_t> obs;
  std::vector<double> probs;
  for (const auto& [key, p] : law) {
    obs.push_back(seen[key]);
    probs.push_back(p);
  }
  CHECK(seen.size() == law.size());
  CHECK(chi_square_gof(obs, probs).p_value > 1e-3);
}

TEST_CASE("latent r is negative binomial") {
  const std::size_t n = 4;
  const double alpha = 1.5;
  const double p = success_probability(n, alpha);
  const double expected_mean = static_cast<double>(n) * (1.0 / p - 1.0);
  const std::size_t cells = 80;
  std::vector<double> probs(cells);
  double tail = 1.0;
  for (std::size_t k = 0; k + 1 < cells; ++k) {
    probs[k] = nb_pmf(static_cast<std::int64_t>(k), n, p);
    tail -= probs[k];
  }
  probs.back() = std::max(tail, 0.0);
  std::vector<std::int64_t> counts(cells, 0);
  std::vector<double> rs;
  for (std::uint64_t rep = 0; rep < 40000; ++rep) {
    Stream s({3, rep, "latent"});
    const LatentState latent = sample_latent(ModelParams{n, 1.0, alpha}, s, rep < 200);
    std::int64_t sum = 0;
    double rsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(latent.C[i] == static_cast<std::int64_t>(std::ceil(latent.xi[i] * std::pow(4.0, 0.5))));
      sum += latent.C[i];
      rsum += latent.R_star[i];
    }
    REQUIRE(latent.r == sum - static_cast<std::int64_t>(n));
    REQUIRE(rsum == doctest::Approx(1.0).epsilon(1e-12));
    if (rep < 200) REQUIRE(latent.prefix.replay_counts(n) == latent.C);
    ++counts[std::min<std::size_t>(static_cast<std::size_t>(latent.r), cells - 1)];
    rs.push_back(static_cast<double>(latent.r));
  }
  const MeanStderr ms = mean_stderr(rs);
  CHECK(std::fabs(ms.mean - expected_mean) < 5.0 * ms.stderr_);
  CHECK(chi_square_gof(counts, probs).p_value > 1e-3);
}

TEST_CASE("kept pair arithmetic") {
  // Pair k uses steps 2k - 1 and 2k; it survives iff 2k - 1 > r.
  CHECK(first_kept_pair(0) == 1);
  CHECK(first_kept_pair(1) == 2);
  CHECK(first_kept_pair(2) == 2);
  CHECK(first_kept_pair(3) == 3);
  for (std::int64_t r = 0; r < 30; ++r) {
    for (std::int64_t steps = 0; steps < 30; ++steps) {
      std::int64_t brute = 0;
      for (std::int64_t k = 1; k <= steps / 2; ++k) brute += (2 * k - 1 > r);
      CHECK(kept_pair_count(r, steps) == brute);
    }
  }
}

TEST_CASE("model 2 edge count follows the negative binomial cutoff") {
  const ModelParams params{3, 1.0, 1.5};  // 9 steps, 4 pairs
  const double p = success_probability(3, 1.5);
  std::vector<double> probs(5, 0.0);
  double below = 0.0;
  for (std::int64_t r = 0; r <= 9; ++r) {
    probs[static_cast<std::size_t>(kept_pair_count(r, 9))] += nb_pmf(r, 3, p);
    below += nb_pmf(r, 3, p);
  }
  probs[0] += 1.0 - below;  // r > 9 gives the empty graph
  std::vector<std::int64_t> counts(5, 0);
  for (std::uint64_t rep = 0; rep < 30000; ++rep) {
    Stream s({4, rep, "model2"});
    ++counts[gen_model2(params, s).edge_count()];
  }
  CHECK(chi_square_gof(counts, probs).p_value > 1e-3);
}

TEST_CASE("pair labels are products of the proportions") {
  const std::vector<double> R{0.5, 0.3, 0.2};
  const CategoricalTable table(R);
  std::vector<double> probs;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) probs.push_back(i == j ? R[i] * R[i] : 2.0 * R[i] * R[j]);
  }
  std::vector<std::int64_t> counts(6, 0);
  Stream s({5, 0, "pairs"});
  for (int k = 0; k < 60000; ++k) {
    auto [a, b] = sample_pair(table, s);
    if (a > b) std::swap(a, b);
    const std::size_t idx = a == 0 ? b : (a == 1 ? 2 + b : 5);
    ++counts[idx];
  }
  CHECK(chi_square_gof(counts, probs).p_value > 1e-3);
}

TEST_CASE("model 3 edge count equals model 2's") {
  // Both keep the same number of pairs given r, so the laws coincide.
  std::vector<std::int64_t> a, b;
  const ModelParams params{5, 0.8, 1.4};
  for (std::uint64_t rep = 0; rep < 20000; ++rep) {
    Stream s2({6, rep, "m2"});
    Stream s3({6, rep, "m3"});
    a.push_back(static_cast<std::int64_t>(gen_model2(params, s2).edge_count()));
    b.push_back(static_cast<std::int64_t>(gen_model3(params, s3).edge_count()));
  }
  CHECK(chi_square_two_sample(a, b).p_value > 1e-3);
}

TEST_CASE("model 5 edge count is Poisson(c n^2 / 2)") {
  // sum_{i<j} R_i R_j + sum_i R_i^2 / 2 = (sum R)^2 / 2 = 1/2 for every R.
  const ModelParams params{6, 0.7, 1.5};
  const double lambda = 0.7 * 36 / 2.0;
  const std::size_t cells = 45;
  std::vector<std::int64_t> counts(cells, 0);
  for (std::uint64_t rep = 0; rep < 30000; ++rep) {
    Stream s({7, rep, "model5"});
    ++counts[std::min<std::size_t>(gen_model5(params, s).edge_count(), cells - 1)];
  }
  CHECK(chi_square_gof(counts, poisson_cells(lambda, cells)).p_value > 1e-3);
}

TEST_CASE("model 4 is model 5 with mass moved to the empty graph") {
  const ModelParams params{3, 1.0, 1.8};  // 9 steps, r often exceeds 9
  const double p = success_probability(3, 1.8);
  double keep = 0.0;
  for (std::int64_t r = 0; r <= 9; ++r) keep += nb_pmf(r, 3, p);
  REQUIRE(keep < 0.9);
  const std::size_t cells = 20;
  std::vector<double> probs = poisson_cells(4.5, cells);
  for (double& q : probs) q *= keep;
  probs[0] += 1.0 - keep;
  std::vector<std::int64_t> counts(cells, 0);
  for (std::uint64_t rep = 0; rep < 30000; ++rep) {
    Stream s({8, rep, "model4"});
    ++counts[std::min<std::size_t>(gen_model4(params, s).edge_count(), cells - 1)];
  }
  CHECK(chi_square_gof(counts, probs).p_value > 1e-3);
}

TEST_CASE("W-random edge count means") {
  const std::size_t n = 20;
  const double c = 0.3;
  const ModelParams params{n, c, std::nullopt};
  const double pairs = c * n * (n - 1) / 2.0;
  // E xi^2 = 2, so each loop has mean c.
  const MeanStderr m6 = sample_mean(20000, [&](std::size_t rep) {
    Stream s({9, rep, "model6"});
    return static_cast<double>(gen_model6(params, s).edge_count());
  });
  const MeanStderr m7 = sample_mean(20000, [&](std::size_t rep) {
    Stream s({9, rep, "model7"});
    return static_cast<double>(gen_model7(params, s).edge_count());
  });
  CHECK(std::fabs(m6.mean - (pairs + c * n)) < 5.0 * m6.stderr_);
  CHECK(std::fabs(m7.mean - pairs) < 5.0 * m7.stderr_);
}

TEST_CASE("model 7 is model 6 without loops on a shared stream") {
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    Stream a({10, rep, "w"});
    Stream b({10, rep, "w"});
    Multigraph g6 = gen_model6(ModelParams{12, 1.5, std::nullopt}, a);
    const Multigraph g7 = gen_model7(ModelParams{12, 1.5, std::nullopt}, b);
    g6.clear_diagonal();
    CHECK(g6 == g7);
  }
  Stream s({10, 0, "w1"});
  CHECK(gen_model7(ModelParams{1, 2.0, std::nullopt}, s).edge_count() == 0);
}

TEST_CASE("W-random graphs extend vertex by vertex") {
  for (std::uint64_t rep = 0; rep < 10; ++rep) {
    Stream a({11, rep, "extend"});
    Stream b({11, rep, "extend"});
    const Multigraph small = gen_model6(ModelParams{9, 0.8, std::nullopt}, a);
    const Multigraph large = gen_model6(ModelParams{10, 0.8, std::nullopt}, b);
    for (Vertex i = 0; i < 9; ++i) {
      for (Vertex j = 0; j < 9; ++j) REQUIRE(small(i, j) == large(i, j));
    }
  }
}

TEST_CASE("models 5 and 6 agree in first moment") {
  const ModelParams params{64, 1.0, 5.0 / 3.0};
  const MeanStderr m5 = sample_mean(300, [&](std::size_t rep) {
    Stream s({12, rep, "m5"});
    return static_cast<double>(gen_model5(params, s).edge_count());
  });
  const MeanStderr m6 = sample_mean(300, [&](std::size_t rep) {
    Stream s({12, rep, "m6"});
    return static_cast<double>(gen_model6(params, s).edge_count());
  });
  CHECK(std::fabs(m5.mean - m6.mean) / m6.mean < 0.05);
}
