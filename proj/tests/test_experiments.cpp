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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "pagw/errors.hpp"
#include "pagw/experiments.hpp"
#include "pagw/manifest.hpp"

using namespace pagw;

TEST_CASE("model pair and statistic parsing") {
  CHECK(parse_model_pair("1-7") == ModelPair{1, 7});
  CHECK(parse_model_pair("6,7") == ModelPair{6, 7});
  CHECK(to_string(ModelPair{5, 6}) == "5-6");
  CHECK_THROWS_AS(parse_model_pair("3"), ParseError);
  CHECK_THROWS_AS(parse_model_pair("0-7"), ParseError);
  CHECK_THROWS_AS(parse_model_pair("4-4"), ParseError);
  CHECK(parse_statistic("exact") == Statistic::exact);
  CHECK(to_string(parse_statistic("edge_stat")) == "edge_stat");
  CHECK_THROWS_AS(parse_statistic("median"), ParseError);
}

TEST_CASE("config files") {
  const std::string text =
      "# two experiments\n"
      "[loops]\n"
      "c = 1\n"
      "n_grid = 64, 128,256\n"
      "replications = 20\n"
      "run_seed = 5\n"
      "pair = 6-7\n"
      "\n"
      "[chain]\n"
      "alpha = 1.6666666666666667\n"
      "c = 0.5\n"
      "n_grid = 8,16\n"
      "statistic = exact\n"
      "workers = 2\n";
  const auto cfgs = parse_experiment_config(text);
  REQUIRE(cfgs.size() == 2);
  CHECK(cfgs[0].name == "loops");
  CHECK(cfgs[0].n_grid == std::vector<std::size_t>{64, 128, 256});
  CHECK(cfgs[0].replications == 20);
  CHECK(cfgs[0].run_seed == 5);
  CHECK(cfgs[0].pair == ModelPair{6, 7});
  CHECK(cfgs[1].statistic == Statistic::exact);
  CHECK(cfgs[1].workers == 2);
  CHECK(cfgs[1].c == 0.5);
  CHECK_NOTHROW(cfgs[0].validate());

  try {
    parse_experiment_config("[x]\nc = 1\nbogus = 2\nother = 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bogus") != std::string::npos);
    CHECK(msg.find("other") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_experiment_config("c = abc\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config("[x\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config("no equals sign\n"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config(""), ParseError);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.n_grid = {8, 16};
  cfg.replications = 1;
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
  cfg.replications = 2;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_grid = {16, 8};
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
  cfg.n_grid = {8, 32};
  cfg.statistic = Statistic::exact;
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
  cfg.n_grid = {};
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hits(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 100);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("scaling runs do not depend on the worker count") {
  ExperimentConfig cfg;
  cfg.name = "det";
  cfg.alpha = 5.0 / 3.0;
  cfg.c = 0.5;
  cfg.n_grid = {8, 16, 32};
  cfg.replications = 12;
  cfg.run_seed = 3;
  cfg.pair = {1, 7};
  cfg.workers = 1;
  const ScalingRun a = run_scaling(cfg);
  cfg.workers = 3;
  const ScalingRun b = run_scaling(cfg);
  CHECK(scaling_csv(a) == scaling_csv(b));
  CHECK(scaling_json(a).dump() != "");
  CHECK(a.points.size() == 3);
  CHECK(a.fit.points == 3);

  cfg.statistic = Statistic::exact;
  cfg.n_grid = {4, 8};
  const ScalingRun exact = run_scaling(cfg);
  CHECK(exact.points[0].mean > 0.0);
}

TEST_CASE("scaling output formats") {
  ScalingRun run;
  run.points = {{8, 0.5, 0.1, 10}, {16, 0.25, 0.05, 10}};
  run.fit = {-1.0, 0.0, 1.0, 2};
  CHECK(scaling_csv(run) == "n,mean,stderr,replications\n8,0.5,0.1,10\n16,0.25,0.05,10\n");
  const std::string plot = scaling_plot_data(run);
  CHECK(plot.rfind("# log_n log_mean\n", 0) == 0);
  CHECK(std::count(plot.begin(), plot.end(), '\n') == 3);
  const auto j = scaling_json(run);
  CHECK(j["fit"]["slope"] == -1.0);
  CHECK(j["points"].size() == 2);
}

TEST_CASE("monotonicity within standard errors") {
  ScalingRun run;
  run.points = {{8, 1.0, 0.1, 10}, {16, 1.2, 0.1, 10}};
  CHECK(is_nonincreasing_within(run, 2.0));  // rise 0.2 < 2 * sqrt(0.02)
  run.points[1].mean = 1.4;
  CHECK_FALSE(is_nonincreasing_within(run, 2.0));
}

TEST_CASE("bonferroni") {
  std::vector<TestReport> reports(4);
  reports[0].p_value = 0.01;
  reports[1].p_value = 2e-4;
  reports[2].p_value = 4e-4;
  reports[3].pass = true;  // threshold check without a p-value is left alone
  apply_bonferroni(reports);
  CHECK(reports[0].pass);
  CHECK_FALSE(reports[1].pass);  // 2e-4 * 3 < 1e-3
  CHECK(reports[2].pass);        // 4e-4 * 3 > 1e-3
  CHECK(reports[3].pass);
  CHECK_FALSE(all_pass(reports));
  CHECK(report_json(reports[0])["p_value"] == 0.01);
  CHECK(report_json(reports[3])["p_value"].is_null());
}

TEST_CASE("urn warm-up check and its negative control, small scale") {
  const auto ok = verify_lemma3(3, 1.5, 20000, 11, 0, 1);
  CHECK(all_pass(ok));
  const auto bad = verify_lemma3(3, 1.5, 20000, 11, 1, 1);
  for (const auto& r : bad) CHECK(*r.p_value < kNegativeControlThreshold);
}

TEST_CASE("lower bounds and H* at small scale") {
  const auto lb = verify_lower_bounds(30, 1.0, 500, 13, 1);
  REQUIRE(lb.size() == 2);
  CHECK(all_pass(lb));
  CHECK(lb[0].threshold == doctest::Approx(std::exp(-2.0) * std::sqrt(0.5) * 30));
  CHECK(lb[1].threshold == doctest::Approx(15.0));  // m = 450, c n (n-1) / 2 = 435

  CHECK(hstar_exponent(5.0 / 3.0) == -0.5);
  CHECK(hstar_exponent(1.25) == -0.25);
  const ScalingRun h = verify_hstar_mean({8, 16}, 5.0 / 3.0, 1.0, 20, 17, 1);
  CHECK(h.points.size() == 2);
  CHECK(h.points[0].mean > 0.0);
}

TEST_CASE("standalone negative control separates models 6 and 7") {
  const TestReport r = compare_standalone_edge_counts(6, 7, 4, 1.5, 2.0, 20000, 19, 1);
  CHECK(*r.p_value < kNegativeControlThreshold);
  const TestReport same = compare_standalone_edge_counts(5, 5, 8, 1.5, 1.0, 4000, 19, 1);
  CHECK(*same.p_value > 1e-3);
}

TEST_CASE("manifest and sidecar round trips") {
  RunManifest m;
  m.command = "gen";
  m.run_seed = 9;
  m.set("model", "4");
  m.set("n", "10");
  m.set("model", "5");
  m.artifacts = {"out.graph"};
  m.duration_seconds = 0.25;
  const RunManifest back = parse_manifest(m.to_text());
  CHECK(back.command == "gen");
  CHECK(back.run_seed == 9);
  CHECK(back.params.size() == 2);
  CHECK(back.params[0].second == "5");
  CHECK(back.artifacts == m.artifacts);
  CHECK(back.duration_seconds == 0.25);
  CHECK(back.to_text() == m.to_text());
  CHECK_THROWS_AS(parse_manifest("nonsense\n"), ParseError);

  Stream s({23, 0, "sidecar"});
  const LatentState latent = sample_latent(ModelParams{6, 1.0, 1.5}, s, false);
  const SidecarRecord rec = parse_latent_sidecar(latent_sidecar(latent));
  CHECK(rec.xi == latent.xi);
  CHECK(rec.C == latent.C);
  CHECK(rec.r == latent.r);
  CHECK_THROWS_AS(parse_latent_sidecar("n 2\nr 0\n0 1.0 1\n"), ParseError);
}
