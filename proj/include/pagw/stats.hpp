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

// Statistical tests and regression used to check the generators.

#ifndef PAGW_STATS_HPP_
#define PAGW_STATS_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pagw {

/// Upper tail P(X >= stat) of the chi-square distribution with `dof` degrees
/// of freedom, via the regularised incomplete gamma function.
double chi_square_pvalue(double stat, int dof);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Goodness of fit of observed cell counts against cell probabilities.
/// Adjacent cells are merged until every expected count is at least 5.
ChiSquareResult chi_square_gof(std::span<const std::int64_t> observed,
                               std::span<const double> probabilities);

/// Two-sample homogeneity test on integer-valued samples. Values are binned
/// in increasing order, merging neighbours until both expected counts in
/// every bin reach 5.
ChiSquareResult chi_square_two_sample(std::span<const std::int64_t> a,
                                      std::span<const std::int64_t> b);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Least squares line through (log n, log mean), skipping non-positive means.
SlopeFit fit_slope(std::span<const std::pair<double, double>> points);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(count)
};

MeanStderr mean_stderr(std::span<const double> values);

}  // namespace pagw

#endif  // PAGW_STATS_HPP_
