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

#include "pagw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/special_functions/gamma.hpp>

#include "pagw/errors.hpp"

namespace pagw {
namespace {

constexpr double kMinExpected = 5.0;

}  // namespace

double chi_square_pvalue(double stat, int dof) {
  if (dof <= 0 || stat <= 0.0) return 1.0;
  if (!std::isfinite(stat)) return 0.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * stat);
}

ChiSquareResult chi_square_gof(std::span<const std::int64_t> observed,
                               std::span<const double> probabilities) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw InvalidParameter("observed and expected cells differ in length");
  }
  double total = 0.0;
  for (std::int64_t o : observed) total += static_cast<double>(o);
  double prob_total = 0.0;
  for (double p : probabilities) prob_total += p;

  std::vector<std::pair<double, double>> cells;  // (observed, expected)
  double obs = 0.0, exp = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    obs += static_cast<double>(observed[k]);
    exp += total * probabilities[k] / prob_total;
    if (exp >= kMinExpected) {
      cells.emplace_back(obs, exp);
      obs = exp = 0.0;
    }
  }
  if (exp > 0.0 || obs > 0.0) {
    if (cells.empty()) {
      cells.emplace_back(obs, exp);
    } else {
      cells.back().first += obs;
      cells.back().second += exp;
    }
  }
  ChiSquareResult out;
  for (const auto& [o, e] : cells) {
    if (e > 0.0) out.statistic += (o - e) * (o - e) / e;
  }
  out.dof = static_cast<int>(cells.size()) - 1;
  out.p_value = chi_square_pvalue(out.statistic, out.dof);
  return out;
}

ChiSquareResult chi_square_two_sample(std::span<const std::int64_t> a,
                                      std::span<const std::int64_t> b) {
  if (a.empty() || b.empty()) throw InsufficientData("two-sample test needs two nonempty samples");
  std::map<std::int64_t, std::pair<double, double>> hist;
  for (std::int64_t v : a) hist[v].first += 1.0;
  for (std::int64_t v : b) hist[v].second += 1.0;

  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  const double share_a = na / (na + nb);
  std::vector<std::pair<double, double>> bins;
  double ca = 0.0, cb = 0.0;
  for (const auto& [value, counts] : hist) {
    ca += counts.first;
    cb += counts.second;
    const double pooled = ca + cb;
    if (std::min(pooled * share_a, pooled * (1.0 - share_a)) >= kMinExpected) {
      bins.emplace_back(ca, cb);
      ca = cb = 0.0;
    }
  }
  if (ca + cb > 0.0) {
    if (bins.empty()) {
      bins.emplace_back(ca, cb);
    } else {
      bins.back().first += ca;
      bins.back().second += cb;
    }
  }
  ChiSquareResult out;
  for (const auto& [x, y] : bins) {
    const double pooled = x + y;
    const double ea = pooled * share_a;
    const double eb = pooled * (1.0 - share_a);
    out.statistic += (x - ea) * (x - ea) / ea + (y - eb) * (y - eb) / eb;
  }
  out.dof = static_cast<int>(bins.size()) - 1;
  out.p_value = chi_square_pvalue(out.statistic, out.dof);
  return out;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InsufficientData("two-sample test needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto nx = static_cast<double>(x.size());
  const auto ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = std::sqrt(nx * ny / (nx + ny));
  const double lambda = (ne + 0.12 + 0.11 / ne) * d;
  // Kolmogorov distribution tail, 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
  double p = 0.0;
  if (lambda < 1e-3) {
    p = 1.0;
  } else {
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
      const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
      p += term;
      if (std::fabs(term) < 1e-12) break;
      sign = -sign;
    }
    p = std::clamp(2.0 * p, 0.0, 1.0);
  }
  return {d, p};
}

SlopeFit fit_slope(std::span<const std::pair<double, double>> points) {
  std::vector<std::pair<double, double>> logs;
  for (const auto& [n, mean] : points) {
    if (n > 0.0 && mean > 0.0) logs.emplace_back(std::log(n), std::log(mean));
  }
  if (logs.size() < 2) throw InsufficientData("slope fit needs at least two positive means");
  const auto m = static_cast<double>(logs.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : logs) {
    sx += x;
    sy += y;
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw InsufficientData("slope fit needs at least two distinct n");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.points = logs.size();
  return fit;
}

MeanStderr mean_stderr(std::span<const double> values) {
  if (values.empty()) return {};
  const auto m = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / m;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (m - 1.0)) / std::sqrt(m)};
}

}  // namespace pagw
