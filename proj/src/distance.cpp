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

#include "pagw/distance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <vector>

#include "pagw/couplings.hpp"
#include "pagw/errors.hpp"

namespace pagw {
namespace {

using Matrix = std::vector<std::int64_t>;

void check_same_size(const Multigraph& g, const Multigraph& h) {
  if (g.size() != h.size()) {
    throw InvalidParameter("graphs differ in vertex count (" + std::to_string(g.size()) + " vs " +
                           std::to_string(h.size()) + ")");
  }
}

void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw CapExceeded(std::string(what) + " needs n <= " + std::to_string(cap) + ", got " +
                      std::to_string(n));
  }
  if (n >= 63) throw CapExceeded("subset enumeration limited to n < 63");
}

Matrix difference(const Multigraph& g, const Multigraph& h) {
  const std::size_t n = g.size();
  Matrix d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i * n + j] = static_cast<std::int64_t>(g(i, j)) - static_cast<std::int64_t>(h(i, j));
    }
  }
  return d;
}

// Visits every nonempty row subset S in Gray-code order with the column
// scores c_j = sum_{i in S} D_ij and |S| kept up to date.
void for_each_row_subset(const Matrix& d, std::size_t n,
                         const std::function<void(const std::vector<std::int64_t>&, std::size_t)>& visit) {
  std::vector<std::int64_t> col(n, 0);
  std::size_t size = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t step = 1; step < limit; ++step) {
    const auto row = static_cast<std::size_t>(std::countr_zero(step));
    gray ^= std::uint64_t{1} << row;
    const bool added = (gray >> row) & 1U;
    const std::int64_t* dr = &d[row * n];
    if (added) {
      for (std::size_t j = 0; j < n; ++j) col[j] += dr[j];
      ++size;
    } else {
      for (std::size_t j = 0; j < n; ++j) col[j] -= dr[j];
      --size;
    }
    visit(col, size);
  }
}

}  // namespace

double jumble_exact(const Multigraph& g, const Multigraph& h, std::size_t cap) {
  check_same_size(g, h);
  const std::size_t n = g.size();
  check_cap(n, cap, "exact jumble norm");
  const Matrix d = difference(g, h);

  // Maximise sum^2 / (s t) to stay in exact integer arithmetic until the end.
  double best = 0.0;
  std::vector<std::int64_t> sorted(n);
  std::vector<std::int64_t> prefix(n + 1);
  for_each_row_subset(d, n, [&](const std::vector<std::int64_t>& col, std::size_t s) {
    sorted = col;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    prefix[0] = 0;
    for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + sorted[j];
    const std::int64_t total = prefix[n];
    for (std::size_t t = 1; t <= n; ++t) {
      const std::int64_t largest = prefix[t];
      const std::int64_t smallest = total - prefix[n - t];
      const auto mag = static_cast<double>(std::max(std::llabs(largest), std::llabs(smallest)));
      best = std::max(best, mag * mag / static_cast<double>(s * t));
    }
  });
  return std::sqrt(best) / static_cast<double>(n);
}

double jumble_naive(const Multigraph& g, const Multigraph& h) {
  check_same_size(g, h);
  const std::size_t n = g.size();
  check_cap(n, kNaiveCap, "naive jumble norm");
  const Matrix d = difference(g, h);
  const std::uint64_t limit = std::uint64_t{1} << n;
  double best = 0.0;
  for (std::uint64_t s_mask = 1; s_mask < limit; ++s_mask) {
    for (std::uint64_t t_mask = 1; t_mask < limit; ++t_mask) {
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!((s_mask >> i) & 1U)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if ((t_mask >> j) & 1U) sum += d[i * n + j];
        }
      }
      const double st = static_cast<double>(std::popcount(s_mask) * std::popcount(t_mask));
      best = std::max(best, std::fabs(static_cast<double>(sum)) / std::sqrt(st));
    }
  }
  return best / static_cast<double>(n);
}

double jumble_rowsum_bound(const Multigraph& g, const Multigraph& h) {
  check_same_size(g, h);
  return static_cast<double>(rowsum_diff(g, h).max) / static_cast<double>(g.size());
}

double cut_exact(const Multigraph& g, const Multigraph& h, std::size_t cap) {
  check_same_size(g, h);
  const std::size_t n = g.size();
  check_cap(n, cap, "exact cut norm");
  const Matrix d = difference(g, h);
  std::int64_t best = 0;
  for_each_row_subset(d, n, [&](const std::vector<std::int64_t>& col, std::size_t) {
    std::int64_t positive = 0, negative = 0;
    for (std::int64_t v : col) {
      if (v > 0) positive += v;
      else negative -= v;
    }
    best = std::max({best, positive, negative});
  });
  const auto nd = static_cast<double>(n);
  return static_cast<double>(best) / (nd * nd);
}

double cut_naive(const Multigraph& g, const Multigraph& h) {
  check_same_size(g, h);
  const std::size_t n = g.size();
  check_cap(n, kNaiveCap, "naive cut norm");
  const Matrix d = difference(g, h);
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::int64_t best = 0;
  for (std::uint64_t s_mask = 1; s_mask < limit; ++s_mask) {
    for (std::uint64_t t_mask = 1; t_mask < limit; ++t_mask) {
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!((s_mask >> i) & 1U)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if ((t_mask >> j) & 1U) sum += d[i * n + j];
        }
      }
      best = std::max<std::int64_t>(best, std::llabs(sum));
    }
  }
  const auto nd = static_cast<double>(n);
  return static_cast<double>(best) / (nd * nd);
}

GlobalStats global_stats(const Multigraph& g, const Multigraph& h) {
  check_same_size(g, h);
  const auto nd = static_cast<double>(g.size());
  const auto absdiff = [](std::uint64_t a, std::uint64_t b) {
    return static_cast<double>(a > b ? a - b : b - a);
  };
  return {absdiff(g.total_matrix_sum(), h.total_matrix_sum()) / (nd * nd),
          absdiff(g.edge_count(), h.edge_count()) / (nd * nd)};
}

DistanceReport distance_report(const Multigraph& g, const Multigraph& h, std::size_t cap) {
  check_same_size(g, h);
  DistanceReport report;
  report.n = g.size();
  if (report.n <= cap) {
    report.jumble_exact = jumble_exact(g, h, cap);
    report.cut_exact = cut_exact(g, h, cap);
  }
  report.jumble_rowsum_bound = jumble_rowsum_bound(g, h);
  const GlobalStats stats = global_stats(g, h);
  report.global_matrix_stat = stats.matrix_stat;
  report.global_edge_stat = stats.edge_stat;
  return report;
}

std::string distance_csv_header() {
  return "n,jumble_exact,rowsum_bound,cut_exact,matrix_stat,edge_stat";
}

std::string distance_csv_row(const DistanceReport& report) {
  std::ostringstream row;
  row << report.n << ',';
  if (report.jumble_exact) row << format_real(*report.jumble_exact);
  row << ',' << format_real(report.jumble_rowsum_bound) << ',';
  if (report.cut_exact) row << format_real(*report.cut_exact);
  row << ',' << format_real(report.global_matrix_stat) << ','
      << format_real(report.global_edge_stat);
  return row.str();
}

double beta_exponent(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw InvalidParameter("alpha must lie in (1, 2), got " + std::to_string(alpha));
  }
  return std::max({alpha - 2.0, (1.0 - alpha) / 2.0, -0.5, 4.0 - 3.0 * alpha});
}

std::pair<double, double> beta_optimum() {
  // alpha - 2 = (1 - alpha) / 2  <=>  alpha = 5/3. The other two pieces are
  // below -1/3 there, and the increasing piece alpha - 2 rules out anything
  // to the right while (1 - alpha)/2 and 4 - 3 alpha rule out the left.
  return {5.0 / 3.0, -1.0 / 3.0};
}

}  // namespace pagw
