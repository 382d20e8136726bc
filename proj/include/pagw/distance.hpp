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

// Jumble and cut norm distances between multigraphs on a common vertex set.
//
// With D = A(g) - A(h), the jumble distance is
//
//   (1/n) max_{S,T nonempty} |sum_{i in S, j in T} D_ij| / sqrt(|S| |T|)
//
// and the cut distance drops the sqrt(|S||T|) weight and divides by n^2.
// Both are computed exactly by enumerating S; for a fixed S the best T of
// each size is a prefix of the column scores sorted by value. Loops enter
// the rectangle sums once, as diagonal matrix entries.

#ifndef PAGW_DISTANCE_HPP_
#define PAGW_DISTANCE_HPP_

#include <optional>
#include <string>
#include <utility>

#include "pagw/multigraph.hpp"

namespace pagw {

inline constexpr std::size_t kDefaultExactCap = 16;
inline constexpr std::size_t kNaiveCap = 10;

double jumble_exact(const Multigraph& g, const Multigraph& h,
                    std::size_t cap = kDefaultExactCap);

/// Direct enumeration of all (S, T) pairs. Test oracle only; n <= 10.
double jumble_naive(const Multigraph& g, const Multigraph& h);

/// (1/n) max_i sum_j |A_ij - B_ij|, an upper bound on the jumble distance.
double jumble_rowsum_bound(const Multigraph& g, const Multigraph& h);

double cut_exact(const Multigraph& g, const Multigraph& h, std::size_t cap = kDefaultExactCap);

/// Naive cut distance over all (S, T) pairs. Test oracle only; n <= 10.
double cut_naive(const Multigraph& g, const Multigraph& h);

struct GlobalStats {
  double matrix_stat = 0.0;  // |sum A - sum B| / n^2, the S = T = [n] term
  double edge_stat = 0.0;    // |edges(g) - edges(h)| / n^2
};

GlobalStats global_stats(const Multigraph& g, const Multigraph& h);

struct DistanceReport {
  std::size_t n = 0;
  std::optional<double> jumble_exact;
  double jumble_rowsum_bound = 0.0;
  std::optional<double> cut_exact;
  double global_matrix_stat = 0.0;
  double global_edge_stat = 0.0;
};

/// Every statistic; the exact ones only when n <= cap.
DistanceReport distance_report(const Multigraph& g, const Multigraph& h,
                               std::size_t cap = kDefaultExactCap);

std::string distance_csv_header();
std::string distance_csv_row(const DistanceReport& report);

/// max{alpha - 2, (1 - alpha)/2, -1/2, 4 - 3 alpha}, the exponent of the
/// coupled upper bound for a given alpha in (1, 2).
double beta_exponent(double alpha);

/// Minimiser of beta_exponent over (1, 2): where alpha - 2 meets (1 - alpha)/2.
std::pair<double, double> beta_optimum();

}  // namespace pagw

#endif  // PAGW_DISTANCE_HPP_
