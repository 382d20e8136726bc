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

// Couplings between consecutive models and the composed chain that realises
// all seven graphs on one probability space.
//
// The chain is built in model order, each graph from its predecessor plus
// fresh randomness:
//
//   1 -> 2  drop the pairs whose urn draws fall in the first r steps
//   2 -> 3  per-step maximal coupling of the urn proportions with R*
//   3 -> 4  both read prefixes of one i.i.d. pair-label sequence; model 3
//           takes the first M3 labels, model 4 the first N4 ~ Pois(c n^2/2)
//   4 -> 5  identical when r <= floor(c n^2), fresh otherwise
//   5 -> 6  Poisson splitting, sampled as Y given Z
//   6 -> 7  delete the loops

#ifndef PAGW_COUPLINGS_HPP_
#define PAGW_COUPLINGS_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pagw/models.hpp"
#include "pagw/multigraph.hpp"
#include "pagw/rand_core.hpp"

namespace pagw {

/// (i, j) with i ~ p, j ~ q and P(i != j) equal to the total variation
/// distance. With probability sum_k min(p_k, q_k) one index is drawn from the
/// normalised overlap and returned twice; otherwise i and j come
/// independently from the normalised excesses (p - q)+ and (q - p)+.
std::pair<std::size_t, std::size_t> maximal_categorical_coupling(std::span<const double> pw,
                                                                 std::span<const double> qw,
                                                                 Stream& s);

/// Two Poisson variables sharing a common part.
struct SplitPair {
  std::int64_t Y = 0;       // Pois(lambda_a)
  std::int64_t Z = 0;       // Pois(lambda_b)
  std::int64_t H = 0;       // common part, Pois(min)
  std::int64_t H_star = 0;  // difference part, Pois(|lambda_a - lambda_b|)
  double mu = 0.0;
  double mu_star = 0.0;
};

/// H ~ Pois(min), H* ~ Pois(|a - b|) independent; the larger side gets H + H*,
/// the other H. So |Y - Z| = H*.
SplitPair poisson_splitting(double lambda_a, double lambda_b, Stream& s);

/// Draws Y from the conditional law of poisson_splitting's Y given Z = z:
/// z + Pois(a - b) when a >= b, Binomial(z, a / b) otherwise.
std::int64_t poisson_splitting_given(double lambda_a, double lambda_b, std::int64_t z,
                                     Stream& s);

/// Test hooks for negative controls. Never set in production runs.
struct FaultInjection {
  // The 1 -> 2 deletion keeps one pair too many.
  bool kept_edge_off_by_one = false;
};

struct CoupledRealization {
  ModelParams params;
  LatentState latent;
  std::int64_t n4 = 0;       // Poisson event count of model 4
  std::int64_t m3 = 0;       // kept pair count shared by models 2 and 3
  std::int64_t mismatches = 0;  // 2 -> 3 steps where the coupled choices differ
  std::vector<Multigraph> graphs;  // graphs[k - 1] is model k

  const Multigraph& graph(int model) const { return graphs.at(static_cast<std::size_t>(model - 1)); }
  bool truncated() const { return latent.r > params.urn_steps(); }
};

CoupledRealization build_chain(const ModelParams& p, Stream& s, FaultInjection fault = {});

struct RowSumDiff {
  std::uint64_t max = 0;
  std::vector<std::uint64_t> rows;  // sum_j |A_ij - B_ij| per vertex
};

RowSumDiff rowsum_diff(const Multigraph& a, const Multigraph& b);

}  // namespace pagw

#endif  // PAGW_COUPLINGS_HPP_
