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

// Standalone generators for the seven random multigraph models linking the
// dense preferential attachment graph (model 1) to the W-random graph of the
// Poisson graphon (models 6 and 7). Each generator draws all of its own
// randomness from the stream it is given; the coupled versions live in
// couplings.hpp.
//
//   1  Polya urn run for floor(c n^2) steps, consecutive choices paired.
//   2  model 1 with the edges of the first r steps removed.
//   3  after r urn steps, choices are i.i.d. from the frozen proportions R*.
//   4  independent Poisson multiplicities with rates c n^2 R*_i R*_j.
//   5  model 4 without the truncation at r > floor(c n^2).
//   6  Exp(1) vertex weights xi, Poisson multiplicities c xi_i xi_j, loops.
//   7  model 6 without loops.
//
// r is the warm-up length sum_i ceil(xi_i n^(alpha-1)) - n, which is
// negative binomial with parameters n and 1 - exp(-n^(1-alpha)).

#ifndef PAGW_MODELS_HPP_
#define PAGW_MODELS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "pagw/multigraph.hpp"
#include "pagw/rand_core.hpp"
#include "pagw/urn.hpp"

namespace pagw {

struct ModelParams {
  std::size_t n = 1;
  double c = 1.0;
  std::optional<double> alpha;

  /// Throws InvalidParameter unless n >= 1, c > 0 and, when required,
  /// 1 < alpha < 2.
  void validate(bool needs_alpha) const;

  /// floor(c n^2), the number of urn steps.
  std::int64_t urn_steps() const;

  /// floor(floor(c n^2) / 2), the deterministic edge count of model 1.
  std::int64_t pag_edges() const { return urn_steps() / 2; }

  /// c n^2 as a real number, the total Poisson rate scale of models 4 and 5.
  double rate_scale() const;

  /// n^(alpha - 1), the scale of the rounded exponentials.
  double geometric_scale() const;
};

/// Shared randomness of models 2 to 6.
struct LatentState {
  std::vector<double> xi;        // Exp(1) vertex weights
  std::vector<std::int64_t> C;   // ceil(xi_i * n^(alpha-1))
  std::int64_t r = 0;            // sum(C) - n
  std::vector<double> R_star;    // C_i / sum(C)
  UrnTrajectory prefix;          // first r urn steps, conditioned on final counts C
};

/// Draws xi, C, r and R*. When `with_prefix` is set, also draws the first r
/// urn choices conditioned on ending at counts C.
LatentState sample_latent(const ModelParams& p, Stream& s, bool with_prefix = true);

/// Number of edges k in 1..floor(steps/2) with 2k - 1 > r (both urn draws
/// strictly after step r).
std::int64_t kept_pair_count(std::int64_t r, std::int64_t steps);

/// First pair index k with 2k - 1 > r.
std::int64_t first_kept_pair(std::int64_t r);

/// Pair-label draw shared by models 3 and 4: two independent draws from R*
/// give the unordered pair {i, j}.
std::pair<Vertex, Vertex> sample_pair(const CategoricalTable& table, Stream& s);

/// Z_ij ~ Pois(c n^2 R_i R_j) for i < j and Z_ii ~ Pois(c n^2 R_i^2 / 2).
Multigraph poisson_graph_from_proportions(const ModelParams& p,
                                          const std::vector<double>& R_star, Stream& s);

Multigraph gen_model1(const ModelParams& p, Stream& s);
Multigraph gen_model2(const ModelParams& p, Stream& s);
Multigraph gen_model3(const ModelParams& p, Stream& s);
Multigraph gen_model4(const ModelParams& p, Stream& s);
Multigraph gen_model5(const ModelParams& p, Stream& s);
Multigraph gen_model6(const ModelParams& p, Stream& s);
Multigraph gen_model7(const ModelParams& p, Stream& s);

/// Dispatch on model number 1..7.
Multigraph gen_model(int model, const ModelParams& p, Stream& s);

/// True for the models whose definition involves alpha.
bool model_needs_alpha(int model);

}  // namespace pagw

#endif  // PAGW_MODELS_HPP_
