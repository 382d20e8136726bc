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

#include "pagw/couplings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "pagw/errors.hpp"

namespace pagw {
namespace {

std::vector<double> normalized(std::span<const double> w, const char* name) {
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InvalidParameter(std::string(name) + " has a negative or non-finite weight");
    }
    total += x;
  }
  if (!(total > 0.0)) throw InvalidParameter(std::string(name) + " sums to zero");
  std::vector<double> out(w.begin(), w.end());
  for (double& x : out) x /= total;
  return out;
}

void check_rates(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidParameter("poisson splitting needs finite non-negative rates");
  }
}

}  // namespace

std::pair<std::size_t, std::size_t> maximal_categorical_coupling(std::span<const double> pw,
                                                                 std::span<const double> qw,
                                                                 Stream& s) {
  if (pw.size() != qw.size()) throw InvalidParameter("coupled distributions differ in length");
  const std::vector<double> p = normalized(pw, "first distribution");
  const std::vector<double> q = normalized(qw, "second distribution");

  const std::size_t n = p.size();
  std::vector<double> overlap(n), p_excess(n), q_excess(n);
  double overlap_mass = 0.0, p_mass = 0.0, q_mass = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    overlap[k] = std::min(p[k], q[k]);
    p_excess[k] = p[k] - overlap[k];
    q_excess[k] = q[k] - overlap[k];
    overlap_mass += overlap[k];
    p_mass += p_excess[k];
    q_mass += q_excess[k];
  }
  const bool disjoint_possible = p_mass > 0.0 && q_mass > 0.0;
  if (!disjoint_possible || s.uniform() <= overlap_mass) {
    const std::size_t k = sample_categorical(s, overlap);
    return {k, k};
  }
  const std::size_t i = sample_categorical(s, p_excess);
  const std::size_t j = sample_categorical(s, q_excess);
  return {i, j};
}

SplitPair poisson_splitting(double lambda_a, double lambda_b, Stream& s) {
  check_rates(lambda_a, lambda_b);
  SplitPair out;
  out.mu = std::min(lambda_a, lambda_b);
  out.mu_star = std::fabs(lambda_a - lambda_b);
  out.H = sample_poisson(s, out.mu);
  out.H_star = sample_poisson(s, out.mu_star);
  out.Y = out.H + (lambda_a > lambda_b ? out.H_star : 0);
  out.Z = out.H + (lambda_b > lambda_a ? out.H_star : 0);
  return out;
}

std::int64_t poisson_splitting_given(double lambda_a, double lambda_b, std::int64_t z,
                                     Stream& s) {
  check_rates(lambda_a, lambda_b);
  if (z < 0) throw InvalidParameter("conditioning count must be non-negative");
  if (lambda_a >= lambda_b) return z + sample_poisson(s, lambda_a - lambda_b);
  return sample_binomial_small(s, z, lambda_a / lambda_b);
}

namespace {

// One coupled 2 -> 3 step. The urn draw i is the Polya choice; j is accepted
// as i with probability min(1, q_i / p_i) and otherwise drawn from the
// normalised residual (q - p)+. The joint law of (i, j) is the maximal
// coupling of p (current proportions) and q (R*): agreement on k has mass
// min(p_k, q_k), and on disagreement i ~ (p - q)+ and j ~ (q - p)+ are
// independent.
std::size_t coupled_choice(const UrnState& urn, std::size_t i, const std::vector<double>& q,
                           std::vector<double>& scratch, Stream& s) {
  const double p_i = urn.proportion(i);
  if (q[i] >= p_i || s.uniform() * p_i <= q[i]) return i;
  double total = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double excess = q[k] - urn.proportion(k);
    scratch[k] = excess > 0.0 ? excess : 0.0;
    total += scratch[k];
  }
  if (!(total > 0.0)) return i;
  const double target = s.uniform() * total;
  double cumulative = 0.0;
  std::size_t last = i;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (scratch[k] <= 0.0) continue;
    cumulative += scratch[k];
    last = k;
    if (cumulative >= target) return k;
  }
  return last;
}

}  // namespace

CoupledRealization build_chain(const ModelParams& p, Stream& s, FaultInjection fault) {
  p.validate(true);
  const std::size_t n = p.n;
  const std::int64_t steps = p.urn_steps();
  const std::int64_t pairs = steps / 2;

  CoupledRealization out;
  out.params = p;
  out.latent = sample_latent(p, s, true);
  out.n4 = sample_poisson(s, p.rate_scale() / 2.0);
  out.graphs.assign(7, Multigraph(n));
  const LatentState& latent = out.latent;
  const std::int64_t r = latent.r;
  const bool truncated = out.truncated();

  Multigraph& g1 = out.graphs[0];
  Multigraph& g2 = out.graphs[1];
  Multigraph& g3 = out.graphs[2];
  Multigraph& g4 = out.graphs[3];
  Multigraph& g5 = out.graphs[4];
  Multigraph& g6 = out.graphs[5];
  Multigraph& g7 = out.graphs[6];

  const std::int64_t first_kept = first_kept_pair(r);
  const std::int64_t g2_first =
      fault.kept_edge_off_by_one ? std::max<std::int64_t>(1, first_kept - 1) : first_kept;
  out.m3 = truncated ? 0 : kept_pair_count(r, steps);

  // Steps 1..r replay the conditioned prefix; after that the urn continues
  // from counts C with ordinary Polya dynamics.
  UrnState urn(latent.C);
  const CategoricalTable r_star(latent.R_star);
  std::vector<double> scratch(n);
  std::int64_t labels = 0;

  auto add_label = [&](Vertex a, Vertex b) {
    g3.add_edge(a, b);
    if (labels < out.n4) g4.add_edge(a, b);
    ++labels;
  };

  for (std::int64_t k = 1; k <= pairs; ++k) {
    const std::int64_t t1 = 2 * k - 1;
    Vertex urn_pick[2];
    Vertex coupled_pick[2];
    const bool kept = !truncated && k >= first_kept;
    for (int half = 0; half < 2; ++half) {
      const std::int64_t t = t1 + half;
      if (t <= r) {
        urn_pick[half] = latent.prefix.choices[static_cast<std::size_t>(t - 1)];
        continue;
      }
      const auto target = static_cast<std::int64_t>(s.below(static_cast<std::uint64_t>(urn.total())));
      const Vertex i = urn.locate(target);
      if (kept) {
        coupled_pick[half] = coupled_choice(urn, i, latent.R_star, scratch, s);
        if (coupled_pick[half] != i) ++out.mismatches;
      }
      urn.add_ball(i);
      urn_pick[half] = i;
    }
    g1.add_edge(urn_pick[0], urn_pick[1]);
    if (!truncated && k >= g2_first) g2.add_edge(urn_pick[0], urn_pick[1]);
    if (kept) add_label(coupled_pick[0], coupled_pick[1]);
  }

  if (!truncated) {
    for (; labels < out.n4; ++labels) {
      const auto [a, b] = sample_pair(r_star, s);
      g4.add_edge(a, b);
    }
    g5 = g4;
  }

  // 5 -> 6: per pair, Y given Z under the splitting law. On the truncated
  // branch model 5 is drawn fresh together with model 6.
  const double scale = p.rate_scale();
  for (Vertex j = 0; j < n; ++j) {
    for (Vertex i = 0; i <= j; ++i) {
      const double half = i == j ? 0.5 : 1.0;
      const double rate6 = half * p.c * latent.xi[i] * latent.xi[j];
      const double rate5 = half * scale * latent.R_star[i] * latent.R_star[j];
      std::int64_t y = 0;
      if (truncated) {
        const SplitPair sp = poisson_splitting(rate6, rate5, s);
        if (sp.Z) g5.add_edge(i, j, static_cast<Count>(sp.Z));
        y = sp.Y;
      } else {
        y = poisson_splitting_given(rate6, rate5, g5(i, j), s);
      }
      if (y) g6.add_edge(i, j, static_cast<Count>(y));
    }
  }

  g7 = g6;
  g7.clear_diagonal();
  return out;
}

RowSumDiff rowsum_diff(const Multigraph& a, const Multigraph& b) {
  if (a.size() != b.size()) throw InvalidParameter("graphs differ in vertex count");
  RowSumDiff out;
  out.rows.resize(a.size());
  for (Vertex i = 0; i < a.size(); ++i) {
    const auto ra = a.row(i);
    const auto rb = b.row(i);
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < ra.size(); ++j) {
      sum += static_cast<std::uint64_t>(std::llabs(static_cast<long long>(ra[j]) - rb[j]));
    }
    out.rows[i] = sum;
    out.max = std::max(out.max, sum);
  }
  return out;
}

}  // namespace pagw
