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

#include "pagw/models.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "pagw/errors.hpp"

namespace pagw {

void ModelParams::validate(bool needs_alpha) const {
  if (n < 1) throw InvalidParameter("n must be at least 1");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidParameter("c must be positive and finite");
  if (needs_alpha) {
    if (!alpha) throw InvalidParameter("alpha is required for this model");
    if (!(*alpha > 1.0 && *alpha < 2.0)) {
      throw InvalidParameter("alpha must lie in (1, 2), got " + std::to_string(*alpha));
    }
  }
}

std::int64_t ModelParams::urn_steps() const {
  return static_cast<std::int64_t>(std::floor(rate_scale()));
}

double ModelParams::rate_scale() const {
  const auto nd = static_cast<double>(n);
  return c * nd * nd;
}

double ModelParams::geometric_scale() const {
  return std::pow(static_cast<double>(n), alpha.value() - 1.0);
}

LatentState sample_latent(const ModelParams& p, Stream& s, bool with_prefix) {
  p.validate(true);
  const double scale = p.geometric_scale();
  LatentState latent;
  latent.xi.reserve(p.n);
  latent.C.reserve(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    const GeometricDraw d = sample_geometric_from_exponential(s, scale);
    latent.xi.push_back(d.xi);
    latent.C.push_back(d.count);
  }
  const std::int64_t total = std::accumulate(latent.C.begin(), latent.C.end(), std::int64_t{0});
  latent.r = total - static_cast<std::int64_t>(p.n);
  latent.R_star.reserve(p.n);
  for (std::int64_t ci : latent.C) {
    latent.R_star.push_back(static_cast<double>(ci) / static_cast<double>(total));
  }
  if (with_prefix) latent.prefix = run_urn_conditioned(latent.C, latent.r, s);
  return latent;
}

std::int64_t first_kept_pair(std::int64_t r) { return (r + 1) / 2 + 1; }

std::int64_t kept_pair_count(std::int64_t r, std::int64_t steps) {
  const std::int64_t pairs = steps / 2;
  return std::max<std::int64_t>(0, pairs - (r + 1) / 2);
}

std::pair<Vertex, Vertex> sample_pair(const CategoricalTable& table, Stream& s) {
  const Vertex a = table.sample(s);
  const Vertex b = table.sample(s);
  return {a, b};
}

Multigraph poisson_graph_from_proportions(const ModelParams& p,
                                          const std::vector<double>& R_star, Stream& s) {
  Multigraph g(p.n);
  const double scale = p.rate_scale();
  for (Vertex j = 0; j < p.n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      const auto z = sample_poisson(s, scale * R_star[i] * R_star[j]);
      if (z) g.add_edge(i, j, static_cast<Count>(z));
    }
    const auto loops = sample_poisson(s, scale * R_star[j] * R_star[j] / 2.0);
    if (loops) g.add_edge(j, j, static_cast<Count>(loops));
  }
  return g;
}

Multigraph gen_model1(const ModelParams& p, Stream& s) {
  p.validate(false);
  Multigraph g(p.n);
  UrnState urn(p.n);
  const std::int64_t pairs = p.pag_edges();
  for (std::int64_t k = 0; k < pairs; ++k) {
    const Vertex a = urn_step(urn, s);
    const Vertex b = urn_step(urn, s);
    g.add_edge(a, b);
  }
  return g;
}

Multigraph gen_model2(const ModelParams& p, Stream& s) {
  p.validate(true);
  const LatentState latent = sample_latent(p, s, false);
  const std::int64_t steps = p.urn_steps();
  Multigraph g(p.n);
  if (latent.r > steps) return g;
  // The urn itself is independent of r; run it for all steps and keep the
  // pairs whose draws both come after step r.
  UrnState urn(p.n);
  const std::int64_t first = first_kept_pair(latent.r);
  for (std::int64_t k = 1; k <= steps / 2; ++k) {
    const Vertex a = urn_step(urn, s);
    const Vertex b = urn_step(urn, s);
    if (k >= first) g.add_edge(a, b);
  }
  return g;
}

Multigraph gen_model3(const ModelParams& p, Stream& s) {
  p.validate(true);
  const LatentState latent = sample_latent(p, s, false);
  const std::int64_t steps = p.urn_steps();
  Multigraph g(p.n);
  if (latent.r > steps) return g;
  const CategoricalTable table(latent.R_star);
  const std::int64_t kept = kept_pair_count(latent.r, steps);
  for (std::int64_t k = 0; k < kept; ++k) {
    const auto [a, b] = sample_pair(table, s);
    g.add_edge(a, b);
  }
  return g;
}

Multigraph gen_model4(const ModelParams& p, Stream& s) {
  p.validate(true);
  const LatentState latent = sample_latent(p, s, false);
  if (latent.r > p.urn_steps()) return Multigraph(p.n);
  return poisson_graph_from_proportions(p, latent.R_star, s);
}

Multigraph gen_model5(const ModelParams& p, Stream& s) {
  p.validate(true);
  const LatentState latent = sample_latent(p, s, false);
  return poisson_graph_from_proportions(p, latent.R_star, s);
}

namespace {

// Vertex by vertex: xi_j, then Y_ij for i < j, then the loop Y_jj. Generating
// n + 1 vertices from the same stream therefore extends the n-vertex graph.
Multigraph w_random_graph(const ModelParams& p, Stream& s, bool loops) {
  p.validate(false);
  Multigraph g(p.n);
  std::vector<double> xi;
  xi.reserve(p.n);
  for (Vertex j = 0; j < p.n; ++j) {
    xi.push_back(sample_exponential(s));
    for (Vertex i = 0; i < j; ++i) {
      const auto y = sample_poisson(s, p.c * xi[i] * xi[j]);
      if (y) g.add_edge(i, j, static_cast<Count>(y));
    }
    const auto y = sample_poisson(s, p.c * xi[j] * xi[j] / 2.0);
    if (loops && y) g.add_edge(j, j, static_cast<Count>(y));
  }
  return g;
}

}  // namespace

Multigraph gen_model6(const ModelParams& p, Stream& s) { return w_random_graph(p, s, true); }

Multigraph gen_model7(const ModelParams& p, Stream& s) { return w_random_graph(p, s, false); }

Multigraph gen_model(int model, const ModelParams& p, Stream& s) {
  switch (model) {
    case 1: return gen_model1(p, s);
    case 2: return gen_model2(p, s);
    case 3: return gen_model3(p, s);
    case 4: return gen_model4(p, s);
    case 5: return gen_model5(p, s);
    case 6: return gen_model6(p, s);
    case 7: return gen_model7(p, s);
    default: throw InvalidParameter("model must be in 1..7, got " + std::to_string(model));
  }
}

bool model_needs_alpha(int model) { return model >= 2 && model <= 5; }

}  // namespace pagw
