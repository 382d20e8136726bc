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

#include "pagw/rand_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pagw/errors.hpp"

namespace pagw {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t fnv1a(const std::string& text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::array<std::uint64_t, 4> expand_seed(std::uint64_t seed) noexcept {
  std::array<std::uint64_t, 4> state{};
  for (auto& word : state) {
    seed += kGolden;
    word = mix64(seed);
  }
  // xoshiro must not start from the all-zero state.
  if ((state[0] | state[1] | state[2] | state[3]) == 0) state[0] = kGolden;
  return state;
}

std::uint64_t hash_key(const StreamKey& key) noexcept {
  std::uint64_t h = mix64(key.run_seed + kGolden);
  h = mix64(h ^ mix64(key.replication * 0xd1b54a32d192ed03ULL + 1));
  h = mix64(h ^ fnv1a(key.label));
  return h;
}

void check_rate(double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw InvalidParameter("poisson rate must be finite and non-negative, got " +
                           std::to_string(lambda));
  }
}

std::int64_t poisson_inversion(Stream& s, double lambda) {
  const double u = s.uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  std::int64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= lambda / static_cast<double>(k);
    if (p == 0.0) break;
    cdf += p;
  }
  return k;
}

// W. Hormann, "The transformed rejection method for generating Poisson
// random variables", Insurance: Mathematics and Economics 12 (1993).
std::int64_t poisson_ptrs(Stream& s, double lambda) {
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = s.uniform_open() - 0.5;
    const double v = s.uniform_open();
    const double us = 0.5 - std::fabs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(kd);
    if (kd < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -lambda + kd * loglam - std::lgamma(kd + 1.0)) {
      return static_cast<std::int64_t>(kd);
    }
  }
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Stream::Stream(const StreamKey& key) : state_(expand_seed(hash_key(key))) {}

std::uint64_t Stream::next() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Stream::uniform() noexcept {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

double Stream::uniform_open() noexcept {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Stream::below(std::uint64_t bound) noexcept {
  // Lemire's nearly divisionless rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Stream Stream::split(const std::string& label) {
  return Stream(expand_seed(mix64(next() ^ fnv1a(label))));
}

Stream make_stream(const StreamKey& key) { return Stream(key); }

double sample_exponential(Stream& s) { return -std::log(s.uniform()); }

std::int64_t sample_poisson(Stream& s, double lambda) {
  check_rate(lambda);
  if (lambda == 0.0) return 0;
  if (lambda < 10.0) return poisson_inversion(s, lambda);
  return poisson_ptrs(s, lambda);
}

GeometricDraw sample_geometric_from_exponential(Stream& s, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidParameter("geometric scale must be positive and finite");
  }
  const double xi = sample_exponential(s);
  const double ceiled = std::ceil(xi * scale);
  const auto count = static_cast<std::int64_t>(std::max(1.0, ceiled));
  return {count, xi};
}

std::size_t sample_categorical(Stream& s, std::span<const double> weights) {
  if (weights.empty()) throw InvalidParameter("categorical weights are empty");
  double total = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidParameter("categorical weights must be finite and non-negative");
    }
    if (w > 0.0) last_positive = i;
    total += w;
  }
  if (!(total > 0.0)) throw InvalidParameter("categorical weights sum to zero");

  const double target = s.uniform() * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (weights[i] > 0.0 && cumulative >= target) return i;
  }
  return last_positive;
}

std::int64_t sample_binomial_small(Stream& s, std::int64_t trials, double p) {
  if (trials < 0 || !(p >= 0.0 && p <= 1.0)) {
    throw InvalidParameter("binomial needs trials >= 0 and p in [0,1]");
  }
  if (p == 0.0) return 0;
  if (p == 1.0) return trials;
  std::int64_t successes = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    if (s.uniform() <= p) ++successes;
  }
  return successes;
}

CategoricalTable::CategoricalTable(std::span<const double> weights) {
  if (weights.empty()) throw InvalidParameter("categorical weights are empty");
  cumulative_.reserve(weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidParameter("categorical weights must be finite and non-negative");
    }
    if (w > 0.0) last_positive_ = i;
    total += w;
    cumulative_.push_back(total);
  }
  if (!(total > 0.0)) throw InvalidParameter("categorical weights sum to zero");
}

std::size_t CategoricalTable::sample(Stream& s) const {
  const double target = s.uniform() * cumulative_.back();
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), target);
  if (it == cumulative_.end()) return last_positive_;
  return static_cast<std::size_t>(it - cumulative_.begin());
}

}  // namespace pagw
