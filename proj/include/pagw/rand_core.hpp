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

// Keyed random streams and the elementary samplers used by every model.
//
// A Stream is a xoshiro256** generator whose state is derived by hashing a
// StreamKey (run seed, replication index, label) through SplitMix64. All
// samplers below are written against raw 64-bit output only, so a given key
// produces the same draws on every platform and standard library.

#ifndef PAGW_RAND_CORE_HPP_
#define PAGW_RAND_CORE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pagw {

struct StreamKey {
  std::uint64_t run_seed = 0;
  std::uint64_t replication = 0;
  std::string label;
};

class Stream {
 public:
  explicit Stream(const StreamKey& key);

  // Raw 64-bit output (xoshiro256**).
  std::uint64_t next() noexcept;

  // Uniform on (0, 1], 53-bit resolution.
  double uniform() noexcept;

  // Uniform on the open interval (0, 1).
  double uniform_open() noexcept;

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  // Child stream keyed by this stream's next output and a label. Used to hand
  // independent sub-streams to parallel consumers.
  Stream split(const std::string& label);

 private:
  explicit Stream(std::array<std::uint64_t, 4> state) : state_(state) {}
  std::array<std::uint64_t, 4> state_;
};

Stream make_stream(const StreamKey& key);

// SplitMix64 finalizer; exposed for key hashing in tests.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Exp(1) by inversion, -log(u) with u in (0,1].
double sample_exponential(Stream& s);

// Pois(lambda). Inversion by sequential search for lambda < 10, Hormann's
// PTRS transformed rejection for lambda >= 10.
std::int64_t sample_poisson(Stream& s, double lambda);

struct GeometricDraw {
  std::int64_t count;  // ceil(xi * scale), at least 1
  double xi;           // the underlying Exp(1) draw
};

// ceil(xi * scale) with xi ~ Exp(1); Geometric on {1,2,...} with success
// probability 1 - exp(-1/scale).
GeometricDraw sample_geometric_from_exponential(Stream& s, double scale);

// Index i with probability weights[i] / sum(weights), by inverting one
// uniform draw against the running cumulative sum.
std::size_t sample_categorical(Stream& s, std::span<const double> weights);

// Binomial(trials, p) by counting Bernoulli successes. Intended for the small
// trial counts of Poisson thinning.
std::int64_t sample_binomial_small(Stream& s, std::int64_t trials, double p);

// Precomputed cumulative table for repeated categorical draws from one fixed
// distribution. Same inversion rule as sample_categorical, O(log n) per draw.
class CategoricalTable {
 public:
  explicit CategoricalTable(std::span<const double> weights);
  std::size_t sample(Stream& s) const;
  std::size_t size() const noexcept { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
  std::size_t last_positive_ = 0;
};

}  // namespace pagw

#endif  // PAGW_RAND_CORE_HPP_
