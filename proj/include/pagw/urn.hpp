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

// Polya urn with one urn per vertex. Each step picks an urn with probability
// proportional to its ball count and adds a ball to it. Counts live in a
// Fenwick tree so a step costs O(log n).

#ifndef PAGW_URN_HPP_
#define PAGW_URN_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pagw/rand_core.hpp"

namespace pagw {

/// Binary indexed tree over non-negative integer weights.
class FenwickTree {
 public:
  explicit FenwickTree(std::span<const std::int64_t> weights);

  void add(std::size_t index, std::int64_t delta) noexcept;

  /// Sum of weights[0..count).
  std::int64_t prefix(std::size_t count) const noexcept;

  /// Smallest i with prefix(i + 1) > target; requires 0 <= target < total.
  std::size_t find(std::int64_t target) const noexcept;

  std::size_t size() const noexcept { return tree_.size() - 1; }

 private:
  std::vector<std::int64_t> tree_;  // 1-based
  std::size_t top_bit_ = 1;
};

/// Linear-scan counterpart of FenwickTree::find, kept for equivalence tests.
std::size_t linear_find(std::span<const std::int64_t> counts, std::int64_t target);

class UrnState {
 public:
  /// n urns holding one ball each.
  explicit UrnState(std::size_t n);

  /// Urns holding the given counts; every count must be at least 1.
  explicit UrnState(std::vector<std::int64_t> counts);

  std::size_t size() const noexcept { return counts_.size(); }
  std::int64_t count(std::size_t i) const noexcept { return counts_[i]; }
  std::span<const std::int64_t> counts() const noexcept { return counts_; }
  std::int64_t total() const noexcept { return total_; }
  std::int64_t steps() const noexcept { return steps_; }

  /// Proportion of balls in urn i, counts[i] / total.
  double proportion(std::size_t i) const noexcept {
    return static_cast<double>(counts_[i]) / static_cast<double>(total_);
  }

  /// The urn a ball-index draw `target` in [0, total) lands in.
  std::size_t locate(std::int64_t target) const noexcept { return fenwick_.find(target); }

  /// Adds one ball to urn i.
  void add_ball(std::size_t i) noexcept;

 private:
  std::vector<std::int64_t> counts_;
  FenwickTree fenwick_;
  std::int64_t total_ = 0;
  std::int64_t steps_ = 0;
};

/// One Polya step: picks urn i with probability counts[i]/total and adds a ball.
std::size_t urn_step(UrnState& u, Stream& s);

struct UrnTrajectory {
  std::vector<std::uint32_t> choices;  // chosen urn per step, in order

  /// Counts after replaying every choice from the all-ones state.
  std::vector<std::int64_t> replay_counts(std::size_t n) const;
};

struct UrnRun {
  UrnState state;
  std::optional<UrnTrajectory> trajectory;
};

/// Runs `steps` Polya steps from the all-ones state.
UrnRun run_urn(std::size_t n, std::int64_t steps, Stream& s, bool record = false);

/// A trajectory drawn from the conditional law of a Polya run given its final
/// counts: a uniformly random arrangement of the multiset holding urn i
/// exactly final_counts[i] - 1 times.
UrnTrajectory run_urn_conditioned(std::span<const std::int64_t> final_counts, Stream& s);

/// As above, additionally requiring the counts to describe exactly `steps` steps.
UrnTrajectory run_urn_conditioned(std::span<const std::int64_t> final_counts,
                                  std::int64_t steps, Stream& s);

}  // namespace pagw

#endif  // PAGW_URN_HPP_
