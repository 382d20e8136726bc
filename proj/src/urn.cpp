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

#include "pagw/urn.hpp"

#include <numeric>
#include <string>

#include "pagw/errors.hpp"

namespace pagw {

FenwickTree::FenwickTree(std::span<const std::int64_t> weights)
    : tree_(weights.size() + 1, 0) {
  for (std::size_t i = 0; i < weights.size(); ++i) tree_[i + 1] = weights[i];
  // Linear-time build.
  for (std::size_t i = 1; i < tree_.size(); ++i) {
    const std::size_t parent = i + (i & (~i + 1));
    if (parent < tree_.size()) tree_[parent] += tree_[i];
  }
  while (top_bit_ * 2 <= size()) top_bit_ *= 2;
}

void FenwickTree::add(std::size_t index, std::int64_t delta) noexcept {
  for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
}

std::int64_t FenwickTree::prefix(std::size_t count) const noexcept {
  std::int64_t sum = 0;
  for (std::size_t i = count; i > 0; i -= i & (~i + 1)) sum += tree_[i];
  return sum;
}

std::size_t FenwickTree::find(std::int64_t target) const noexcept {
  std::size_t pos = 0;
  for (std::size_t step = top_bit_; step > 0; step >>= 1) {
    const std::size_t next = pos + step;
    if (next < tree_.size() && tree_[next] <= target) {
      pos = next;
      target -= tree_[next];
    }
  }
  return pos;
}

std::size_t linear_find(std::span<const std::int64_t> counts, std::int64_t target) {
  std::int64_t cumulative = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    cumulative += counts[i];
    if (cumulative > target) return i;
  }
  return counts.size() - 1;
}

UrnState::UrnState(std::size_t n) : UrnState(std::vector<std::int64_t>(n, 1)) {}

UrnState::UrnState(std::vector<std::int64_t> counts)
    : counts_(std::move(counts)), fenwick_(counts_) {
  if (counts_.empty()) throw InvalidParameter("urn needs at least one colour");
  for (std::int64_t c : counts_) {
    if (c < 1) throw InvalidParameter("every urn must hold at least one ball");
  }
  total_ = std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
  steps_ = total_ - static_cast<std::int64_t>(counts_.size());
}

void UrnState::add_ball(std::size_t i) noexcept {
  ++counts_[i];
  fenwick_.add(i, 1);
  ++total_;
  ++steps_;
}

std::size_t urn_step(UrnState& u, Stream& s) {
  const auto target = static_cast<std::int64_t>(s.below(static_cast<std::uint64_t>(u.total())));
  const std::size_t chosen = u.locate(target);
  u.add_ball(chosen);
  return chosen;
}

std::vector<std::int64_t> UrnTrajectory::replay_counts(std::size_t n) const {
  std::vector<std::int64_t> counts(n, 1);
  for (std::uint32_t c : choices) ++counts.at(c);
  return counts;
}

UrnRun run_urn(std::size_t n, std::int64_t steps, Stream& s, bool record) {
  if (n == 0) throw InvalidParameter("urn needs at least one colour");
  if (steps < 0) throw InvalidParameter("urn step count must be non-negative");
  UrnRun run{UrnState(n), std::nullopt};
  if (record) {
    run.trajectory.emplace();
    run.trajectory->choices.reserve(static_cast<std::size_t>(steps));
  }
  for (std::int64_t t = 0; t < steps; ++t) {
    const std::size_t chosen = urn_step(run.state, s);
    if (record) run.trajectory->choices.push_back(static_cast<std::uint32_t>(chosen));
  }
  return run;
}

UrnTrajectory run_urn_conditioned(std::span<const std::int64_t> final_counts, Stream& s) {
  if (final_counts.empty()) throw InvalidParameter("urn needs at least one colour");
  UrnTrajectory traj;
  for (std::size_t i = 0; i < final_counts.size(); ++i) {
    if (final_counts[i] < 1) {
      throw InvalidParameter("final count of urn " + std::to_string(i) + " is below 1");
    }
    traj.choices.insert(traj.choices.end(), static_cast<std::size_t>(final_counts[i] - 1),
                        static_cast<std::uint32_t>(i));
  }
  // Fisher-Yates.
  auto& v = traj.choices;
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(s.below(i));
    std::swap(v[i - 1], v[j]);
  }
  return traj;
}

UrnTrajectory run_urn_conditioned(std::span<const std::int64_t> final_counts,
                                  std::int64_t steps, Stream& s) {
  const std::int64_t total =
      std::accumulate(final_counts.begin(), final_counts.end(), std::int64_t{0});
  if (total != static_cast<std::int64_t>(final_counts.size()) + steps) {
    throw InvalidParameter("final counts sum to " + std::to_string(total) + ", expected n + " +
                           std::to_string(steps));
  }
  return run_urn_conditioned(final_counts, s);
}

}  // namespace pagw
