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

#ifndef PAGW_MULTIGRAPH_HPP_
#define PAGW_MULTIGRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pagw {

using Vertex = std::size_t;
using Count = std::uint32_t;

/// Undirected multigraph with loops on vertices 0..n-1, stored as a dense
/// symmetric multiplicity matrix.
///
/// A loop at i is stored once in A[i][i] (not doubled), so the total matrix
/// sum equals twice the number of non-loop edges plus the number of loops.
class Multigraph {
 public:
  explicit Multigraph(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  Count at(Vertex i, Vertex j) const;
  Count operator()(Vertex i, Vertex j) const noexcept { return cells_[i * n_ + j]; }

  /// Adds `count` parallel edges between i and j (a loop when i == j).
  void add_edge(Vertex i, Vertex j, Count count = 1);

  /// Overwrites the multiplicity of the unordered pair {i, j}.
  void set_multiplicity(Vertex i, Vertex j, Count count);

  /// Zeroes every loop.
  void clear_diagonal();

  /// Sum over i < j of A[i][j] plus the loop counts.
  std::uint64_t edge_count() const noexcept { return edge_count_; }
  std::uint64_t total_matrix_sum() const noexcept { return total_matrix_sum_; }

  std::span<const Count> row(Vertex i) const noexcept {
    return {cells_.data() + i * n_, n_};
  }

  /// Largest row sum of the multiplicity matrix.
  std::uint64_t max_row_sum() const noexcept;

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_;
  }

 private:
  void check_vertex(Vertex v) const;

  std::size_t n_;
  std::vector<Count> cells_;
  std::uint64_t edge_count_ = 0;
  std::uint64_t total_matrix_sum_ = 0;
};

Multigraph new_multigraph(std::size_t n);

// --- Plain-text serialization -------------------------------------------
//
// Header line "n c model seed", then one line "i j multiplicity" per nonzero
// cell with i <= j, in row-major order.

struct GraphHeader {
  std::size_t n = 0;
  double c = 0.0;
  std::string model = "0";
  std::uint64_t seed = 0;
};

struct GraphFile {
  GraphHeader header;
  Multigraph graph;
};

void write_graph(std::ostream& out, const GraphHeader& header, const Multigraph& g);
GraphFile read_graph(std::istream& in);

void save_graph(const std::string& path, const GraphHeader& header, const Multigraph& g);
GraphFile load_graph(const std::string& path);

/// Shortest decimal that parses back to the same double.
std::string format_real(double value);

}  // namespace pagw

#endif  // PAGW_MULTIGRAPH_HPP_
