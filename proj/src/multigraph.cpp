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

#include "pagw/multigraph.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pagw/errors.hpp"

namespace pagw {

Multigraph::Multigraph(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidParameter("multigraph needs at least one vertex");
  cells_.assign(n * n, 0);
}

Multigraph new_multigraph(std::size_t n) { return Multigraph(n); }

void Multigraph::check_vertex(Vertex v) const {
  if (v >= n_) {
    throw IndexError("vertex " + std::to_string(v) + " out of range for n=" +
                     std::to_string(n_));
  }
}

Count Multigraph::at(Vertex i, Vertex j) const {
  check_vertex(i);
  check_vertex(j);
  return cells_[i * n_ + j];
}

void Multigraph::add_edge(Vertex i, Vertex j, Count count) {
  check_vertex(i);
  check_vertex(j);
  assert(cells_[i * n_ + j] <= std::numeric_limits<Count>::max() - count);
  cells_[i * n_ + j] += count;
  edge_count_ += count;
  if (i == j) {
    total_matrix_sum_ += count;
  } else {
    cells_[j * n_ + i] += count;
    total_matrix_sum_ += 2ULL * count;
  }
}

void Multigraph::set_multiplicity(Vertex i, Vertex j, Count count) {
  check_vertex(i);
  check_vertex(j);
  const Count old = cells_[i * n_ + j];
  edge_count_ = edge_count_ - old + count;
  if (i == j) {
    total_matrix_sum_ = total_matrix_sum_ - old + count;
  } else {
    total_matrix_sum_ = total_matrix_sum_ - 2ULL * old + 2ULL * count;
    cells_[j * n_ + i] = count;
  }
  cells_[i * n_ + j] = count;
}

void Multigraph::clear_diagonal() {
  for (Vertex i = 0; i < n_; ++i) set_multiplicity(i, i, 0);
}

std::uint64_t Multigraph::max_row_sum() const noexcept {
  std::uint64_t best = 0;
  for (Vertex i = 0; i < n_; ++i) {
    std::uint64_t sum = 0;
    for (Count v : row(i)) sum += v;
    best = std::max(best, sum);
  }
  return best;
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw InvalidParameter("cannot format real value");
  return std::string(buf, ptr);
}

void write_graph(std::ostream& out, const GraphHeader& header, const Multigraph& g) {
  out << g.size() << ' ' << format_real(header.c) << ' ' << header.model << ' '
      << header.seed << '\n';
  for (Vertex i = 0; i < g.size(); ++i) {
    for (Vertex j = i; j < g.size(); ++j) {
      if (const Count m = g(i, j); m != 0) out << i << ' ' << j << ' ' << m << '\n';
    }
  }
}

GraphFile read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("graph file is empty");
  GraphHeader header;
  {
    std::istringstream head(line);
    std::string c_text;
    if (!(head >> header.n >> c_text >> header.model >> header.seed)) {
      throw ParseError("malformed graph header: '" + line + "'");
    }
    const char* end = c_text.data() + c_text.size();
    auto [ptr, ec] = std::from_chars(c_text.data(), end, header.c);
    if (ec != std::errc() || ptr != end) throw ParseError("malformed density '" + c_text + "'");
  }
  if (header.n == 0) throw ParseError("graph header declares zero vertices");
  Multigraph g(header.n);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream cell(line);
    std::size_t i = 0, j = 0;
    std::uint64_t m = 0;
    if (!(cell >> i >> j >> m) || i > j || j >= header.n ||
        m > std::numeric_limits<Count>::max()) {
      throw ParseError("malformed cell on line " + std::to_string(line_no) + ": '" + line + "'");
    }
    g.set_multiplicity(i, j, static_cast<Count>(m));
  }
  return {header, std::move(g)};
}

void save_graph(const std::string& path, const GraphHeader& header, const Multigraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_graph(out, header, g);
}

GraphFile load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_graph(in);
}

}  // namespace pagw
