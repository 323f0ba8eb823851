#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "rgiso/rng.hpp"

namespace rgiso {

/// Number of 64-bit words needed for an n-bit row.
constexpr std::size_t words_for(std::size_t bits) noexcept { return (bits + 63) / 64; }

/// Edge-probability pair with both coordinates strictly inside (0, 1).
class ProbPair {
 public:
  ProbPair(double p1, double p2);

  double p1() const noexcept { return p1_; }
  double p2() const noexcept { return p2_; }
  ProbPair swapped() const { return ProbPair(p2_, p1_); }

 private:
  double p1_;
  double p2_;
};

/// Undirected simple graph on vertices 0..n-1 stored as dense adjacency bit rows.
/// Immutable once built; use GraphBuilder to construct one.
class Graph {
 public:
  Graph() = default;

  int n() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }

  bool adjacent(int u, int v) const noexcept {
    return (bits_[static_cast<std::size_t>(u) * words_ + (static_cast<unsigned>(v) >> 6)] >> (v & 63)) & 1U;
  }

  std::span<const std::uint64_t> row(int u) const noexcept {
    return {bits_.data() + static_cast<std::size_t>(u) * words_, words_};
  }

  int degree(int u) const noexcept;
  std::int64_t edge_count() const noexcept { return edges_; }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  friend class GraphBuilder;

  int n_ = 0;
  std::size_t words_ = 0;
  std::int64_t edges_ = 0;
  std::vector<std::uint64_t> bits_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(int n);

  /// Adds the undirected edge {u, v}; self-loops and out-of-range ids throw DomainError.
  GraphBuilder& add_edge(int u, int v);
  Graph build() &&;

 private:
  Graph g_;
};

/// G(n, p): pairs i < j visited lexicographically, one uniform draw each.
Graph gen_gnp(int n, double p, Seed seed);

/// G(n, m): uniform m-subset of the lexicographic pair array by partial Fisher-Yates.
Graph gen_gnm(int n, std::int64_t m, Seed seed);

/// Subgraph induced by a strictly increasing vertex list; vertex i of the
/// result corresponds to vertices[i].
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);

inline std::int64_t edge_count(const Graph& g) noexcept { return g.edge_count(); }

inline std::int64_t pair_count(std::int64_t n) noexcept { return n * (n - 1) / 2; }

Graph complete_graph(int n);
Graph empty_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);
/// Vertex-disjoint union; vertices of b are shifted by a.n().
Graph disjoint_union(const Graph& a, const Graph& b);
Graph from_edges(int n, std::span<const std::pair<int, int>> edges);

/// Canonical text form: "n m" header, then one "u v" line per edge, u < v, sorted.
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);

}  // namespace rgiso
