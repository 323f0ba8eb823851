#include "rgiso/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "rgiso/errors.hpp"

namespace rgiso {

ProbPair::ProbPair(double p1, double p2) : p1_(p1), p2_(p2) {
  if (!(p1 > 0.0 && p1 < 1.0) || !(p2 > 0.0 && p2 < 1.0)) {
    throw DomainError("edge probabilities must lie strictly between 0 and 1, got (" +
                      std::to_string(p1) + ", " + std::to_string(p2) + ")");
  }
}

int Graph::degree(int u) const noexcept {
  int d = 0;
  for (std::uint64_t w : row(u)) d += std::popcount(w);
  return d;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(edges_));
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

GraphBuilder::GraphBuilder(int n) {
  if (n < 0) throw DomainError("vertex count must be non-negative");
  g_.n_ = n;
  g_.words_ = words_for(static_cast<std::size_t>(n));
  g_.bits_.assign(static_cast<std::size_t>(n) * g_.words_, 0);
}

GraphBuilder& GraphBuilder::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= g_.n_ || v >= g_.n_) throw DomainError("edge endpoint out of range");
  if (u == v) throw DomainError("self-loops are not allowed");
  const std::size_t w = g_.words_;
  std::uint64_t& a = g_.bits_[static_cast<std::size_t>(u) * w + (static_cast<unsigned>(v) >> 6)];
  const std::uint64_t mask = std::uint64_t{1} << (v & 63);
  if (a & mask) return *this;
  a |= mask;
  g_.bits_[static_cast<std::size_t>(v) * w + (static_cast<unsigned>(u) >> 6)] |= std::uint64_t{1} << (u & 63);
  ++g_.edges_;
  return *this;
}

Graph GraphBuilder::build() && { return std::move(g_); }

Graph gen_gnp(int n, double p, Seed seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability must lie in [0, 1]");
  GraphBuilder b(n);
  CounterRng rng(seed);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform01() < p) b.add_edge(i, j);
    }
  }
  return std::move(b).build();
}

Graph gen_gnm(int n, std::int64_t m, Seed seed) {
  if (n < 0) throw DomainError("vertex count must be non-negative");
  const std::int64_t pairs = pair_count(n);
  if (m < 0 || m > pairs) throw DomainError("edge count must lie in [0, C(n,2)]");
  std::vector<std::int64_t> idx(static_cast<std::size_t>(pairs));
  std::iota(idx.begin(), idx.end(), std::int64_t{0});
  CounterRng rng(seed);
  for (std::int64_t i = 0; i < m; ++i) {
    const auto j = i + static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(pairs - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  // Lexicographic pair index k -> (i, j): row i starts at i*n - i*(i+1)/2.
  std::vector<std::int64_t> chosen(idx.begin(), idx.begin() + m);
  std::sort(chosen.begin(), chosen.end());
  GraphBuilder b(n);
  int i = 0;
  std::int64_t row_start = 0;
  for (std::int64_t k : chosen) {
    while (k >= row_start + (n - 1 - i)) {
      row_start += n - 1 - i;
      ++i;
    }
    b.add_edge(i, i + 1 + static_cast<int>(k - row_start));
  }
  return std::move(b).build();
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] < 0 || vertices[i] >= g.n()) throw DomainError("induced_subgraph: vertex out of range");
    if (i > 0 && vertices[i] <= vertices[i - 1]) {
      throw DomainError("induced_subgraph: vertex list must be strictly increasing");
    }
  }
  const int k = static_cast<int>(vertices.size());
  GraphBuilder b(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (g.adjacent(vertices[i], vertices[j])) b.add_edge(i, j);
    }
  }
  return std::move(b).build();
}

Graph complete_graph(int n) {
  GraphBuilder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.add_edge(i, j);
  return std::move(b).build();
}

Graph empty_graph(int n) { return GraphBuilder(n).build(); }

Graph path_graph(int n) {
  GraphBuilder b(n);
  for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  return std::move(b).build();
}

Graph cycle_graph(int n) {
  GraphBuilder b(n);
  for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  if (n >= 3) b.add_edge(n - 1, 0);
  return std::move(b).build();
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  GraphBuilder out(a.n() + b.n());
  for (auto [u, v] : a.edges()) out.add_edge(u, v);
  for (auto [u, v] : b.edges()) out.add_edge(u + a.n(), v + a.n());
  return std::move(out).build();
}

Graph from_edges(int n, std::span<const std::pair<int, int>> edges) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph read_graph(std::istream& in) {
  long long n = 0, m = 0;
  if (!(in >> n >> m) || n < 0 || m < 0 || m > pair_count(n)) {
    throw DomainError("graph text: malformed \"n m\" header");
  }
  GraphBuilder b(static_cast<int>(n));
  std::pair<long long, long long> prev{-1, -1};
  for (long long k = 0; k < m; ++k) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw DomainError("graph text: truncated edge list");
    if (u < 0 || v >= n || u >= v) throw DomainError("graph text: edges must satisfy 0 <= u < v < n");
    if (std::pair{u, v} <= prev) throw DomainError("graph text: edges must be sorted and distinct");
    prev = {u, v};
    b.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return std::move(b).build();
}

}  // namespace rgiso
