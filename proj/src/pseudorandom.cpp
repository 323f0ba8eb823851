#include "rgiso/pseudorandom.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "rgiso/errors.hpp"
#include "rgiso/solver.hpp"

namespace rgiso::pseudorandom {

namespace {

// cbrt is not correctly rounded; snap to the integer root when there is one.
double cube_root(double x) {
  const double r = std::cbrt(x);
  const double k = std::round(r);
  return k * k * k == x ? k : r;
}

}  // namespace

double pow_two_thirds(double n) { return cube_root(n * n); }
double pow_four_thirds(double n) { return n * cube_root(n); }

int asymmetry_threshold(int n) {
  return static_cast<int>(std::ceil(static_cast<double>(n) - pow_two_thirds(static_cast<double>(n))));
}

namespace {

std::vector<int> complement_of(std::uint64_t mask, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (!((mask >> v) & 1U)) out.push_back(v);
  return out;
}

std::vector<int> members(std::uint64_t mask, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1U) out.push_back(v);
  return out;
}

// Enumerates s-subsets of [n] in lexicographic order; returns the first for
// which pred is true.
template <class Pred>
std::optional<std::vector<int>> first_subset(int n, int s, Pred&& pred) {
  std::vector<int> idx(static_cast<std::size_t>(s));
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (pred(idx)) return idx;
    int i = s - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - s + i) --i;
    if (i < 0) return std::nullopt;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::int64_t induced_edges(const Graph& g, const std::vector<int>& L) {
  std::int64_t e = 0;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = i + 1; j < L.size(); ++j)
      if (g.adjacent(L[i], L[j])) ++e;
  return e;
}

double e_target(int n, std::int64_t m, int s) {
  const std::int64_t pairs = pair_count(n);
  if (pairs == 0) return 0.0;
  return static_cast<double>(pair_count(s)) * static_cast<double>(m) / static_cast<double>(pairs);
}

}  // namespace

PropertyVerdict check_A(const Graph& g) {
  const int n = g.n();
  if (n > kMaxExactA) throw SizeLimitError("check_A: exact enumeration supports n <= 40");
  if (n <= 1) return {};
  const int t = std::max(1, asymmetry_threshold(n));

  // Near-twins: if u and v are distinguished only by the vertex set D, then
  // L = V \ D induces a graph with the transposition (u v) as automorphism.
  int best_d = n + 1;
  std::uint64_t best_diff = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      std::uint64_t diff = g.row(u)[0] ^ g.row(v)[0];
      diff &= ~((std::uint64_t{1} << u) | (std::uint64_t{1} << v));
      const int d = std::popcount(diff);
      if (d < best_d) {
        best_d = d;
        best_diff = diff;
      }
    }
  }
  if (n - best_d >= t) return {false, complement_of(best_diff, n)};

  for (int s = n; s >= t; --s) {
    auto hit = first_subset(n, s, [&](const std::vector<int>& L) { return !is_asymmetric(induced_subgraph(g, L)); });
    if (hit) return {false, std::move(hit)};
  }
  return {};
}

PropertyVerdict check_E(const Graph& g, std::int64_t m) {
  const int n = g.n();
  if (n > kMaxExactE) throw SizeLimitError("check_E: exhaustive subset scan supports n <= 24");
  if (m != g.edge_count()) throw DomainError("check_E: m must equal the edge count of the graph");
  if (n <= 1) return {};

  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) adj[static_cast<std::size_t>(v)] = g.row(v)[0];
  std::vector<std::int64_t> lo(static_cast<std::size_t>(n + 1), INT64_MAX), hi(static_cast<std::size_t>(n + 1), -1);
  std::vector<std::uint64_t> lo_mask(static_cast<std::size_t>(n + 1)), hi_mask(static_cast<std::size_t>(n + 1));

  // Gray-code walk over all subsets; one vertex toggles per step.
  std::uint64_t L = 0;
  std::int64_t e = 0;
  int size = 0;
  const std::uint64_t steps = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const int v = std::countr_zero(i);
    const std::uint64_t bit = std::uint64_t{1} << v;
    const int deg_in = std::popcount(adj[static_cast<std::size_t>(v)] & L);
    if (L & bit) {
      L &= ~bit;
      e -= deg_in;
      --size;
    } else {
      L |= bit;
      e += deg_in;
      ++size;
    }
    const auto s = static_cast<std::size_t>(size);
    if (e < lo[s]) {
      lo[s] = e;
      lo_mask[s] = L;
    }
    if (e > hi[s]) {
      hi[s] = e;
      hi_mask[s] = L;
    }
  }

  const double scale = pow_two_thirds(static_cast<double>(n));
  for (int s = n; s >= 1; --s) {
    const auto si = static_cast<std::size_t>(s);
    const double target = e_target(n, m, s);
    const double bound = scale * static_cast<double>(n - s);
    if (static_cast<double>(hi[si]) - target > bound) return {false, members(hi_mask[si], n)};
    if (target - static_cast<double>(lo[si]) > bound) return {false, members(lo_mask[si], n)};
  }
  return {};
}

PropertyVerdict check_F(const Graph& g, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("check_F: p must lie in [0, 1]");
  const double n = static_cast<double>(g.n());
  const double dev = std::abs(static_cast<double>(g.edge_count()) - static_cast<double>(pair_count(g.n())) * p);
  if (dev <= pow_four_thirds(n)) return {};
  std::vector<int> all(static_cast<std::size_t>(g.n()));
  std::iota(all.begin(), all.end(), 0);
  return {false, std::move(all)};
}

bool violates_A(const Graph& g, const std::vector<int>& L) {
  if (static_cast<int>(L.size()) < asymmetry_threshold(g.n())) return false;
  return !is_asymmetric(induced_subgraph(g, L));
}

bool violates_E(const Graph& g, std::int64_t m, const std::vector<int>& L) {
  if (L.empty()) return false;
  const int n = g.n();
  const int s = static_cast<int>(L.size());
  const double dev = std::abs(static_cast<double>(induced_edges(g, L)) - e_target(n, m, s));
  return dev > pow_two_thirds(static_cast<double>(n)) * static_cast<double>(n - s);
}

const char* to_string(Property p) noexcept {
  switch (p) {
    case Property::A: return "A";
    case Property::E: return "E";
    case Property::F: return "F";
    case Property::AE: return "AE";
    case Property::AF: return "AF";
    case Property::Asym: return "asym";
  }
  return "?";
}

Property parse_property(const std::string& s) {
  if (s == "A") return Property::A;
  if (s == "E") return Property::E;
  if (s == "F") return Property::F;
  if (s == "AE" || s == "A&E") return Property::AE;
  if (s == "AF" || s == "A&F") return Property::AF;
  if (s == "asym") return Property::Asym;
  throw DomainError("unknown property '" + s + "' (expected A, E, F, AE, AF or asym)");
}

Graph sample(const Model& model, Seed seed) {
  return std::visit(
      [&](const auto& m) -> Graph {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, GnpModel>) {
          return gen_gnp(m.n, m.p, seed);
        } else {
          return gen_gnm(m.n, m.m, seed);
        }
      },
      model);
}

bool evaluate(Property prop, const Model& model, const Graph& g) {
  const double p_ref = std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, GnpModel>) {
          return m.p;
        } else {
          const auto pairs = pair_count(m.n);
          return pairs == 0 ? 0.0 : static_cast<double>(m.m) / static_cast<double>(pairs);
        }
      },
      model);
  switch (prop) {
    case Property::A: return check_A(g).holds;
    case Property::E: return check_E(g, g.edge_count()).holds;
    case Property::F: return check_F(g, p_ref).holds;
    case Property::AE: return check_A(g).holds && check_E(g, g.edge_count()).holds;
    case Property::AF: return check_A(g).holds && check_F(g, p_ref).holds;
    case Property::Asym: return is_asymmetric(g);
  }
  return false;
}

}  // namespace rgiso::pseudorandom
