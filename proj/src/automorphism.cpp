#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rgiso/solver.hpp"

namespace rgiso {

namespace {

using Coloring = std::vector<int>;

int color_count(const Coloring& c) { return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1; }

// Joint colour refinement of two colourings of the same graph. New colours are
// named from the sorted union of (old colour, neighbour colour counts)
// signatures, so equal names mean equal signatures on both sides. Returns
// false as soon as the two colour histograms differ.
bool refine_pair(const Graph& g, Coloring& a, Coloring* b) {
  const int n = g.n();
  struct Entry {
    std::vector<int> sig;
    int side;
    int vertex;
  };
  std::vector<Entry> entries;
  int colors = color_count(a);
  for (;;) {
    entries.clear();
    for (int side = 0; side < (b ? 2 : 1); ++side) {
      const Coloring& c = side == 0 ? a : *b;
      for (int v = 0; v < n; ++v) {
        std::vector<int> sig(static_cast<std::size_t>(colors) + 1, 0);
        sig[0] = c[static_cast<std::size_t>(v)];
        for (int u = 0; u < n; ++u) {
          if (g.adjacent(v, u)) ++sig[static_cast<std::size_t>(c[static_cast<std::size_t>(u)]) + 1];
        }
        entries.push_back({std::move(sig), side, v});
      }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.sig < y.sig; });
    int next = -1;
    std::vector<int> hist_a, hist_b;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i == 0 || entries[i].sig != entries[i - 1].sig) {
        ++next;
        hist_a.push_back(0);
        hist_b.push_back(0);
      }
      Coloring& c = entries[i].side == 0 ? a : *b;
      c[static_cast<std::size_t>(entries[i].vertex)] = next;
      ++(entries[i].side == 0 ? hist_a : hist_b)[static_cast<std::size_t>(next)];
    }
    if (b && hist_a != hist_b) return false;
    const int new_colors = next + 1;
    if (new_colors == colors) return true;
    colors = new_colors;
  }
}

void individualize(Coloring& c, int v) { c[static_cast<std::size_t>(v)] = color_count(c); }

// First colour class with more than one vertex, or -1 when discrete.
int first_nonsingleton(const Coloring& c) {
  std::vector<int> hist(static_cast<std::size_t>(color_count(c)), 0);
  for (int x : c) ++hist[static_cast<std::size_t>(x)];
  for (std::size_t k = 0; k < hist.size(); ++k)
    if (hist[k] > 1) return static_cast<int>(k);
  return -1;
}

bool is_automorphism(const Graph& g, const std::vector<int>& perm) {
  const int n = g.n();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (g.adjacent(u, v) != g.adjacent(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)])) {
        return false;
      }
  return true;
}

// Is there an automorphism mapping each vertex of colour k in `a` to a vertex
// of colour k in `b`?
bool exists_automorphism(const Graph& g, Coloring a, Coloring b) {
  if (!refine_pair(g, a, &b)) return false;
  const int cell = first_nonsingleton(a);
  const int n = g.n();
  if (cell < 0) {
    std::vector<int> by_color(static_cast<std::size_t>(n));
    for (int y = 0; y < n; ++y) by_color[static_cast<std::size_t>(b[static_cast<std::size_t>(y)])] = y;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) perm[static_cast<std::size_t>(x)] = by_color[static_cast<std::size_t>(a[static_cast<std::size_t>(x)])];
    return is_automorphism(g, perm);
  }
  int v = 0;
  while (a[static_cast<std::size_t>(v)] != cell) ++v;
  for (int w = 0; w < n; ++w) {
    if (b[static_cast<std::size_t>(w)] != cell) continue;
    Coloring a2 = a, b2 = b;
    individualize(a2, v);
    individualize(b2, w);
    if (exists_automorphism(g, std::move(a2), std::move(b2))) return true;
  }
  return false;
}

std::uint64_t checked_mul(std::uint64_t x, std::uint64_t y) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("automorphism group order exceeds 64 bits");
  return r;
}

// |Aut| restricted to automorphisms preserving the equitable colouring c,
// via orbit-stabilizer along an individualization chain.
std::uint64_t stabilizer_order(const Graph& g, const Coloring& c) {
  const int cell = first_nonsingleton(c);
  if (cell < 0) return 1;
  const int n = g.n();
  int v = 0;
  while (c[static_cast<std::size_t>(v)] != cell) ++v;
  std::uint64_t orbit = 1;
  for (int w = v + 1; w < n; ++w) {
    if (c[static_cast<std::size_t>(w)] != cell) continue;
    Coloring a = c, b = c;
    individualize(a, v);
    individualize(b, w);
    if (exists_automorphism(g, std::move(a), std::move(b))) ++orbit;
  }
  Coloring fixed = c;
  individualize(fixed, v);
  refine_pair(g, fixed, nullptr);
  return checked_mul(orbit, stabilizer_order(g, fixed));
}

}  // namespace

std::uint64_t automorphism_count(const Graph& g) {
  if (g.n() <= 1) return 1;
  Coloring c(static_cast<std::size_t>(g.n()), 0);
  refine_pair(g, c, nullptr);
  return stabilizer_order(g, c);
}

bool is_asymmetric(const Graph& g) {
  if (g.n() <= 1) return true;
  Coloring c(static_cast<std::size_t>(g.n()), 0);
  refine_pair(g, c, nullptr);
  if (first_nonsingleton(c) < 0) return true;
  return stabilizer_order(g, c) == 1;
}

}  // namespace rgiso
