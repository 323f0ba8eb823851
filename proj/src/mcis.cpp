#include <algorithm>
#include <vector>

#include "rgiso/solver.hpp"

namespace rgiso {

namespace {

// One label class of McSplit: left[l_start, l_start+l_len) may only be
// matched to right[r_start, r_start+r_len).
struct Bidomain {
  int l_start, r_start, l_len, r_len;
};

class McSplit {
 public:
  McSplit(const Graph& g1, const Graph& g2, const SearchBudget& budget) : g1_(g1), g2_(g2), clock_(budget) {}

  void run() {
    std::vector<int> left(static_cast<std::size_t>(g1_.n())), right(static_cast<std::size_t>(g2_.n()));
    for (int i = 0; i < g1_.n(); ++i) left[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < g2_.n(); ++i) right[static_cast<std::size_t>(i)] = i;
    std::vector<Bidomain> domains;
    if (g1_.n() > 0 && g2_.n() > 0) domains.push_back({0, 0, g1_.n(), g2_.n()});
    std::vector<std::pair<int, int>> current;
    search(domains, left, right, current);
  }

  const std::vector<std::pair<int, int>>& best() const noexcept { return best_; }
  bool timed_out() const noexcept { return clock_.expired(); }
  std::uint64_t nodes() const noexcept { return clock_.nodes(); }

 private:
  static int bound(const std::vector<Bidomain>& domains) {
    int b = 0;
    for (const auto& d : domains) b += std::min(d.l_len, d.r_len);
    return b;
  }

  // Smallest right-hand side (candidate set), ties by smallest left vertex.
  int select_domain(const std::vector<Bidomain>& domains, const std::vector<int>& left) const {
    int best = -1;
    int best_size = 0;
    int best_vertex = 0;
    for (std::size_t i = 0; i < domains.size(); ++i) {
      const auto& d = domains[i];
      const int v = *std::min_element(left.begin() + d.l_start, left.begin() + d.l_start + d.l_len);
      if (best < 0 || d.r_len < best_size || (d.r_len == best_size && v < best_vertex)) {
        best = static_cast<int>(i);
        best_size = d.r_len;
        best_vertex = v;
      }
    }
    return best;
  }

  // Stable partition of arr[start, start+len) into (non-neighbours, neighbours) of v.
  static int partition(std::vector<int>& arr, int start, int len, const Graph& g, int v) {
    auto first = arr.begin() + start;
    auto mid = std::stable_partition(first, first + len, [&](int x) { return !g.adjacent(v, x); });
    return static_cast<int>(mid - first);
  }

  std::vector<Bidomain> split(const std::vector<Bidomain>& domains, std::vector<int>& left,
                              std::vector<int>& right, int v, int w) const {
    std::vector<Bidomain> out;
    out.reserve(domains.size() * 2);
    for (const auto& d : domains) {
      const int l_non = partition(left, d.l_start, d.l_len, g1_, v);
      const int r_non = partition(right, d.r_start, d.r_len, g2_, w);
      const int l_adj = d.l_len - l_non;
      const int r_adj = d.r_len - r_non;
      if (l_non > 0 && r_non > 0) out.push_back({d.l_start, d.r_start, l_non, r_non});
      if (l_adj > 0 && r_adj > 0) out.push_back({d.l_start + l_non, d.r_start + r_non, l_adj, r_adj});
    }
    return out;
  }

  void search(std::vector<Bidomain>& domains, std::vector<int>& left, std::vector<int>& right,
              std::vector<std::pair<int, int>>& current) {
    if (!clock_.tick()) return;
    if (current.size() > best_.size()) best_ = current;
    if (static_cast<int>(current.size()) + bound(domains) <= static_cast<int>(best_.size())) return;

    const int di = select_domain(domains, left);
    if (di < 0) return;
    Bidomain& d = domains[static_cast<std::size_t>(di)];

    // Move the smallest left vertex of the class to the end of the class.
    auto lb = left.begin() + d.l_start;
    auto vit = std::min_element(lb, lb + d.l_len);
    const int v = *vit;
    std::iter_swap(vit, lb + d.l_len - 1);
    d.l_len -= 1;

    // Candidate right vertices in ascending order.
    std::vector<int> candidates(right.begin() + d.r_start, right.begin() + d.r_start + d.r_len);
    std::sort(candidates.begin(), candidates.end());
    for (int w : candidates) {
      auto rb = right.begin() + d.r_start;
      auto wit = std::find(rb, rb + d.r_len, w);
      std::iter_swap(wit, rb + d.r_len - 1);
      d.r_len -= 1;
      std::vector<int> l2 = left, r2 = right;
      std::vector<Bidomain> next = split(domains, l2, r2, v, w);
      current.emplace_back(v, w);
      search(next, l2, r2, current);
      current.pop_back();
      d.r_len += 1;
      if (clock_.expired()) return;
    }

    // Leave v unmatched.
    if (d.l_len == 0) {
      domains.erase(domains.begin() + di);
      search(domains, left, right, current);
    } else {
      search(domains, left, right, current);
    }
  }

  const Graph& g1_;
  const Graph& g2_;
  detail::BudgetClock clock_;
  std::vector<std::pair<int, int>> best_;
};

}  // namespace

McisWitness mcis_with_witness(const Graph& g1, const Graph& g2, const SearchBudget& budget) {
  McSplit s(g1, g2, budget);
  s.run();
  McisWitness out;
  out.mapping = s.best();
  std::sort(out.mapping.begin(), out.mapping.end());
  out.outcome = {static_cast<int>(s.best().size()), s.timed_out(), s.nodes()};
  return out;
}

McisOutcome mcis_size(const Graph& g1, const Graph& g2, const SearchBudget& budget) {
  return mcis_with_witness(g1, g2, budget).outcome;
}

}  // namespace rgiso
