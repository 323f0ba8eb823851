#include "rgiso/solver.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

namespace rgiso {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Timeout: return "timeout";
  }
  return "?";
}

namespace {

enum class Mode { Decide, Count };

// Backtracking over pattern vertices with one bitset domain per unassigned
// pattern vertex. Assigning u -> v filters every other domain by adjacency
// (edges to N(v), non-edges to the complement of N(v)) and removes v.
// Branching picks the smallest domain, ties by smallest pattern index.
//
// Level L stores its domains by slot: slots [L, np) hold the unassigned
// pattern vertices listed in order_. The branching vertex is swapped into
// slot L, so a child only streams slots [L+1, np). W is the target word
// count; W = 0 selects the runtime-width fallback.
template <int W>
class InducedSearch {
 public:
  InducedSearch(const Graph& pattern, const Graph& target, const SearchBudget& budget, Mode mode)
      : p_(pattern),
        t_(target),
        np_(pattern.n()),
        w_(W > 0 ? static_cast<std::size_t>(W) : target.words()),
        mode_(mode),
        clock_(budget) {
    domains_.assign(static_cast<std::size_t>(np_ + 1) * np_ * w_, 0);
    sizes_.assign(static_cast<std::size_t>(np_ + 1) * np_, 0);
    best_.assign(static_cast<std::size_t>(np_ + 1), 0);
    padj_.resize(static_cast<std::size_t>(np_) * np_);
    for (int a = 0; a < np_; ++a)
      for (int b = 0; b < np_; ++b) padj_[static_cast<std::size_t>(a) * np_ + b] = p_.adjacent(a, b);
    // Per target vertex: its neighbourhood and its non-neighbourhood, both without itself.
    const int nt = target.n();
    const std::uint64_t tail = (nt % 64 == 0) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (nt % 64)) - 1);
    masks_.assign(static_cast<std::size_t>(nt) * 2 * w_, 0);
    for (int v = 0; v < nt; ++v) {
      const auto row = t_.row(v);
      std::uint64_t* adj = mask(v, true);
      std::uint64_t* non = mask(v, false);
      for (std::size_t k = 0; k < w_; ++k) {
        adj[k] = row[k];
        non[k] = ~row[k] & (k + 1 == w_ ? tail : ~std::uint64_t{0});
      }
      non[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }
    if constexpr (W == 0) acc_.resize(w_);
  }

  // Returns false if the search timed out.
  bool run() {
    const int nt = t_.n();
    std::uint64_t key = ~std::uint64_t{0};
    for (int u = 0; u < np_; ++u) {
      const int pd = p_.degree(u);
      const int pnd = np_ - 1 - pd;
      std::uint64_t* d = dom(0, u);
      int size = 0;
      for (int v = 0; v < nt; ++v) {
        const int td = t_.degree(v);
        if (td >= pd && nt - 1 - td >= pnd) {
          d[v >> 6] |= std::uint64_t{1} << (v & 63);
          ++size;
        }
      }
      if (size == 0) return true;
      sizes_[static_cast<std::size_t>(u)] = size;
      order_.push_back(u);
      key = std::min(key, branch_key(size, u, u));
    }
    best_[0] = static_cast<int>(key & kSlotMask);
    if (!hall_ok()) return true;
    search(0);
    return !clock_.expired();
  }

  std::uint64_t solutions() const noexcept { return solutions_; }
  std::uint64_t nodes() const noexcept { return clock_.nodes(); }

 private:
  static constexpr std::uint64_t kSlotMask = (std::uint64_t{1} << 20) - 1;

  // Orders candidates by (domain size, pattern vertex); the slot rides along.
  static std::uint64_t branch_key(int size, int u, int slot) {
    return (static_cast<std::uint64_t>(size) << 40) | (static_cast<std::uint64_t>(u) << 20) |
           static_cast<std::uint64_t>(slot);
  }

  std::size_t width() const noexcept {
    if constexpr (W > 0) return W;
    return w_;
  }
  std::uint64_t* dom(int level, int slot) {
    return domains_.data() + (static_cast<std::size_t>(level) * np_ + slot) * width();
  }
  int* sizes(int level) { return sizes_.data() + static_cast<std::size_t>(level) * np_; }
  std::uint64_t* mask(int v, bool adjacent) {
    return masks_.data() + (static_cast<std::size_t>(v) * 2 + (adjacent ? 1 : 0)) * width();
  }

  // Union of the root domains must cover as many targets as there are
  // pattern vertices.
  bool hall_ok() {
    std::vector<std::uint64_t> all(width(), 0);
    for (int i = 0; i < np_; ++i) {
      const std::uint64_t* d = dom(0, i);
      for (std::size_t k = 0; k < width(); ++k) all[k] |= d[k];
    }
    int total = 0;
    for (std::uint64_t x : all) total += std::popcount(x);
    return total >= np_;
  }

  void swap_slots(int level, int a, int b) {
    if (a == b) return;
    std::swap(order_[static_cast<std::size_t>(a)], order_[static_cast<std::size_t>(b)]);
    std::swap(sizes(level)[a], sizes(level)[b]);
    std::swap_ranges(dom(level, a), dom(level, a) + width(), dom(level, b));
  }

  // Returns true when the search should stop (found in decide mode, or timeout).
  bool search(int level) {
    const int slot = best_[static_cast<std::size_t>(level)];
    swap_slots(level, level, slot);
    const bool stop = branch(level);
    // Shallower levels index their slots through order_, so put it back.
    std::swap(order_[static_cast<std::size_t>(level)], order_[static_cast<std::size_t>(slot)]);
    return stop;
  }

  bool branch(int level) {
    const int best = order_[static_cast<std::size_t>(level)];
    // Recursion only writes levels above this one, so this row is stable.
    const std::uint64_t* bd = dom(level, level);
    for (std::size_t wi = 0; wi < width(); ++wi) {
      std::uint64_t word = bd[wi];
      while (word) {
        const int v = static_cast<int>(wi * 64) + std::countr_zero(word);
        word &= word - 1;
        if (!clock_.tick()) return true;
        if (!assign(level, best, v)) continue;
        if (level + 1 == np_) {
          ++solutions_;
          if (mode_ == Mode::Decide) return true;
          continue;
        }
        if (search(level + 1)) return true;
      }
    }
    return false;
  }

  // Builds level+1 domains for u -> v and picks the next branching slot.
  // Returns false on a wipe-out or when the union of the remaining domains
  // is smaller than the number of unassigned pattern vertices.
  bool assign(int level, int u, int v) {
    const std::uint64_t* adj = mask(v, true);
    const std::uint64_t* non = mask(v, false);
    const char* pa = padj_.data() + static_cast<std::size_t>(u) * np_;
    int* dsz = sizes(level + 1);
    // A local accumulator stays in registers; the pointer form would alias d.
    std::array<std::uint64_t, (W > 0 ? W : 1)> acc{};
    if constexpr (W == 0) std::fill(acc_.begin(), acc_.end(), 0);
    std::uint64_t key = ~std::uint64_t{0};
    // Locals keep the int stores into dsz from forcing member reloads.
    const int np = np_;
    const int* order = order_.data();
    const std::uint64_t* src = dom(level, 0);
    std::uint64_t* dst = dom(level + 1, 0);
    for (int i = level + 1; i < np; ++i) {
      const int x = order[i];
      const std::uint64_t* s = src + static_cast<std::size_t>(i) * width();
      std::uint64_t* d = dst + static_cast<std::size_t>(i) * width();
      const std::uint64_t* m = pa[x] ? adj : non;
      int size = 0;
      for (std::size_t k = 0; k < width(); ++k) {
        const std::uint64_t word = s[k] & m[k];
        d[k] = word;
        size += std::popcount(word);
        if constexpr (W > 0) {
          acc[k] |= word;
        } else {
          acc_[k] |= word;
        }
      }
      if (size == 0) return false;
      dsz[i] = size;
      key = std::min(key, branch_key(size, x, i));
    }
    best_[static_cast<std::size_t>(level) + 1] = static_cast<int>(key & kSlotMask);
    int total = 0;
    for (std::size_t k = 0; k < width(); ++k) total += std::popcount(W > 0 ? acc[k] : acc_[k]);
    return total >= np - level - 1;
  }

  const Graph& p_;
  const Graph& t_;
  int np_;
  std::size_t w_;
  Mode mode_;
  detail::BudgetClock clock_;
  std::vector<std::uint64_t> domains_;
  std::vector<int> sizes_;
  std::vector<int> best_;
  std::vector<char> padj_;
  std::vector<std::uint64_t> masks_;
  std::vector<int> order_;
  std::vector<std::uint64_t> acc_;
  std::uint64_t solutions_ = 0;
};

struct SearchResult {
  bool complete;
  std::uint64_t solutions;
  std::uint64_t nodes;
};

template <int W>
SearchResult run_search(const Graph& pattern, const Graph& target, const SearchBudget& budget, Mode mode) {
  InducedSearch<W> s(pattern, target, budget, mode);
  const bool complete = s.run();
  return {complete, s.solutions(), s.nodes()};
}

SearchResult dispatch(const Graph& pattern, const Graph& target, const SearchBudget& budget, Mode mode) {
  switch (target.words()) {
    case 1: return run_search<1>(pattern, target, budget, mode);
    case 2: return run_search<2>(pattern, target, budget, mode);
    case 3: return run_search<3>(pattern, target, budget, mode);
    case 4: return run_search<4>(pattern, target, budget, mode);
    default: return run_search<0>(pattern, target, budget, mode);
  }
}

}  // namespace

Decision contains_induced(const Graph& pattern, const Graph& target, const SearchBudget& budget) {
  if (pattern.n() == 0) return {Verdict::Yes, 0};
  if (pattern.n() > target.n()) return {Verdict::No, 0};
  const SearchResult r = dispatch(pattern, target, budget, Mode::Decide);
  if (r.solutions > 0) return {Verdict::Yes, r.nodes};
  return {r.complete ? Verdict::No : Verdict::Timeout, r.nodes};
}

CountOutcome count_induced_embeddings(const Graph& pattern, const Graph& target, const SearchBudget& budget) {
  if (pattern.n() == 0) return {1, false, 0};
  if (pattern.n() > target.n()) return {0, false, 0};
  const SearchResult r = dispatch(pattern, target, budget, Mode::Count);
  return {r.solutions, !r.complete, r.nodes};
}

CountOutcome count_induced_subsets(const Graph& pattern, const Graph& target, const SearchBudget& budget) {
  if (pattern.n() < 1) throw std::invalid_argument("count_induced_subsets: pattern must have a vertex");
  CountOutcome out = count_induced_embeddings(pattern, target, budget);
  if (out.timed_out) return out;
  const std::uint64_t aut = automorphism_count(pattern);
  if (out.count % aut != 0) {
    throw std::logic_error("count_induced_subsets: embedding count not divisible by |Aut(pattern)|");
  }
  out.count /= aut;
  return out;
}

}  // namespace rgiso
