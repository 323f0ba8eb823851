#pragma once

#include <ctime>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rgiso/graph.hpp"

namespace rgiso {

/// Search limits. Exceeding either yields a timeout outcome, never a wrong answer.
/// cpu_ms is measured on the calling thread's CPU clock, so oversubscribed
/// worker pools do not starve a trial into a timeout.
struct SearchBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::int64_t> cpu_ms;

  static SearchBudget unlimited() { return {}; }
  static SearchBudget nodes(std::uint64_t n) { return {n, std::nullopt}; }
  static SearchBudget millis(std::int64_t ms) { return {std::nullopt, ms}; }
};

enum class Verdict { Yes, No, Timeout };

const char* to_string(Verdict v) noexcept;

struct Decision {
  Verdict verdict = Verdict::No;
  std::uint64_t nodes = 0;
};

struct CountOutcome {
  std::uint64_t count = 0;  ///< meaningful only when !timed_out
  bool timed_out = false;
  std::uint64_t nodes = 0;
};

struct McisOutcome {
  int size = 0;  ///< exact unless timed_out, then the best incumbent (a lower bound)
  bool timed_out = false;
  std::uint64_t nodes = 0;
};

struct McisWitness {
  McisOutcome outcome;
  std::vector<std::pair<int, int>> mapping;  ///< (vertex of g1, vertex of g2)
};

/// Induced subgraph isomorphism: does target contain an induced copy of pattern?
Decision contains_induced(const Graph& pattern, const Graph& target,
                          const SearchBudget& budget = SearchBudget::unlimited());

/// Number of vertex subsets S of target with target[S] isomorphic to pattern.
/// Enumerates embeddings and divides by |Aut(pattern)|.
CountOutcome count_induced_subsets(const Graph& pattern, const Graph& target,
                                   const SearchBudget& budget = SearchBudget::unlimited());

/// Number of injective induced embeddings of pattern into target.
CountOutcome count_induced_embeddings(const Graph& pattern, const Graph& target,
                                      const SearchBudget& budget = SearchBudget::unlimited());

/// |Aut(g)| by individualization-refinement and orbit-stabilizer.
/// Throws std::overflow_error when the order exceeds 64 bits.
std::uint64_t automorphism_count(const Graph& g);

bool is_asymmetric(const Graph& g);

/// Size of a maximum common induced subgraph (McSplit-style branch and bound).
McisOutcome mcis_size(const Graph& g1, const Graph& g2,
                      const SearchBudget& budget = SearchBudget::unlimited());

/// As mcis_size, also returning a witness mapping for the incumbent.
McisWitness mcis_with_witness(const Graph& g1, const Graph& g2,
                              const SearchBudget& budget = SearchBudget::unlimited());

/// Lexicographically minimal upper-triangle adjacency string over all vertex
/// permutations, prefixed by n. Brute force; n <= 10.
std::string canonical_form(const Graph& g);

namespace detail {

/// Thread CPU time in nanoseconds.
inline std::int64_t thread_cpu_ns() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<std::int64_t>(ts.tv_sec) * 1'000'000'000 + ts.tv_nsec;
}

/// Shared node/clock accounting for budgeted searches.
class BudgetClock {
 public:
  explicit BudgetClock(const SearchBudget& budget)
      : max_nodes_(budget.max_nodes.value_or(UINT64_MAX)),
        has_deadline_(budget.cpu_ms.has_value()),
        deadline_ns_(has_deadline_ ? thread_cpu_ns() + *budget.cpu_ms * 1'000'000 : 0) {}

  /// Counts one node; returns false once the budget is exhausted.
  bool tick() {
    ++nodes_;
    if (nodes_ > max_nodes_) return expire();
    if (has_deadline_ && (nodes_ & 4095U) == 0 && thread_cpu_ns() >= deadline_ns_) return expire();
    return !expired_;
  }

  bool expired() const noexcept { return expired_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  bool expire() {
    expired_ = true;
    return false;
  }

  std::uint64_t max_nodes_;
  bool has_deadline_;
  std::int64_t deadline_ns_;
  std::uint64_t nodes_ = 0;
  bool expired_ = false;
};

}  // namespace detail

}  // namespace rgiso
