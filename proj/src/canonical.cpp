#include <algorithm>
#include <numeric>
#include <vector>

#include "rgiso/errors.hpp"
#include "rgiso/solver.hpp"

namespace rgiso {

std::string canonical_form(const Graph& g) {
  const int n = g.n();
  if (n > 10) throw SizeLimitError("canonical_form: brute force supports n <= 10");
  // Upper triangle in row-major order packed most-significant-first, so the
  // numerically smallest code is the lexicographically smallest bit string.
  const int bits = n * (n - 1) / 2;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        code = (code << 1) | (g.adjacent(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) ? 1U : 0U);
      }
    }
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::string out;
  out.reserve(static_cast<std::size_t>(bits) + 1);
  out.push_back(static_cast<char>(n));
  for (int k = bits - 1; k >= 0; --k) out.push_back(((best >> k) & 1U) ? '1' : '0');
  return out;
}

}  // namespace rgiso
