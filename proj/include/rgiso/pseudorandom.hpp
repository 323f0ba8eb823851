#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rgiso/graph.hpp"

namespace rgiso::pseudorandom {

/// Membership verdict. When holds is false, witness is a violating vertex set.
struct PropertyVerdict {
  bool holds = true;
  std::optional<std::vector<int>> witness;
};

constexpr int kMaxExactA = 40;
constexpr int kMaxExactE = 24;

/// ceil(n - n^{2/3}): smallest subset size constrained by the asymmetry class.
int asymmetry_threshold(int n);

/// n^{2/3} and n^{4/3} via cbrt so perfect cubes are exact.
double pow_two_thirds(double n);
double pow_four_thirds(double n);

/// Asymmetry class: every L with |L| >= ceil(n - n^{2/3}) induces an asymmetric graph.
PropertyVerdict check_A(const Graph& g);

/// Edge-distribution class: |e(g[L]) - C(|L|,2) m / C(n,2)| <= n^{2/3} (n - |L|) for every nonempty L.
PropertyVerdict check_E(const Graph& g, std::int64_t m);

/// Global edge count class: |e(g) - C(n,2) p| <= n^{4/3}.
PropertyVerdict check_F(const Graph& g, double p);

/// Independent re-check of a witness against the class inequality.
bool violates_A(const Graph& g, const std::vector<int>& L);
bool violates_E(const Graph& g, std::int64_t m, const std::vector<int>& L);

enum class Property { A, E, F, AE, AF, Asym };
const char* to_string(Property p) noexcept;
Property parse_property(const std::string& s);

struct GnpModel {
  int n;
  double p;
};
struct GnmModel {
  int n;
  std::int64_t m;
};
using Model = std::variant<GnpModel, GnmModel>;

/// Evaluates the property on one graph drawn from the model. For F under
/// G(n,m) the reference density is m / C(n,2); for E under G(n,p) the
/// reference edge count is e(g).
bool evaluate(Property prop, const Model& model, const Graph& g);

Graph sample(const Model& model, Seed seed);

}  // namespace rgiso::pseudorandom
