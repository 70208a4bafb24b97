#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "slo/finite_algebra.hpp"

// Small named algebras used as bases and targets throughout the tests.

namespace slo::catalog {

inline std::vector<std::string> numeric_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

inline Signature semigroup_signature() { return parse_signature("signature SG op mul:2 end"); }

inline FiniteAlgebra binary_algebra(std::string name, std::vector<std::string> carrier,
                                    const std::function<Elem(Elem, Elem)>& mul) {
  const std::size_t n = carrier.size();
  Signature sig(std::move(name));
  sig.add_op("mul", 2);
  return FiniteAlgebra(std::move(sig), std::move(carrier),
                       {tabulate(n, 2, [&](std::span<const Elem> a) { return mul(a[0], a[1]); })});
}

/// The n-element chain 0 < 1 < ... < n-1 under meet.
inline FiniteAlgebra chain_semilattice(std::size_t n) {
  return binary_algebra("chain" + std::to_string(n), numeric_labels(n),
                        [](Elem a, Elem b) { return std::min(a, b); });
}

/// {0, a, b} under meet with a and b incomparable.
inline FiniteAlgebra fan_semilattice() {
  return binary_algebra("fan", {"0", "a", "b"}, [](Elem a, Elem b) { return a == b ? a : Elem{0}; });
}

/// x * y = x.
inline FiniteAlgebra left_zero(std::size_t n) {
  return binary_algebra("leftzero" + std::to_string(n), numeric_labels(n), [](Elem a, Elem) { return a; });
}

/// Z_n under addition.
inline FiniteAlgebra cyclic_group(std::size_t n) {
  return binary_algebra("Z" + std::to_string(n), numeric_labels(n),
                        [n](Elem a, Elem b) { return static_cast<Elem>((a + b) % n); });
}

/// One unary operation f acting as the identity.
inline FiniteAlgebra identity_unary(std::size_t n) {
  Signature sig("identity" + std::to_string(n));
  sig.add_op("f", 1);
  return FiniteAlgebra(std::move(sig), numeric_labels(n), {tabulate(n, 1, [](std::span<const Elem> a) {
                         return a[0];
                       })});
}

/// Ternary majority on {0,1}.
inline FiniteAlgebra majority2() {
  Signature sig("majority");
  sig.add_op("maj", 3);
  return FiniteAlgebra(std::move(sig), numeric_labels(2), {tabulate(2, 3, [](std::span<const Elem> a) {
                         return (a[0] + a[1] + a[2]) >= 2 ? 1 : 0;
                       })});
}

/// The n-element chain as a distributive lattice: mul = meet, join = max,
/// zero = bottom, unit = top.
inline FiniteAlgebra distributive_chain(std::size_t n) {
  Signature sig = parse_signature("signature DL op mul:2 op join:2 join join const zero const one zero zero end");
  std::vector<std::vector<Elem>> tables{
      tabulate(n, 2, [](std::span<const Elem> a) { return std::min(a[0], a[1]); }),
      tabulate(n, 2, [](std::span<const Elem> a) { return std::max(a[0], a[1]); }),
      {0},
      {static_cast<Elem>(n - 1)},
  };
  return FiniteAlgebra(std::move(sig), numeric_labels(n), std::move(tables));
}

inline FiniteAlgebra two_element_distributive_lattice() { return distributive_chain(2); }

/// The four-element Boolean lattice {0, a, b, 1} with the same symbols as distributive_chain.
inline FiniteAlgebra boolean_lattice4() {
  Signature sig = parse_signature("signature DL op mul:2 op join:2 join join const zero const one zero zero end");
  // bit encoding: 0 = 00, a = 01, b = 10, 1 = 11
  std::vector<std::vector<Elem>> tables{
      tabulate(4, 2, [](std::span<const Elem> x) { return x[0] & x[1]; }),
      tabulate(4, 2, [](std::span<const Elem> x) { return x[0] | x[1]; }),
      {0},
      {3},
  };
  return FiniteAlgebra(std::move(sig), {"0", "a", "b", "1"}, std::move(tables));
}

struct Named {
  std::string name;
  FiniteAlgebra algebra;
};

/// Catalog bases (Omega-reducts only, no join) with at most `max_size` elements.
inline std::vector<Named> bases(std::size_t max_size) {
  std::vector<Named> all;
  for (std::size_t n = 1; n <= 4; ++n) all.push_back({"chain_semilattice(" + std::to_string(n) + ")", chain_semilattice(n)});
  all.push_back({"fan_semilattice", fan_semilattice()});
  for (std::size_t n = 2; n <= 3; ++n) all.push_back({"left_zero(" + std::to_string(n) + ")", left_zero(n)});
  for (std::size_t n = 2; n <= 4; ++n) all.push_back({"cyclic_group(" + std::to_string(n) + ")", cyclic_group(n)});
  all.push_back({"identity_unary(3)", identity_unary(3)});
  all.push_back({"majority2", majority2()});
  std::erase_if(all, [&](const Named& a) { return a.algebra.size() > max_size; });
  return all;
}

} // namespace slo::catalog
