#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "slo/finite_algebra.hpp"

namespace slo {

/// Number of raw table assignments for `sig` on `size` elements, saturating
/// at UINT64_MAX.
inline std::uint64_t model_space_size(const Signature& sig, std::size_t size) {
  long double total = 1;
  for (const OpSymbol& op : sig.ops()) {
    long double cells = 1;
    for (std::size_t i = 0; i < op.arity; ++i) cells *= static_cast<long double>(size);
    for (long double c = 0; c < cells; c += 1) {
      total *= static_cast<long double>(size);
      if (total > 1.8e19L) return UINT64_MAX;
    }
  }
  return static_cast<std::uint64_t>(total);
}

/// Visit every algebra on carrier {0..size-1} whose tables satisfy all
/// `constraints`, in a fixed lexicographic order of the concatenated tables.
/// No isomorphism reduction is applied. Stops early if `visit` returns false.
inline void for_each_model(const Signature& sig, std::size_t size, const std::vector<Identity>& constraints,
                           const std::function<bool(const FiniteAlgebra&)>& visit,
                           const Limits& limits = default_limits()) {
  if (size == 0) throw PreconditionError("enumerate_models needs size >= 1");
  const std::uint64_t space = model_space_size(sig, size);
  if (space > limits.max_tables)
    throw ResourceError("model space of " + std::to_string(space) + " tables exceeds the cap of " +
                        std::to_string(limits.max_tables));
  sig.validate();
  for (const Identity& id : constraints) {
    check_term(id.lhs, sig);
    check_term(id.rhs, sig);
  }
  std::vector<std::vector<Elem>> tables;
  for (const OpSymbol& op : sig.ops()) tables.emplace_back(FiniteAlgebra::table_size(size, op.arity), 0);
  const auto labels = [&] {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size; ++i) out.push_back(std::to_string(i));
    return out;
  }();
  while (true) {
    FiniteAlgebra alg(sig, labels, tables);
    bool ok = true;
    for (const Identity& id : constraints)
      if (!satisfies(alg, id)) {
        ok = false;
        break;
      }
    if (ok && !visit(alg)) return;
    // odometer, last cell of last table fastest
    std::size_t t = tables.size();
    bool carried = true;
    while (carried && t > 0) {
      --t;
      auto& table = tables[t];
      std::size_t c = table.size();
      while (c > 0) {
        --c;
        if (++table[c] < size) {
          carried = false;
          break;
        }
        table[c] = 0;
      }
    }
    if (carried) return;
  }
}

inline std::vector<FiniteAlgebra> enumerate_models(const Signature& sig, std::size_t size,
                                                   const std::vector<Identity>& constraints,
                                                   const Limits& limits = default_limits()) {
  std::vector<FiniteAlgebra> out;
  for_each_model(sig, size, constraints, [&](const FiniteAlgebra& a) {
    out.push_back(a);
    return true;
  }, limits);
  return out;
}

/// Associativity, commutativity and idempotency of `mul`.
inline Identity associativity(const Signature& sig, const std::string& op = "mul") {
  return parse_identity(op + "(x, " + op + "(y, z)) = " + op + "(" + op + "(x, y), z)", sig);
}
inline Identity commutativity(const Signature& sig, const std::string& op = "mul") {
  return parse_identity(op + "(x, y) = " + op + "(y, x)", sig);
}
inline Identity idempotency(const Signature& sig, const std::string& op = "mul") {
  return parse_identity(op + "(x, x) = x", sig);
}

} // namespace slo
