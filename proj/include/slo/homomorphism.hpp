#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slo/free_model.hpp"
#include "slo/slo_core.hpp"

namespace slo {

class HomomorphismError : public Error {
public:
  using Error::Error;
};

struct Homomorphism {
  std::vector<Elem> image;

  Elem operator()(Elem e) const { return image.at(e); }
};

namespace detail {

/// Each operation of `source` paired with its counterpart in `target`:
/// join to join, zero to zero, unit to unit, other symbols by name.
inline std::vector<std::pair<std::size_t, std::size_t>> match_operations(const SloAlgebra& source,
                                                                         const SloAlgebra& target) {
  const Signature& s = source.algebra().signature();
  const Signature& t = target.algebra().signature();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < s.op_count(); ++k) {
    if (s.is_join(k)) {
      out.emplace_back(k, target.join_op());
    } else if (s.is_zero(k)) {
      if (!t.zero_symbol()) throw HomomorphismError("target has no zero but the source does");
      out.emplace_back(k, t.index_of(*t.zero_symbol()));
    } else if (s.is_unit(k)) {
      if (!t.unit_symbol()) throw HomomorphismError("target has no unit but the source does");
      out.emplace_back(k, t.index_of(*t.unit_symbol()));
    } else {
      const auto idx = t.find(s.op(k).name);
      if (!idx || t.op(*idx).arity != s.op(k).arity || t.is_join(*idx))
        throw HomomorphismError("target lacks an operation '" + s.op(k).name + "' of arity " +
                                std::to_string(s.op(k).arity));
      out.emplace_back(k, *idx);
    }
  }
  return out;
}

} // namespace detail

/// Description of the first operation tuple on which `map` fails to be a
/// homomorphism, or nullopt.
inline std::optional<std::string> homomorphism_violation(const SloAlgebra& source, const SloAlgebra& target,
                                                         const std::vector<Elem>& map) {
  const FiniteAlgebra& s = source.algebra();
  const FiniteAlgebra& t = target.algebra();
  if (map.size() != s.size()) return "map is not total";
  std::optional<std::string> bad;
  for (const auto& [so, to] : detail::match_operations(source, target)) {
    const std::size_t k = s.arity(so);
    std::vector<Elem> img(k);
    for_each_tuple(s.size(), k, [&](std::span<const Elem> args) {
      for (std::size_t i = 0; i < k; ++i) img[i] = map[args[i]];
      const Elem lhs = map[s.apply(so, args)];
      const Elem rhs = t.apply(to, img);
      if (lhs == rhs) return true;
      std::string where = s.signature().op(so).name + "(";
      for (std::size_t i = 0; i < k; ++i) where += (i ? "," : "") + s.label(args[i]);
      bad = "h(" + where + ")) = " + t.label(lhs) + " but the operation on images gives " + t.label(rhs);
      return false;
    });
    if (bad) return bad;
  }
  return std::nullopt;
}

/// Extend a generator map to the unique homomorphism out of a free model:
/// each element goes to the join, over its decomposition parts, of the part
/// evaluated under `h` (the zero for an empty decomposition, the target unit
/// for the unit constant). The result is verified for every operation.
inline Homomorphism extend_hom(const FreeModel& free, const std::map<std::string, Elem>& h, const SloAlgebra& target) {
  const Signature& fs = free.algebra.algebra().signature();
  if (fs.zero_symbol() && !target.zero()) throw HomomorphismError("free model has a zero; the target must have one");
  if (fs.unit_symbol() && !target.unit()) throw HomomorphismError("free model has a unit; the target must have one");
  for (const auto& [name, e] : free.generators) {
    auto it = h.find(name);
    if (it == h.end()) throw HomomorphismError("generator map is not defined on '" + name + "'");
    if (it->second >= target.size()) throw HomomorphismError("generator image outside the target carrier");
  }
  for (const auto& [name, e] : h)
    if (std::none_of(free.generators.begin(), free.generators.end(), [&](const auto& g) { return g.first == name; }))
      throw HomomorphismError("'" + name + "' is not a generator");

  // Evaluate Omega-terms in the target, mapping the free unit symbol to the target unit.
  std::function<Elem(const Term&)> eval = [&](const Term& t) -> Elem {
    if (t.is_var()) return h.at(t.name());
    if (fs.unit_symbol() && t.name() == *fs.unit_symbol() && t.arity() == 0) return *target.unit();
    const auto idx = target.algebra().signature().find(t.name());
    if (!idx || target.algebra().arity(*idx) != t.arity())
      throw HomomorphismError("target lacks an operation '" + t.name() + "' of arity " + std::to_string(t.arity()));
    std::vector<Elem> args;
    for (const Term& a : t.args()) args.push_back(eval(a));
    return target.algebra().apply(*idx, args);
  };

  Homomorphism hom;
  hom.image.reserve(free.algebra.size());
  for (Elem e = 0; e < free.algebra.size(); ++e) {
    std::vector<Elem> values;
    for (const Term& part : free.decomposition.at(e)) values.push_back(eval(part));
    if (values.empty()) {
      if (!target.zero()) throw HomomorphismError("element '" + free.algebra.label(e) + "' needs a zero in the target");
      hom.image.push_back(*target.zero());
    } else {
      hom.image.push_back(target.join_all(values));
    }
  }
  for (const auto& [name, e] : free.generators)
    if (hom.image[e] != h.at(name))
      throw HomomorphismError("extension does not restrict to the generator map at '" + name + "'");
  if (auto bad = homomorphism_violation(free.algebra, target, hom.image))
    throw HomomorphismError("extension is not a homomorphism: " + *bad);
  return hom;
}

/// Count homomorphisms source -> target agreeing with `fixed`, stopping at
/// `limit`. Exhaustive: forced values are propagated through every operation
/// and the remaining elements are branched over all target elements.
inline std::size_t count_homomorphisms(const SloAlgebra& source, const SloAlgebra& target,
                                       const std::map<Elem, Elem>& fixed, std::size_t limit = 2) {
  constexpr Elem unset = std::numeric_limits<Elem>::max();
  const FiniteAlgebra& s = source.algebra();
  const FiniteAlgebra& t = target.algebra();
  const auto ops = detail::match_operations(source, target);

  std::vector<Elem> start(s.size(), unset);
  auto propagate = [&](std::vector<Elem>& m) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [so, to] : ops) {
        const std::size_t k = s.arity(so);
        std::vector<Elem> img(k);
        std::vector<Elem> assigned;
        for (Elem e = 0; e < s.size(); ++e)
          if (m[e] != unset) assigned.push_back(e);
        bool conflict = false;
        std::vector<Elem> args(k);
        for_each_tuple(assigned.size(), k, [&](std::span<const Elem> pick) {
          for (std::size_t i = 0; i < k; ++i) {
            args[i] = assigned[pick[i]];
            img[i] = m[args[i]];
          }
          const Elem r = s.apply(so, args);
          const Elem v = t.apply(to, img);
          if (m[r] == unset) {
            m[r] = v;
            changed = true;
          } else if (m[r] != v) {
            conflict = true;
            return false;
          }
          return true;
        });
        if (conflict) return false;
      }
    }
    return true;
  };

  for (const auto& [from, to] : fixed) {
    if (from >= s.size() || to >= t.size()) throw PreconditionError("fixed pair outside the carriers");
    if (start[from] != unset && start[from] != to) return 0;
    start[from] = to;
  }
  std::size_t count = 0;
  std::function<void(std::vector<Elem>)> search = [&](std::vector<Elem> m) {
    if (count >= limit || !propagate(m)) return;
    const auto next = std::find(m.begin(), m.end(), unset);
    if (next == m.end()) {
      ++count;
      return;
    }
    for (Elem v = 0; v < t.size() && count < limit; ++v) {
      std::vector<Elem> branch = m;
      branch[static_cast<std::size_t>(next - m.begin())] = v;
      search(std::move(branch));
    }
  };
  search(std::move(start));
  return count;
}

} // namespace slo
