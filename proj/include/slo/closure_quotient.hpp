#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slo/finite_algebra.hpp"
#include "slo/power_algebra.hpp"
#include "slo/slo_core.hpp"

namespace slo {

/// A subalgebra of the base, possibly empty. In unit-variant quotients the
/// unit is kept out of `carrier` and recorded by `with_unit`.
struct SubalgebraRep {
  Subset carrier;
  bool with_unit = false;

  friend bool operator==(const SubalgebraRep&, const SubalgebraRep&) = default;
};

/// Order by carrier size, then member order, then marker.
inline bool canonical_less(const SubalgebraRep& a, const SubalgebraRep& b) {
  if (a.carrier != b.carrier) return canonical_less(a.carrier, b.carrier);
  return !a.with_unit && b.with_unit;
}

inline std::string rep_label(const FiniteAlgebra& base, const SubalgebraRep& r) {
  return subset_label(r.carrier, [&](Elem e) { return base.label(e); }, "⟨", "⟩") + (r.with_unit ? "+1" : "");
}

/// Closure of A under the Omega-operations of positive arity. Constants are
/// not adjoined, so the empty set generates the empty subalgebra.
inline Subset closure(const FiniteAlgebra& base, Subset a) {
  if (!a.subset_of(Subset::full(base.size()))) throw PreconditionError("subset has members outside the carrier");
  return Subset::from(close_under(base, base.omega_ops(), a.members()));
}

inline SubalgebraRep generated_subalgebra(const FiniteAlgebra& base, Subset a) { return {closure(base, a), false}; }

/// A is closed under every Omega-operation of positive arity.
inline bool is_closed(const FiniteAlgebra& base, Subset a) {
  const std::vector<Elem> members = a.members();
  for (std::size_t op : base.omega_ops()) {
    const std::size_t k = base.arity(op);
    std::vector<Elem> args(k);
    const bool ok = for_each_tuple(members.size(), k, [&](std::span<const Elem> pick) {
      for (std::size_t i = 0; i < k; ++i) args[i] = members[pick[i]];
      return a.contains(base.apply(op, args));
    });
    if (!ok) return false;
  }
  return true;
}

namespace detail {
inline void check_subset_space(const FiniteAlgebra& base, const Limits& limits) {
  Subset::check_base(base.size());
  if (base.size() >= 63 || (std::uint64_t{1} << base.size()) > limits.max_subsets)
    throw ResourceError("2^" + std::to_string(base.size()) + " subsets exceed the cap of " +
                        std::to_string(limits.max_subsets));
}

template <typename Pred>
std::vector<Subset> filter_subsets(const FiniteAlgebra& base, bool include_empty, const Limits& limits, Pred&& keep) {
  check_subset_space(base, limits);
  std::vector<Subset> out;
  const std::uint64_t count = std::uint64_t{1} << base.size();
  for (std::uint64_t m = include_empty ? 0 : 1; m < count; ++m)
    if (keep(Subset(m))) out.emplace_back(m);
  std::sort(out.begin(), out.end(), [](Subset a, Subset b) { return canonical_less(a, b); });
  return out;
}
} // namespace detail

/// Every Omega-closed subset, in canonical order.
inline std::vector<SubalgebraRep> enumerate_subalgebras(const FiniteAlgebra& base, bool include_empty,
                                                        const Limits& limits = default_limits()) {
  std::vector<SubalgebraRep> out;
  for (Subset s : detail::filter_subsets(base, include_empty, limits, [&](Subset a) { return is_closed(base, a); }))
    out.push_back({s, false});
  return out;
}

inline std::size_t count_subalgebras(const FiniteAlgebra& base, bool include_empty,
                                     const Limits& limits = default_limits()) {
  detail::check_subset_space(base, limits);
  std::size_t n = 0;
  const std::uint64_t count = std::uint64_t{1} << base.size();
  for (std::uint64_t m = include_empty ? 0 : 1; m < count; ++m) n += is_closed(base, Subset(m)) ? 1 : 0;
  return n;
}

inline void require_idempotent_entropic(const FiniteAlgebra& base) {
  if (!is_idempotent(base)) throw PreconditionError("the replica relation needs an idempotent base");
  if (!is_entropic(base)) throw PreconditionError("the replica relation needs an entropic base");
}

/// A rho B iff the two sets generate the same subalgebra.
inline bool rho_equivalent(const FiniteAlgebra& base, Subset a, Subset b) {
  require_idempotent_entropic(base);
  return closure(base, a) == closure(base, b);
}

struct RhoWitness {
  Term t; // A is contained in t(B, ..., B)
  Term s; // B is contained in s(A, ..., A)
};

namespace detail {

/// Distinct values of linear terms applied to the constant argument `arg`,
/// each with the first term found, by term depth up to `depth`.
inline std::vector<std::pair<Subset, Term>> linear_term_values(const FiniteAlgebra& base, Subset arg,
                                                               std::size_t depth) {
  std::vector<std::pair<Subset, Term>> found{{arg, Term::var("x")}};
  std::map<std::uint64_t, bool> seen{{arg.bits(), true}};
  const auto ops = base.omega_ops();
  for (std::size_t level = 0; level < depth; ++level) {
    const std::size_t current = found.size();
    for (std::size_t op : ops) {
      const std::size_t k = base.arity(op);
      std::vector<Subset> args(k);
      for_each_tuple(current, k, [&](std::span<const Elem> pick) {
        for (std::size_t i = 0; i < k; ++i) args[i] = found[pick[i]].first;
        const Subset v = complex_op(base, op, args);
        if (!seen.emplace(v.bits(), true).second) return true;
        std::vector<Term> children;
        for (std::size_t i = 0; i < k; ++i) children.push_back(found[pick[i]].second);
        found.emplace_back(v, Term::op(base.signature().op(op).name, std::move(children)));
        return true;
      });
    }
  }
  // Give every variable occurrence its own name.
  for (auto& [value, term] : found) {
    const Term lin = linearize(term).linear_term;
    term = canonical_renaming(Identity{lin, lin}).lhs;
  }
  return found;
}

inline std::optional<Term> covering_term(const FiniteAlgebra& base, Subset target, Subset arg, std::size_t depth) {
  for (const auto& [value, term] : linear_term_values(base, arg, depth))
    if (target.subset_of(value)) return term;
  return std::nullopt;
}

} // namespace detail

/// Linear terms t and s with A within t(B,...,B) and B within s(A,...,A),
/// searched up to the given depth; nullopt when the bound is too small.
inline std::optional<RhoWitness> rho_witness(const FiniteAlgebra& base, Subset a, Subset b, std::size_t depth) {
  if (!rho_equivalent(base, a, b)) throw PreconditionError("the two sets are not rho-related");
  auto t = detail::covering_term(base, a, b, depth);
  if (!t) return std::nullopt;
  auto s = detail::covering_term(base, b, a, depth);
  if (!s) return std::nullopt;
  return RhoWitness{std::move(*t), std::move(*s)};
}

/// omega(x1..xn) = 1 implies every xi = 1, for the unique unit 1.
inline bool condition_one_check(const FiniteAlgebra& base) {
  const auto u = units(base);
  if (u.size() != 1) throw PreconditionError("condition (1) needs a unique unit, found " + std::to_string(u.size()));
  const Elem one = u.front();
  for (std::size_t op : base.omega_ops()) {
    const std::size_t k = base.arity(op);
    const bool ok = for_each_tuple(base.size(), k, [&](std::span<const Elem> args) {
      if (base.apply(op, args) != one) return true;
      return std::all_of(args.begin(), args.end(), [&](Elem x) { return x == one; });
    });
    if (!ok) return false;
  }
  return true;
}

/// First failure of the compatibility of "same generated subalgebra" with the
/// complex operations and union, over all subsets of the base.
inline std::optional<std::string> rho_congruence_violation(const FiniteAlgebra& base,
                                                           const Limits& limits = default_limits()) {
  require_idempotent_entropic(base);
  detail::check_subset_space(base, limits);
  const std::uint64_t count = std::uint64_t{1} << base.size();
  std::vector<Subset> closed(count);
  for (std::uint64_t m = 0; m < count; ++m) closed[m] = closure(base, Subset(m));
  auto label = [&](Subset s) { return subset_label(base, s); };

  for (std::uint64_t a = 0; a < count; ++a)
    for (std::uint64_t b = 0; b < count; ++b)
      if (closed[Subset(a | b).bits()] != closed[(closed[a] | closed[b]).bits()])
        return "union: <" + label(Subset(a)) + " u " + label(Subset(b)) + "> differs from the union of the closures";

  for (std::size_t op : base.omega_ops()) {
    const std::size_t k = base.arity(op);
    if (std::pow(static_cast<double>(count), static_cast<double>(k)) > static_cast<double>(limits.max_tables))
      throw ResourceError("congruence check over " + std::to_string(count) + "^" + std::to_string(k) +
                          " argument tuples exceeds the cap");
    std::vector<Subset> raw(k), gen(k);
    std::optional<std::string> bad;
    for_each_tuple(count, k, [&](std::span<const Elem> pick) {
      for (std::size_t i = 0; i < k; ++i) {
        raw[i] = Subset(pick[i]);
        gen[i] = closed[pick[i]];
      }
      const Subset lhs = closed[complex_op(base, op, raw).bits()];
      const Subset rhs = closed[complex_op(base, op, gen).bits()];
      if (lhs == rhs) return true;
      std::string args;
      for (std::size_t i = 0; i < k; ++i) args += (i ? ", " : "") + label(raw[i]);
      bad = base.signature().op(op).name + "(" + args + "): generated " + label(lhs) + " but " + label(rhs) +
            " from the closures";
      return false;
    });
    if (bad) return bad;
  }
  return std::nullopt;
}

struct RhoQuotient {
  SloAlgebra algebra;
  std::vector<SubalgebraRep> classes;
  std::vector<Elem> projection; // power element -> class
};

/// The quotient of a power algebra by rho: classes are generated
/// subalgebras, operations act on representatives, join is the class of the
/// union. In unit variants the class of S is recorded as the closure of S
/// without 1, marked by whether 1 lies in that closure.
inline RhoQuotient quotient_by_rho(const PowerAlgebra& power, const Limits& limits = default_limits()) {
  const FiniteAlgebra& base = power.base;
  require_idempotent_entropic(base);
  std::optional<Elem> one;
  if (includes_unit(power.variant)) {
    if (!condition_one_check(base)) throw PreconditionError("the base violates condition (1)");
    one = units(base).front();
  }
  auto rep_of = [&](Subset s) {
    Subset c = closure(base, s);
    if (one && c.contains(*one)) {
      c.erase(*one);
      return SubalgebraRep{c, true};
    }
    return SubalgebraRep{c, false};
  };

  const FiniteAlgebra& p = power.algebra;
  std::vector<SubalgebraRep> reps;
  reps.reserve(p.size());
  for (Subset s : power.subsets) reps.push_back(rep_of(s));
  std::vector<SubalgebraRep> classes = reps;
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return canonical_less(a, b); });
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  auto class_of = [&](const SubalgebraRep& r) {
    return static_cast<Elem>(std::lower_bound(classes.begin(), classes.end(), r,
                                              [](const auto& a, const auto& b) { return canonical_less(a, b); }) -
                             classes.begin());
  };
  std::vector<Elem> projection;
  projection.reserve(p.size());
  for (const auto& r : reps) projection.push_back(class_of(r));

  // A power element standing for each class: the generated subalgebra itself.
  std::vector<Elem> chosen;
  for (const auto& c : classes) {
    Subset s = c.carrier;
    if (c.with_unit) s.insert(*one);
    chosen.push_back(power.index_of(s));
  }

  const std::size_t n = classes.size();
  std::vector<std::vector<Elem>> tables;
  for (std::size_t k = 0; k < p.signature().op_count(); ++k) {
    const std::size_t arity = p.arity(k);
    if (arity == 0) {
      tables.push_back({projection[p.constant(k)]});
      continue;
    }
    std::vector<Elem> args(arity);
    tables.push_back(tabulate(n, arity, [&](std::span<const Elem> idx) {
      for (std::size_t i = 0; i < arity; ++i) args[i] = chosen[idx[i]];
      return projection[p.apply(k, args)];
    }));
  }
  if (n > limits.max_carrier) throw ResourceError("quotient carrier exceeds the cap");

  // Well-definedness: every tuple of power elements lands in the class the
  // representatives give.
  for (std::size_t k = 0; k < p.signature().op_count(); ++k) {
    const std::size_t arity = p.arity(k);
    if (arity == 0) continue;
    std::vector<Elem> cls(arity);
    const bool ok = for_each_tuple(p.size(), arity, [&](std::span<const Elem> args) {
      for (std::size_t i = 0; i < arity; ++i) cls[i] = projection[args[i]];
      const std::size_t n_idx = std::accumulate(cls.begin(), cls.end(), std::size_t{0},
                                                [&](std::size_t acc, Elem c) { return acc * n + c; });
      return tables[k][n_idx] == projection[p.apply(k, args)];
    });
    if (!ok) throw Error("rho is not compatible with '" + p.signature().op(k).name + "'");
  }

  std::vector<std::string> labels;
  for (const auto& c : classes) labels.push_back(rep_label(base, c));
  Signature sig = p.signature();
  FiniteAlgebra q(sig, std::move(labels), std::move(tables));
  if (!is_idempotent(q)) throw Error("rho quotient is not idempotent");
  if (!is_entropic(q, limits)) throw Error("rho quotient is not entropic");
  return {require_slo(q), std::move(classes), std::move(projection)};
}

/// No member is generated by the others.
inline bool is_reduced(const FiniteAlgebra& base, Subset a) {
  for (Elem e : a.members()) {
    Subset rest = a;
    rest.erase(e);
    if (closure(base, rest).contains(e)) return false;
  }
  return true;
}

inline std::vector<Subset> reduced_subsets(const FiniteAlgebra& base, const Limits& limits = default_limits()) {
  return detail::filter_subsets(base, true, limits, [&](Subset a) { return is_reduced(base, a); });
}

} // namespace slo
