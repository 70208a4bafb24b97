#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slo/closure_quotient.hpp"
#include "slo/free_model.hpp"
#include "slo/models.hpp"
#include "slo/power_algebra.hpp"
#include "slo/slo_core.hpp"

namespace slo {

/// x, y, z, w for up to four generators, x1..xn beyond.
inline std::vector<std::string> generator_names(std::size_t n) {
  static const char* const short_names[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(n <= 4 ? short_names[i] : "x" + std::to_string(i + 1));
  return out;
}

namespace detail {

inline void check_generator_names(const std::vector<std::string>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].empty()) throw SemanticError("empty generator name");
    for (std::size_t j = 0; j < i; ++j)
      if (x[i] == x[j]) throw SemanticError("duplicate generator '" + x[i] + "'");
  }
  if (x.size() > 16) throw ResourceError("free semilattice on more than 16 generators");
}

/// Element label: concatenated generator names, dot-separated if any name is
/// longer than one character.
inline std::string word_label(const std::vector<std::string>& x, std::uint64_t mask) {
  const bool dots = std::any_of(x.begin(), x.end(), [](const std::string& s) { return s.size() > 1; });
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i)
    if ((mask >> i) & 1U) {
      if (dots && !out.empty()) out += '.';
      out += x[i];
    }
  return out;
}

/// Non-empty subsets of X, ordered by size and then lexicographically.
inline std::vector<std::uint64_t> semilattice_masks(std::size_t n) {
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) { return canonical_less(Subset(a), Subset(b)); });
  return masks;
}

/// F_SL(X), allowed to be empty, with an optional adjoined unit.
inline FiniteAlgebra semilattice_on(const std::vector<std::string>& x, bool with_unit) {
  check_generator_names(x);
  const auto masks = semilattice_masks(x.size());
  std::map<std::uint64_t, Elem> index;
  std::vector<std::string> carrier;
  for (std::uint64_t m : masks) {
    index.emplace(m, static_cast<Elem>(carrier.size()));
    carrier.push_back(word_label(x, m));
  }
  const std::size_t n = carrier.size() + (with_unit ? 1 : 0);
  const Elem one = static_cast<Elem>(masks.size());
  Signature sig(with_unit ? "SL1" : "SL");
  sig.add_op("mul", 2);
  std::vector<std::vector<Elem>> tables{tabulate(n, 2, [&](std::span<const Elem> a) {
    if (with_unit && a[0] == one) return a[1];
    if (with_unit && a[1] == one) return a[0];
    return index.at(masks[a[0]] | masks[a[1]]);
  })};
  if (with_unit) {
    carrier.push_back("1");
    sig.set_unit("one");
    tables.push_back({one});
  }
  return FiniteAlgebra(std::move(sig), std::move(carrier), std::move(tables));
}

} // namespace detail

/// The free semilattice on X: non-empty subsets of X under union, written
/// multiplicatively. Generators are the singletons.
inline FiniteAlgebra free_semilattice(const std::vector<std::string>& x) {
  if (x.empty()) throw PreconditionError("the free semilattice on no generators is empty; use free_semilattice_unit");
  return detail::semilattice_on(x, false);
}

/// F_SL(X) with a unit 1 adjoined.
inline FiniteAlgebra free_semilattice_unit(const std::vector<std::string>& x) { return detail::semilattice_on(x, true); }

/// A shortest Omega-term over the generators for every full-subreduct element,
/// found breadth first.
inline std::map<Elem, Term> element_terms(const SloAlgebra& s, const std::vector<std::pair<std::string, Elem>>& generators) {
  const FiniteAlgebra& alg = s.algebra();
  std::map<Elem, Term> found;
  std::vector<Elem> order;
  auto add = [&](Elem e, Term t) {
    if (found.emplace(e, std::move(t)).second) order.push_back(e);
  };
  for (const auto& [name, e] : generators) add(e, Term::var(name));
  for (std::size_t c : alg.signature().omega_constants()) add(alg.constant(c), Term::op(alg.signature().op(c).name));
  std::size_t done = 0;
  while (done < order.size()) {
    const std::size_t old = done;
    const std::size_t current = order.size();
    for (std::size_t op : s.omega_ops()) {
      const std::size_t k = alg.arity(op);
      std::vector<Elem> args(k);
      for_each_tuple(current, k, [&](std::span<const Elem> pick) {
        if (*std::max_element(pick.begin(), pick.end()) < old) return true;
        std::vector<Term> children;
        for (std::size_t i = 0; i < k; ++i) {
          args[i] = order[pick[i]];
          children.push_back(found.at(args[i]));
        }
        add(alg.apply(op, args), Term::op(alg.signature().op(op).name, std::move(children)));
        return true;
      });
    }
    done = current;
  }
  return found;
}

/// Attach generator-term decompositions (from disjunctive forms) to an SLO
/// algebra generated by `generators`.
inline FreeModel attach_decompositions(SloAlgebra s, std::vector<std::pair<std::string, Elem>> generators) {
  const auto terms = element_terms(s, generators);
  std::vector<Elem> gens;
  for (const auto& g : generators) gens.push_back(g.second);
  std::vector<std::vector<Term>> dec(s.size());
  for (Elem e = 0; e < s.size(); ++e)
    for (Elem part : disjunctive_form(s, gens, e).parts) dec[e].push_back(terms.at(part));
  return FreeModel{std::move(s), std::move(generators), std::move(dec), std::nullopt};
}

/// Standard laws of the base (associativity, commutativity and idempotency of
/// each binary Omega-operation, idempotency of the others) that it satisfies.
inline std::vector<Identity> base_identities(const FiniteAlgebra& base) {
  const Signature& sig = base.signature();
  std::vector<Identity> candidates;
  for (std::size_t op : sig.omega_ops()) {
    const std::string& name = sig.op(op).name;
    const std::size_t k = sig.op(op).arity;
    if (k == 2) {
      candidates.push_back(associativity(sig, name));
      candidates.push_back(commutativity(sig, name));
    }
    std::vector<Term> xs(k, Term::var("x"));
    candidates.push_back({Term::op(name, xs), Term::var("x")});
  }
  std::vector<Identity> out;
  for (Identity& id : candidates)
    if (satisfies(base, id)) out.push_back(std::move(id));
  return out;
}

/// The power algebra of a free algebra, generated by the singletons of the
/// named base elements, with a report on whether it satisfies `identities`.
inline FreeModel free_slo(const FiniteAlgebra& base, const std::vector<std::string>& x, PowerVariant variant,
                          const std::vector<Identity>& identities, const Limits& limits = default_limits()) {
  PowerAlgebra power = build_power(base, variant, limits);
  std::vector<std::pair<std::string, Elem>> generators;
  for (const std::string& name : x) generators.emplace_back(name, power.index_of(Subset::singleton(base.element(name))));
  FreeModel m = attach_decompositions(require_slo(power.algebra), std::move(generators));
  MembershipReport report;
  for (const Identity& id : identities) {
    const Satisfaction sat = satisfies(power.algebra, id);
    if (sat) continue;
    report.in_variety = false;
    report.failed = id;
    for (const auto& [var, e] : sat.counterexample) report.witness.emplace_back(var, power.algebra.label(e));
    report.lhs = power.algebra.label(sat.lhs_value);
    report.rhs = power.algebra.label(sat.rhs_value);
    break;
  }
  m.membership = std::move(report);
  return m;
}

inline FreeModel free_slo_nonempty(const FiniteAlgebra& base, const std::vector<std::string>& x,
                                   const Limits& limits = default_limits()) {
  return free_slo(base, x, PowerVariant::nonempty, base_identities(base), limits);
}

namespace detail {

struct CdisElement {
  Subset family; // a subalgebra of F_SL(X), as a set of its element indices
  bool with_unit = false;
};

inline Subset family_product(const FiniteAlgebra& sl, Subset f, Subset g) {
  Subset out;
  for (Elem a : f.members())
    for (Elem b : g.members()) out.insert(sl.apply(0, {a, b}));
  return out;
}

} // namespace detail

/// The free commutative doubly idempotent semiring with 0 and 1 on X, built
/// on pairs (subalgebra of F_SL(X), marker for 1). Product of (A,m) and (B,n)
/// is the subalgebra generated by AB together with A if n and B if m, marked
/// when both are; sum is the subalgebra generated by the union, marked when
/// either is.
inline FreeModel free_cdis(const std::vector<std::string>& x, const Limits& limits = default_limits()) {
  if (x.size() > limits.max_cdis_generators)
    throw ResourceError("free CDIS on " + std::to_string(x.size()) + " generators exceeds the cap of " +
                        std::to_string(limits.max_cdis_generators));
  const FiniteAlgebra sl = detail::semilattice_on(x, false);
  std::vector<SubalgebraRep> classes;
  for (const SubalgebraRep& s : enumerate_subalgebras(sl, true, limits)) {
    classes.push_back({s.carrier, false});
    classes.push_back({s.carrier, true});
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return canonical_less(a, b); });
  const std::size_t n = classes.size();
  if (n > limits.max_carrier)
    throw ResourceError("free CDIS has " + std::to_string(n) + " elements, over the carrier cap of " +
                        std::to_string(limits.max_carrier) + "; use the count route");
  std::map<std::pair<std::uint64_t, bool>, Elem> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(std::pair{classes[i].carrier.bits(), classes[i].with_unit}, static_cast<Elem>(i));
  auto find = [&](Subset s, bool marker) { return index.at({closure(sl, s).bits(), marker}); };

  Signature sig = parse_signature("signature CDIS op mul:2 op join:2 join join const zero const one zero zero end");
  std::vector<std::vector<Elem>> tables{
      tabulate(n, 2, [&](std::span<const Elem> a) {
        const auto& [f, m] = classes[a[0]];
        const auto& [g, k] = classes[a[1]];
        Subset s = detail::family_product(sl, f, g);
        if (k) s |= f;
        if (m) s |= g;
        return find(s, m && k);
      }),
      tabulate(n, 2, [&](std::span<const Elem> a) {
        return find(classes[a[0]].carrier | classes[a[1]].carrier, classes[a[0]].with_unit || classes[a[1]].with_unit);
      }),
      {index.at({0, false})},
      {index.at({0, true})},
  };
  std::vector<std::string> labels;
  for (const auto& c : classes) labels.push_back(rep_label(sl, c));
  FiniteAlgebra alg(std::move(sig), std::move(labels), std::move(tables));

  std::vector<std::pair<std::string, Elem>> generators;
  for (std::size_t i = 0; i < x.size(); ++i)
    generators.emplace_back(x[i], index.at({Subset::singleton(sl.element(x[i])).bits(), false}));
  return attach_decompositions(require_slo(alg), std::move(generators));
}

/// Compare free_cdis(X) with the rho-quotient of the power algebra (with 0 and
/// 1) of F_SL1(X); nullopt when carriers, tables and designations coincide.
inline std::optional<std::string> cdis_quotient_difference(const std::vector<std::string>& x,
                                                           const Limits& limits = default_limits()) {
  const FreeModel direct = free_cdis(x, limits);
  const RhoQuotient q =
      quotient_by_rho(build_power(free_semilattice_unit(x), PowerVariant::with_empty_and_unit, limits), limits);
  return structural_difference(direct.algebra.algebra(), q.algebra.algebra());
}

/// |free CDIS on n generators|, counted as twice the number of subalgebras of
/// F_SL(X) (empty one included) without building tables.
inline std::size_t free_cdis_count(std::size_t n, const Limits& limits = default_limits()) {
  if (n > limits.max_cdis_generators)
    throw ResourceError("free CDIS on " + std::to_string(n) + " generators exceeds the cap of " +
                        std::to_string(limits.max_cdis_generators));
  return 2 * count_subalgebras(detail::semilattice_on(generator_names(n), false), true, limits);
}

struct CardinalityReport {
  std::size_t generators = 0;
  std::size_t n_free_sl_elements = 0;
  std::size_t n_subalgebras_incl_empty = 0;
  std::size_t n_reduced_subsets = 0;
  std::size_t n_free_cdis = 0;
  std::uint64_t bound_2_2n = 0;
  /// "model" when n_free_cdis is the size of a built free model, "count" when
  /// it comes from the subalgebra count.
  std::string cdis_route;

  ordered_json to_json() const {
    return {{"generators", generators},
            {"n_free_sl_elements", n_free_sl_elements},
            {"n_subalgebras_incl_empty", n_subalgebras_incl_empty},
            {"n_reduced_subsets", n_reduced_subsets},
            {"n_free_cdis", n_free_cdis},
            {"bound_2_2n", bound_2_2n},
            {"cdis_route", cdis_route}};
  }
};

/// The free CDIS size next to the subalgebra and reduced-subset counts of
/// F_SL(X) and the bound 2^(2^n). The identities between them are checked.
inline CardinalityReport cardinality_report(std::size_t n, const Limits& limits = default_limits()) {
  if (n > limits.max_cdis_generators)
    throw ResourceError("cardinality report on " + std::to_string(n) + " generators exceeds the cap of " +
                        std::to_string(limits.max_cdis_generators));
  const FiniteAlgebra sl = detail::semilattice_on(generator_names(n), false);
  CardinalityReport r;
  r.generators = n;
  r.n_free_sl_elements = sl.size();
  r.n_subalgebras_incl_empty = count_subalgebras(sl, true, limits);
  r.n_reduced_subsets = reduced_subsets(sl, limits).size();
  const std::size_t expected = 2 * r.n_subalgebras_incl_empty;
  if (expected <= limits.max_carrier) {
    r.n_free_cdis = free_cdis(generator_names(n), limits).algebra.size();
    r.cdis_route = "model";
  } else {
    r.n_free_cdis = free_cdis_count(n, limits);
    r.cdis_route = "count";
  }
  r.bound_2_2n = std::uint64_t{1} << (std::uint64_t{1} << n);
  if (r.n_free_cdis != 2 * r.n_subalgebras_incl_empty || r.n_free_cdis != 2 * r.n_reduced_subsets ||
      r.n_free_cdis > r.bound_2_2n)
    throw Error("cardinality identities fail on " + std::to_string(n) + " generators");
  return r;
}

} // namespace slo
