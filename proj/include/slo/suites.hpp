#pragma once

#include <array>
#include <chrono>
#include <numeric>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "slo/catalog.hpp"
#include "slo/closure_quotient.hpp"
#include "slo/free_constructions.hpp"
#include "slo/homomorphism.hpp"
#include "slo/models.hpp"
#include "slo/power_algebra.hpp"

namespace slo {

struct SuiteEntry {
  std::string instance;
  bool passed = true;
  std::string witness; // always set on failure
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteEntry> entries;
  double wall_seconds = 0; // not part of the JSON form

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.passed; }));
  }
  bool passed() const { return failures() == 0; }

  void pass(std::string instance, std::string note = {}) { entries.push_back({std::move(instance), true, std::move(note)}); }
  void fail(std::string instance, std::string witness) {
    entries.push_back({std::move(instance), false, std::move(witness)});
  }
  void expect(bool ok, std::string instance, std::string witness) {
    ok ? pass(std::move(instance)) : fail(std::move(instance), std::move(witness));
  }

  ordered_json to_json() const {
    ordered_json list = ordered_json::array();
    for (const auto& e : entries) {
      ordered_json j{{"instance", e.instance}, {"pass", e.passed}};
      if (!e.witness.empty()) j["witness"] = e.witness;
      list.push_back(std::move(j));
    }
    return {{"suite", suite},
            {"instances", entries.size()},
            {"failures", failures()},
            {"pass", passed()},
            {"entries", std::move(list)}};
  }
};

namespace detail {

template <typename Fn>
SuiteReport timed(std::string name, Fn&& body) {
  SuiteReport r;
  r.suite = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  body(r);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::string table_text(const FiniteAlgebra& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.table(0).size(); ++i) out += (i ? "," : "") + a.label(a.table(0)[i]);
  return out + "]";
}

inline std::string describe(const FiniteAlgebra& alg, const Satisfaction& s) {
  std::string out;
  for (const auto& [v, e] : s.counterexample) out += (out.empty() ? "" : ", ") + v + "=" + alg.label(e);
  return out + ": " + alg.label(s.lhs_value) + " != " + alg.label(s.rhs_value);
}

} // namespace detail

/// Linear identities whose identification image is `id`: occurrences are
/// renamed apart, and an occurrence on the left may be re-joined with one of
/// the same variable on the right. True if the base satisfies one of them.
inline bool is_image_of_satisfied_linear_identity(const FiniteAlgebra& base, const Identity& id) {
  const Linearization l = linearize(id.lhs);
  // Right side renamed apart from the left.
  std::vector<std::pair<std::string, std::string>> right_ident;
  std::function<Term(const Term&)> apart = [&](const Term& t) -> Term {
    if (t.is_var()) {
      std::string fresh = "r_" + t.name() + "_" + std::to_string(right_ident.size());
      right_ident.emplace_back(fresh, t.name());
      return Term::var(fresh);
    }
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(apart(a));
    return Term::op(t.name(), std::move(args));
  };
  const Term rhs = apart(id.rhs);

  // Each right occurrence is either left apart (-1) or tied to a left occurrence of the same variable.
  std::vector<std::vector<int>> options(right_ident.size());
  for (std::size_t r = 0; r < right_ident.size(); ++r) {
    options[r].push_back(-1);
    for (std::size_t i = 0; i < l.identification.size(); ++i)
      if (l.identification[i].second == right_ident[r].second) options[r].push_back(static_cast<int>(i));
  }
  std::vector<int> choice(right_ident.size(), -1);
  std::function<bool(std::size_t)> search = [&](std::size_t r) -> bool {
    if (r == right_ident.size()) {
      std::map<std::string, std::string> names;
      for (std::size_t k = 0; k < right_ident.size(); ++k)
        if (choice[k] >= 0) names[right_ident[k].first] = l.identification[static_cast<std::size_t>(choice[k])].first;
      return satisfies(base, {l.linear_term, rename(rhs, names)}).holds;
    }
    for (int opt : options[r]) {
      if (opt >= 0 && std::find(choice.begin(), choice.begin() + static_cast<std::ptrdiff_t>(r), opt) !=
                          choice.begin() + static_cast<std::ptrdiff_t>(r))
        continue;
      choice[r] = opt;
      if (search(r + 1)) return true;
    }
    choice[r] = -1;
    return false;
  };
  return search(0);
}

/// Linear identities of semigroups lift to their power algebras; a
/// non-linear one (idempotency) need not.
inline SuiteReport suite_gl(std::size_t max_size = 3, const Limits& limits = default_limits()) {
  return detail::timed("gl", [&](SuiteReport& r) {
    const Signature sig = catalog::semigroup_signature();
    const Identity assoc = associativity(sig);
    const Identity comm = commutativity(sig);
    const Identity idem = idempotency(sig);
    for (std::size_t n = 1; n <= max_size; ++n) {
      std::size_t index = 0;
      for_each_model(sig, n, {assoc}, [&](const FiniteAlgebra& s) {
        const std::string name = "semigroup " + std::to_string(n) + "#" + std::to_string(index++) + " " + detail::table_text(s);
        const FiniteAlgebra p = build_power(s, PowerVariant::nonempty, limits).algebra;
        const Satisfaction a = satisfies(p, assoc);
        r.expect(a.holds, name + " associativity lifts", detail::describe(p, a));
        if (satisfies(s, comm)) {
          const Satisfaction c = satisfies(p, comm);
          r.expect(c.holds, name + " commutativity lifts", detail::describe(p, c));
        }
        // An identification image of a linear identity of the base always holds in the power.
        if (is_image_of_satisfied_linear_identity(s, idem)) {
          const Satisfaction i = satisfies(p, idem);
          r.expect(i.holds, name + " idempotency is an identification image and lifts", detail::describe(p, i));
        }
        return true;
      }, limits);
    }
    const FiniteAlgebra fan = catalog::fan_semilattice();
    const FiniteAlgebra pfan = build_power(fan, PowerVariant::nonempty, limits).algebra;
    const Satisfaction s = satisfies(pfan, idem);
    const bool image = is_image_of_satisfied_linear_identity(fan, idem);
    if (satisfies(fan, idem) && !s.holds && !image)
      r.pass("fan semilattice: idempotency does not lift", detail::describe(pfan, s));
    else
      r.fail("fan semilattice: idempotency does not lift",
             s.holds ? "power algebra of the fan semilattice is idempotent" : "identification-image status is wrong");
  });
}

/// For idempotent algebras with one binary operation: the power algebra is
/// idempotent iff every non-empty subset is a subalgebra.
inline SuiteReport suite_cor52(std::size_t max_size = 3, const Limits& limits = default_limits()) {
  return detail::timed("cor52", [&](SuiteReport& r) {
    auto check = [&](const std::string& name, const FiniteAlgebra& a) {
      const FiniteAlgebra p = build_power(a, PowerVariant::nonempty, limits).algebra;
      const bool lhs = is_idempotent(p);
      std::optional<Subset> open;
      for (std::uint64_t m = 1; m < (std::uint64_t{1} << a.size()) && !open; ++m)
        if (!is_closed(a, Subset(m))) open = Subset(m);
      const bool rhs = !open.has_value();
      std::string witness = open ? "non-closed subset " + subset_label(a, *open) : "";
      if (lhs != rhs) witness = std::string("power idempotent: ") + (lhs ? "yes" : "no") + ", all subsets closed: " +
                                (rhs ? "yes" : "no") + (open ? " (" + subset_label(a, *open) + ")" : "");
      if (is_conservative(a) && !(lhs && rhs)) {
        r.fail(name, "conservative algebra with a non-idempotent power");
        return;
      }
      if (lhs == rhs) r.pass(name, witness);
      else r.fail(name, witness);
    };
    check("chain_semilattice(2)", catalog::chain_semilattice(2));
    check("fan_semilattice", catalog::fan_semilattice());
    const Signature sig = catalog::semigroup_signature();
    for (std::size_t n = 1; n <= max_size; ++n) {
      std::size_t index = 0;
      for_each_model(sig, n, {idempotency(sig)}, [&](const FiniteAlgebra& a) {
        check("idempotent groupoid " + std::to_string(n) + "#" + std::to_string(index++) + " " + detail::table_text(a), a);
        return true;
      }, limits);
    }
  });
}

/// Expected cardinality rows for 0..4 generators: |F_SL|, subalgebras with
/// the empty one, reduced subsets, |free CDIS|, 2^(2^n).
inline const std::vector<std::array<std::uint64_t, 5>>& expected_cardinalities() {
  static const std::vector<std::array<std::uint64_t, 5>> rows{
      {0, 1, 1, 2, 2},
      {1, 2, 2, 4, 4},
      {3, 7, 7, 14, 16},
      {7, 61, 61, 122, 256},
      {15, 2480, 2480, 4960, 65536},
  };
  return rows;
}

inline SuiteReport suite_counts(std::size_t max_generators = 4, const Limits& limits = default_limits()) {
  return detail::timed("counts", [&](SuiteReport& r) {
    const auto& expected = expected_cardinalities();
    for (std::size_t n = 0; n <= max_generators && n < expected.size(); ++n) {
      const std::string name = "generators " + std::to_string(n);
      try {
        const CardinalityReport c = cardinality_report(n, limits);
        const std::array<std::uint64_t, 5> got{c.n_free_sl_elements, c.n_subalgebras_incl_empty, c.n_reduced_subsets,
                                               c.n_free_cdis, c.bound_2_2n};
        std::string text;
        for (std::uint64_t v : got) text += (text.empty() ? "(" : ", ") + std::to_string(v);
        text += ")";
        if (got == expected[n] && c.n_free_cdis <= c.bound_2_2n) r.pass(name, text);
        else r.fail(name, "got " + text);
      } catch (const Error& e) {
        r.fail(name, e.what());
      }
    }
  });
}

struct UniversalityCase {
  std::string name;
  FreeModel model;
};

inline std::vector<UniversalityCase> universality_free_models() {
  std::vector<UniversalityCase> out;
  const auto sl1 = free_semilattice({"x"});
  const auto sl2 = free_semilattice({"x", "y"});
  out.push_back({"P>0 F_SL(x)", free_slo_nonempty(sl1, {"x"})});
  out.push_back({"P>0 F_SL(x,y)", free_slo_nonempty(sl2, {"x", "y"})});
  out.push_back({"P F_SL(x,y)", free_slo(sl2, {"x", "y"}, PowerVariant::with_empty, base_identities(sl2))});
  const auto sl1u = free_semilattice_unit({"x"});
  out.push_back({"P>0 F_SL1(x)", free_slo(sl1u, {"x"}, PowerVariant::with_unit, base_identities(sl1u))});
  out.push_back({"CDIS()", free_cdis({})});
  out.push_back({"CDIS(x)", free_cdis({"x"})});
  out.push_back({"CDIS(x,y)", free_cdis({"x", "y"})});
  return out;
}

struct NamedSlo {
  std::string name;
  SloAlgebra algebra;
};

/// Targets whose Omega-reduct is a semilattice under `mul`.
inline std::vector<NamedSlo> universality_targets() {
  std::vector<NamedSlo> out;
  out.push_back({"distributive_chain(2)", require_slo(catalog::distributive_chain(2))});
  out.push_back({"distributive_chain(3)", require_slo(catalog::distributive_chain(3))});
  out.push_back({"boolean_lattice4", require_slo(catalog::boolean_lattice4())});
  out.push_back({"P chain(2) with 0 and 1",
                 require_slo(build_power(catalog::chain_semilattice(2), PowerVariant::with_empty_and_unit))});
  out.push_back({"P>0 chain(3)", require_slo(build_power(catalog::chain_semilattice(3), PowerVariant::nonempty))});
  out.push_back({"CDIS(x)", free_cdis({"x"}).algebra});
  out.push_back({"P>0 F_SL(x,y)/rho",
                 quotient_by_rho(build_power(free_semilattice({"x", "y"}), PowerVariant::nonempty)).algebra});
  return out;
}

inline bool constants_match(const SloAlgebra& free, const SloAlgebra& target) {
  const Signature& s = free.algebra().signature();
  return (!s.zero_symbol() || target.zero()) && (!s.unit_symbol() || target.unit());
}

/// Every generator map into every matching target extends to a homomorphism
/// that is the only one agreeing with the map; unmatched targets are rejected.
inline SuiteReport suite_universality(const Limits& limits = default_limits()) {
  (void)limits;
  return detail::timed("universality", [&](SuiteReport& r) {
    const auto targets = universality_targets();
    for (const auto& fm : universality_free_models()) {
      const FreeModel& free = fm.model;
      {
        std::vector<Elem> identity(free.algebra.size());
        std::iota(identity.begin(), identity.end(), Elem{0});
        std::map<std::string, Elem> h(free.generators.begin(), free.generators.end());
        try {
          const Homomorphism hom = extend_hom(free, h, free.algebra);
          r.expect(hom.image == identity, fm.name + " -> itself by inclusion", "extension is not the identity");
        } catch (const Error& e) {
          r.fail(fm.name + " -> itself by inclusion", e.what());
        }
      }
      for (const auto& target : targets) {
        const std::string pair = fm.name + " -> " + target.name;
        if (!constants_match(free.algebra, target.algebra)) {
          std::map<std::string, Elem> h;
          for (const auto& g : free.generators) h[g.first] = 0;
          try {
            extend_hom(free, h, target.algebra);
            r.fail(pair + " rejected", "target lacks a constant of the free model but the extension succeeded");
          } catch (const HomomorphismError& e) {
            r.pass(pair + " rejected", e.what());
          }
          continue;
        }
        const std::size_t k = free.generators.size();
        for_each_tuple(target.algebra.size(), k, [&](std::span<const Elem> img) {
          std::map<std::string, Elem> h;
          std::map<Elem, Elem> fixed;
          std::string text;
          for (std::size_t i = 0; i < k; ++i) {
            h[free.generators[i].first] = img[i];
            fixed[free.generators[i].second] = img[i];
            text += (i ? "," : "") + free.generators[i].first + "=" + target.algebra.label(img[i]);
          }
          const std::string name = pair + " h(" + text + ")";
          try {
            extend_hom(free, h, target.algebra);
            const std::size_t count = count_homomorphisms(free.algebra, target.algebra, fixed, 2);
            r.expect(count == 1, name, std::to_string(count) + " homomorphisms agree with the generator map");
          } catch (const Error& e) {
            r.fail(name, e.what());
          }
          return true;
        });
      }
    }
  });
}

inline std::vector<SuiteReport> suite_all(std::size_t max_size = 3, const Limits& limits = default_limits()) {
  return {suite_gl(max_size, limits), suite_cor52(max_size, limits), suite_counts(4, limits),
          suite_universality(limits)};
}

} // namespace slo
