#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slo/finite_algebra.hpp"

namespace slo {

enum class PowerVariant { nonempty, with_empty, with_unit, with_empty_and_unit };

inline bool includes_empty(PowerVariant v) {
  return v == PowerVariant::with_empty || v == PowerVariant::with_empty_and_unit;
}
inline bool includes_unit(PowerVariant v) {
  return v == PowerVariant::with_unit || v == PowerVariant::with_empty_and_unit;
}

inline std::string to_string(PowerVariant v) {
  switch (v) {
  case PowerVariant::nonempty: return "nonempty";
  case PowerVariant::with_empty: return "with_empty";
  case PowerVariant::with_unit: return "with_unit";
  case PowerVariant::with_empty_and_unit: return "with_empty_and_unit";
  }
  return "?";
}

inline PowerVariant parse_variant(std::string_view s) {
  for (PowerVariant v : {PowerVariant::nonempty, PowerVariant::with_empty, PowerVariant::with_unit,
                         PowerVariant::with_empty_and_unit})
    if (s == to_string(v)) return v;
  throw ParseError("unknown power variant '" + std::string(s) +
                   "' (expected nonempty, with_empty, with_unit or with_empty_and_unit)");
}

inline std::string subset_label(const FiniteAlgebra& base, Subset s) {
  return subset_label(s, [&](Elem e) { return base.label(e); });
}

/// Pointwise image {w(a1,...,an) | ai in Ai}; empty if any argument is empty.
inline Subset complex_op(const FiniteAlgebra& base, std::size_t op, std::span<const Subset> args) {
  const std::size_t k = base.arity(op);
  if (args.size() != k)
    throw PreconditionError("'" + base.signature().op(op).name + "' expects " + std::to_string(k) + " arguments");
  const Subset universe = Subset::full(base.size());
  std::vector<std::vector<Elem>> members;
  members.reserve(k);
  for (Subset a : args) {
    if (!a.subset_of(universe)) throw PreconditionError("subset argument has elements outside the base carrier");
    if (a.empty()) return Subset{};
    members.push_back(a.members());
  }
  Subset out;
  std::vector<Elem> tuple(k);
  std::vector<std::size_t> pos(k, 0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) tuple[i] = members[i][pos[i]];
    out.insert(base.apply(op, tuple));
    std::size_t p = k;
    while (p > 0) {
      --p;
      if (++pos[p] < members[p].size()) break;
      pos[p] = 0;
      if (p == 0) return out;
    }
    if (k == 0) return out;
  }
}

inline Subset complex_op(const FiniteAlgebra& base, std::string_view symbol, const std::vector<Subset>& args) {
  return complex_op(base, base.op_index(symbol), std::span<const Subset>(args));
}

/// A power algebra together with its base and the subset behind each element.
struct PowerAlgebra {
  FiniteAlgebra base;
  PowerVariant variant = PowerVariant::nonempty;
  FiniteAlgebra algebra;
  std::vector<Subset> subsets;

  Elem index_of(Subset s) const {
    if (!s.subset_of(Subset::full(base.size())) || (s.empty() && !includes_empty(variant)))
      throw PreconditionError("subset is not an element of this power algebra");
    return static_cast<Elem>(includes_empty(variant) ? s.bits() : s.bits() - 1);
  }
  Subset subset(Elem e) const { return subsets.at(e); }
  const std::string& join_symbol() const { return *algebra.signature().join_symbol(); }
};

/// Power algebra of all (non-empty, per variant) subsets under complex
/// operations and union. The carrier is listed in binary-counting order of the
/// subset masks over the base order. Unit variants designate {1}; variants
/// with the empty set designate it as the zero.
inline PowerAlgebra build_power(const FiniteAlgebra& base, PowerVariant variant,
                                const Limits& limits = default_limits()) {
  const std::size_t n = base.size();
  if (n > limits.max_power_base)
    throw ResourceError("power algebra of a " + std::to_string(n) + "-element base exceeds the cap of " +
                        std::to_string(limits.max_power_base));
  const Signature& bsig = base.signature();

  std::optional<Elem> unit;
  if (includes_unit(variant)) {
    const auto found = units(base);
    if (found.size() != 1)
      throw PreconditionError("unit power variant needs exactly one unit, base has " + std::to_string(found.size()));
    if (auto declared = base.unit(); declared && *declared != found.front())
      throw PreconditionError("designated unit of the base is not a unit");
    unit = found.front();
  }

  PowerAlgebra p{base, variant, {}, {}};
  const bool with_empty = includes_empty(variant);
  const std::uint64_t first = with_empty ? 0 : 1;
  const std::uint64_t count = (std::uint64_t{1} << n);
  for (std::uint64_t m = first; m < count; ++m) p.subsets.emplace_back(m);
  std::vector<std::string> carrier;
  carrier.reserve(p.subsets.size());
  for (Subset s : p.subsets) carrier.push_back(subset_label(base, s));
  const std::size_t size = p.subsets.size();
  auto index = [&](Subset s) { return static_cast<Elem>(s.bits() - first); };

  Signature sig("P_" + bsig.name());
  std::vector<std::vector<Elem>> tables;
  for (std::size_t k = 0; k < bsig.op_count(); ++k) {
    if (bsig.is_join(k) || bsig.is_zero(k)) continue;
    const OpSymbol& op = bsig.op(k);
    sig.add_op(op.name, op.arity);
    if (op.arity == 0) {
      tables.push_back({index(Subset::singleton(base.constant(k)))});
      continue;
    }
    std::vector<Subset> args(op.arity);
    tables.push_back(tabulate(size, op.arity, [&](std::span<const Elem> idx) {
      for (std::size_t i = 0; i < op.arity; ++i) args[i] = p.subsets[idx[i]];
      return index(complex_op(base, k, args));
    }));
  }
  const std::string join = sig.fresh_symbol("join");
  sig.set_join(join);
  tables.push_back(tabulate(size, 2, [&](std::span<const Elem> idx) {
    return index(p.subsets[idx[0]] | p.subsets[idx[1]]);
  }));
  if (with_empty) {
    sig.set_zero(sig.fresh_symbol("zero"));
    tables.push_back({index(Subset{})});
  }
  if (unit) {
    if (bsig.unit_symbol()) {
      sig.set_unit(*bsig.unit_symbol());
    } else {
      sig.set_unit(sig.fresh_symbol("one"));
      tables.push_back({index(Subset::singleton(*unit))});
    }
  }
  p.algebra = FiniteAlgebra(std::move(sig), std::move(carrier), std::move(tables));
  return p;
}

namespace detail {
inline Subset complex_term(const FiniteAlgebra& base, const Term& t, const std::vector<std::string>& vars,
                           std::span<const Subset> args) {
  if (t.is_var()) {
    const auto it = std::find(vars.begin(), vars.end(), t.name());
    return args[static_cast<std::size_t>(it - vars.begin())];
  }
  const std::size_t op = base.op_index(t.name());
  std::vector<Subset> inner;
  inner.reserve(t.arity());
  for (const Term& a : t.args()) inner.push_back(complex_term(base, a, vars, args));
  return complex_op(base, op, std::span<const Subset>(inner));
}
} // namespace detail

/// Pointwise image of a linear term's derived operation. `args` follow the
/// first-occurrence order of the term's variables.
inline Subset complex_linear_term(const FiniteAlgebra& base, const Term& t, std::span<const Subset> args) {
  if (!is_linear(t))
    throw PreconditionError("complex_linear_term needs a linear term; linearize '" + to_string(t) +
                            "' and pass each argument once per occurrence");
  check_term(t, base.signature());
  const auto vars = variables(t);
  if (args.size() != vars.size())
    throw PreconditionError("term has " + std::to_string(vars.size()) + " variables, got " +
                            std::to_string(args.size()) + " arguments");
  return detail::complex_term(base, t, vars, args);
}

struct InclusionReport {
  Subset pointwise;    ///< {t(a1,...,am) | ai in Ai}
  Subset power_value;  ///< t*(A1,..,A1,...,Am,..,Am)
  bool contained = false;
  bool proper = false;
};

/// Compare the pointwise image of `t` with its value in the power algebra,
/// obtained by linearizing and repeating each argument per occurrence.
inline InclusionReport nonlinear_inclusion_check(const FiniteAlgebra& base, const Term& t,
                                                 std::span<const Subset> args) {
  check_term(t, base.signature());
  const auto vars = variables(t);
  if (args.size() != vars.size())
    throw PreconditionError("term has " + std::to_string(vars.size()) + " variables, got " +
                            std::to_string(args.size()) + " arguments");
  InclusionReport r;
  std::vector<std::vector<Elem>> members;
  for (Subset a : args) members.push_back(a.members());
  const TermProgram program(t, base.signature(), vars);
  bool any_empty = false;
  for (const auto& m : members) any_empty = any_empty || m.empty();
  if (!any_empty) {
    std::vector<Elem> env(vars.size());
    std::vector<std::size_t> pos(vars.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < vars.size(); ++i) env[i] = members[i][pos[i]];
      r.pointwise.insert(program.eval(base, env));
      std::size_t p = vars.size();
      bool done = true;
      while (p > 0) {
        --p;
        if (++pos[p] < members[p].size()) {
          done = false;
          break;
        }
        pos[p] = 0;
      }
      if (done) break;
    }
  }
  const Linearization lin = linearize(t);
  std::vector<Subset> repeated;
  for (const auto& [fresh, original] : lin.identification) {
    const auto it = std::find(vars.begin(), vars.end(), original);
    repeated.push_back(args[static_cast<std::size_t>(it - vars.begin())]);
  }
  r.power_value = complex_linear_term(base, lin.linear_term, repeated);
  r.contained = r.pointwise.subset_of(r.power_value);
  r.proper = r.contained && r.pointwise != r.power_value;
  return r;
}

} // namespace slo
