#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "slo/finite_algebra.hpp"
#include "slo/power_algebra.hpp"

namespace slo {

/// A finite algebra with a designated join and optional zero and unit,
/// validated against the semilattice-ordered laws. Obtain one through
/// check_slo or require_slo.
class SloAlgebra {
public:
  const FiniteAlgebra& algebra() const { return alg_; }
  std::size_t size() const { return alg_.size(); }
  const std::string& label(Elem e) const { return alg_.label(e); }
  std::size_t join_op() const { return join_; }
  const std::string& join_symbol() const { return *alg_.signature().join_symbol(); }
  Elem join(Elem a, Elem b) const { return alg_.apply(join_, {a, b}); }
  std::optional<Elem> zero() const { return alg_.zero(); }
  std::optional<Elem> unit() const { return alg_.unit(); }
  std::vector<std::size_t> omega_ops() const { return alg_.omega_ops(); }
  bool leq(Elem a, Elem b) const { return join(a, b) == b; }

  template <typename Range>
  Elem join_all(const Range& elems) const {
    std::optional<Elem> acc;
    for (Elem e : elems) acc = acc ? join(*acc, e) : e;
    if (acc) return *acc;
    if (auto z = zero()) return *z;
    throw PreconditionError("empty join in an algebra without zero");
  }

private:
  explicit SloAlgebra(FiniteAlgebra alg) : alg_(std::move(alg)), join_(alg_.op_index(*alg_.signature().join_symbol())) {}
  friend struct SloCheck;

  FiniteAlgebra alg_;
  std::size_t join_ = 0;
};

/// The first violated law, with the assignment that witnesses it.
struct Violation {
  std::string law;
  std::vector<std::pair<std::string, std::string>> witness;
  std::string lhs;
  std::string rhs;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json w = nlohmann::ordered_json::object();
    for (const auto& [var, label] : witness) w[var] = label;
    return {{"law", law}, {"witness", w}, {"lhs", lhs}, {"rhs", rhs}};
  }
  std::string describe() const {
    std::string out = law + " fails at";
    for (const auto& [var, label] : witness) out += " " + var + "=" + label;
    return out + ": " + lhs + " != " + rhs;
  }
};

class InvalidSloError : public Error {
public:
  explicit InvalidSloError(Violation v) : Error("not a semilattice ordered algebra: " + v.describe()), violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

private:
  Violation violation_;
};

struct SloCheck {
  std::optional<SloAlgebra> slo;
  std::optional<Violation> violation;

  explicit operator bool() const { return slo.has_value(); }

  static SloCheck valid(FiniteAlgebra alg) { return {SloAlgebra(std::move(alg)), std::nullopt}; }
  static SloCheck invalid(Violation v) { return {std::nullopt, std::move(v)}; }
};

namespace detail {

/// Copy of `alg` whose signature designates `join`, and constants holding
/// `zero` / `unit` (fresh symbols are added when needed).
inline FiniteAlgebra with_designations(const FiniteAlgebra& alg, const std::string& join, std::optional<Elem> zero,
                                       std::optional<Elem> unit) {
  Signature sig = alg.signature();
  auto tables = alg.tables();
  if (!sig.has(join)) throw PreconditionError("join symbol '" + join + "' is not in the signature");
  if (sig.arity(join) != 2) throw PreconditionError("join symbol '" + join + "' is not binary");
  sig.set_join(join);
  auto place = [&](std::optional<Elem> e, bool is_zero) {
    if (!e) return;
    if (*e >= alg.size()) throw PreconditionError("designated constant outside the carrier");
    const auto& existing = is_zero ? sig.zero_symbol() : sig.unit_symbol();
    if (existing) {
      tables[sig.index_of(*existing)] = {*e};
      return;
    }
    const std::string symbol = sig.fresh_symbol(is_zero ? "zero" : "one");
    if (is_zero)
      sig.set_zero(symbol);
    else
      sig.set_unit(symbol);
    tables.push_back({*e});
  };
  place(zero, true);
  place(unit, false);
  return FiniteAlgebra(std::move(sig), alg.carrier(), std::move(tables));
}

} // namespace detail

/// Validate the laws of a (0-)semilattice ordered algebra (with unit): join is
/// a semilattice; every Omega-operation distributes over it in each argument;
/// a zero is least and absorbing; a unit is a unit for every Omega-operation.
/// Zero and unit default to the signature's designations.
inline SloCheck check_slo(const FiniteAlgebra& candidate, const std::string& join,
                          std::optional<Elem> zero = std::nullopt, std::optional<Elem> unit = std::nullopt) {
  if (!zero) zero = candidate.zero();
  if (!unit) unit = candidate.unit();
  const FiniteAlgebra alg = detail::with_designations(candidate, join, zero, unit);
  const std::size_t n = alg.size();
  const std::size_t j = alg.op_index(join);
  auto L = [&](Elem e) { return alg.label(e); };
  auto J = [&](Elem a, Elem b) { return alg.apply(j, {a, b}); };

  for (Elem x = 0; x < n; ++x)
    if (J(x, x) != x) return SloCheck::invalid({"join-idempotent", {{"x", L(x)}}, L(J(x, x)), L(x)});
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (J(x, y) != J(y, x))
        return SloCheck::invalid({"join-commutative", {{"x", L(x)}, {"y", L(y)}}, L(J(x, y)), L(J(y, x))});
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (J(x, J(y, z)) != J(J(x, y), z))
          return SloCheck::invalid(
              {"join-associative", {{"x", L(x)}, {"y", L(y)}, {"z", L(z)}}, L(J(x, J(y, z))), L(J(J(x, y), z))});

  for (std::size_t op : alg.omega_ops()) {
    const std::string& name = alg.signature().op(op).name;
    const std::size_t k = alg.arity(op);
    std::optional<Violation> found;
    for (std::size_t pos = 0; pos < k && !found; ++pos) {
      std::vector<Elem> a(k), b(k), c(k);
      for_each_tuple(n, k + 1, [&](std::span<const Elem> t) {
        std::copy(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k), a.begin());
        b = a;
        c = a;
        const Elem y = t[k];
        b[pos] = y;
        c[pos] = J(a[pos], y);
        const Elem lhs = alg.apply(op, c);
        const Elem rhs = J(alg.apply(op, a), alg.apply(op, b));
        if (lhs == rhs) return true;
        Violation v{"distributivity[" + name + "," + std::to_string(pos + 1) + "]", {}, L(lhs), L(rhs)};
        for (std::size_t i = 0; i < k; ++i) v.witness.emplace_back("x" + std::to_string(i + 1), L(a[i]));
        v.witness.emplace_back("y", L(y));
        found = std::move(v);
        return false;
      });
    }
    if (found) return SloCheck::invalid(std::move(*found));
  }

  if (zero) {
    for (Elem x = 0; x < n; ++x)
      if (J(*zero, x) != x) return SloCheck::invalid({"zero-least", {{"x", L(x)}}, L(J(*zero, x)), L(x)});
    for (std::size_t op : alg.omega_ops()) {
      const std::size_t k = alg.arity(op);
      std::optional<Violation> found;
      for (std::size_t pos = 0; pos < k && !found; ++pos) {
        std::vector<Elem> a(k);
        for_each_tuple(n, k, [&](std::span<const Elem> t) {
          std::copy(t.begin(), t.end(), a.begin());
          a[pos] = *zero;
          const Elem v = alg.apply(op, a);
          if (v == *zero) return true;
          Violation viol{"zero-absorbing[" + alg.signature().op(op).name + "," + std::to_string(pos + 1) + "]", {},
                         L(v), L(*zero)};
          for (std::size_t i = 0; i < k; ++i) viol.witness.emplace_back("x" + std::to_string(i + 1), L(a[i]));
          found = std::move(viol);
          return false;
        });
      }
      if (found) return SloCheck::invalid(std::move(*found));
    }
  }

  if (unit) {
    for (std::size_t op : alg.omega_ops()) {
      const std::size_t k = alg.arity(op);
      std::vector<Elem> a(k, *unit);
      for (std::size_t pos = 0; pos < k; ++pos) {
        for (Elem x = 0; x < n; ++x) {
          a[pos] = x;
          const Elem v = alg.apply(op, a);
          if (v != x)
            return SloCheck::invalid(
                {"unit[" + alg.signature().op(op).name + "," + std::to_string(pos + 1) + "]", {{"x", L(x)}}, L(v), L(x)});
        }
        a[pos] = *unit;
      }
    }
  }
  return SloCheck::valid(alg);
}

/// check_slo using the signature's join designation.
inline SloCheck check_slo(const FiniteAlgebra& candidate) {
  if (!candidate.signature().join_symbol()) throw PreconditionError("signature designates no join symbol");
  return check_slo(candidate, *candidate.signature().join_symbol());
}

inline SloAlgebra require_slo(const FiniteAlgebra& candidate, const std::string& join,
                              std::optional<Elem> zero = std::nullopt, std::optional<Elem> unit = std::nullopt) {
  SloCheck c = check_slo(candidate, join, zero, unit);
  if (!c) throw InvalidSloError(*c.violation);
  return std::move(*c.slo);
}

inline SloAlgebra require_slo(const FiniteAlgebra& candidate) {
  SloCheck c = check_slo(candidate);
  if (!c) throw InvalidSloError(*c.violation);
  return std::move(*c.slo);
}

inline SloAlgebra require_slo(const PowerAlgebra& p) { return require_slo(p.algebra); }

/// x <= y iff x + y = y.
class NaturalOrder {
public:
  explicit NaturalOrder(const SloAlgebra& s) : n_(s.size()), rel_(n_ * n_) {
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b) rel_[a * n_ + b] = s.leq(a, b);
  }
  bool leq(Elem a, Elem b) const { return rel_[a * n_ + b]; }
  bool comparable(Elem a, Elem b) const { return leq(a, b) || leq(b, a); }
  std::size_t size() const { return n_; }
  std::vector<std::pair<Elem, Elem>> pairs() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b)
        if (leq(a, b)) out.emplace_back(a, b);
    return out;
  }

private:
  std::size_t n_;
  std::vector<bool> rel_;
};

inline NaturalOrder natural_order(const SloAlgebra& s) { return NaturalOrder(s); }

/// Closure of X under the Omega-operations and Omega-constants (join and zero
/// excluded). Sorted.
inline std::vector<Elem> full_subreduct(const SloAlgebra& s, const std::vector<Elem>& generators) {
  std::vector<std::size_t> ops = s.omega_ops();
  for (std::size_t c : s.algebra().signature().omega_constants()) ops.push_back(c);
  for (Elem g : generators)
    if (g >= s.size()) throw PreconditionError("generator outside the carrier");
  return close_under(s.algebra(), ops, generators);
}

struct DisjunctiveForm {
  std::vector<Elem> parts;
  Elem target = 0;
};

class GenerationError : public Error {
public:
  GenerationError(const std::string& msg, std::optional<Elem> achieved) : Error(msg), achieved_(achieved) {}
  std::optional<Elem> achieved() const { return achieved_; }

private:
  std::optional<Elem> achieved_;
};

/// Express `target` as a join of full-subreduct elements: the maximal
/// subreduct elements below it. The zero has the empty decomposition.
inline DisjunctiveForm disjunctive_form(const SloAlgebra& s, const std::vector<Elem>& generators, Elem target) {
  if (target >= s.size()) throw PreconditionError("target outside the carrier");
  const std::vector<Elem> sub = full_subreduct(s, generators);
  std::vector<Elem> below;
  for (Elem u : sub)
    if (s.leq(u, target)) below.push_back(u);
  if (below.empty()) {
    if (s.zero() == target) return {{}, target};
    throw GenerationError("no subreduct element lies below '" + s.label(target) + "'; X does not generate", std::nullopt);
  }
  const Elem achieved = s.join_all(below);
  if (achieved != target)
    throw GenerationError("X does not generate '" + s.label(target) + "': the subreduct elements below it join to '" +
                              s.label(achieved) + "'",
                          achieved);
  DisjunctiveForm out{{}, target};
  for (Elem u : below) {
    const bool dominated = std::any_of(below.begin(), below.end(), [&](Elem v) { return v != u && s.leq(u, v); });
    if (!dominated) out.parts.push_back(u);
  }
  return out;
}

namespace detail {
inline void require_omega_term(const SloAlgebra& s, const Term& t) {
  check_term(t, s.algebra().signature());
  if (!t.is_var() && t.name() == s.join_symbol())
    throw PreconditionError("term uses the join symbol; expected an Omega-term");
  for (const Term& a : t.args()) require_omega_term(s, a);
}
} // namespace detail

/// The derived operation of `t` distributes over join in every variable.
inline bool word_op_distributes(const SloAlgebra& s, const Term& t) {
  detail::require_omega_term(s, t);
  const auto vars = variables(t);
  const std::size_t k = vars.size();
  const TermProgram program(t, s.algebra().signature(), vars);
  const FiniteAlgebra& alg = s.algebra();
  for (std::size_t pos = 0; pos < k; ++pos) {
    std::vector<Elem> a(k), b(k), c(k);
    const bool ok = for_each_tuple(s.size(), k + 1, [&](std::span<const Elem> t) {
      std::copy(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k), a.begin());
      b = a;
      c = a;
      b[pos] = t[k];
      c[pos] = s.join(a[pos], t[k]);
      return program.eval(alg, c) == s.join(program.eval(alg, a), program.eval(alg, b));
    });
    if (!ok) return false;
  }
  return true;
}

/// For all x, y: x + y equals the join of w over all 2^n argument patterns
/// drawn from {x, y}.
inline bool idempotency_criterion(const SloAlgebra& s, const std::string& symbol) {
  const std::size_t op = s.algebra().op_index(symbol);
  const std::size_t k = s.algebra().arity(op);
  if (k == 0) throw PreconditionError("idempotency criterion needs an operation of positive arity");
  if (op == s.join_op()) throw PreconditionError("idempotency criterion applies to Omega-operations");
  std::vector<Elem> args(k);
  for (Elem x = 0; x < s.size(); ++x)
    for (Elem y = 0; y < s.size(); ++y) {
      std::optional<Elem> acc;
      for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k); ++pattern) {
        for (std::size_t i = 0; i < k; ++i) args[i] = ((pattern >> i) & 1U) != 0 ? y : x;
        const Elem v = s.algebra().apply(op, args);
        acc = acc ? s.join(*acc, v) : v;
      }
      if (*acc != s.join(x, y)) return false;
    }
  return true;
}

} // namespace slo
