#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slo/error.hpp"
#include "slo/limits.hpp"
#include "slo/sig_term.hpp"
#include "slo/subset.hpp"

namespace slo {

/// A finite algebra given by one total operation table per symbol.
///
/// Elements are carrier indices 0..n-1 with a label for each. The table of an
/// n-ary symbol is stored row-major with the first argument outermost; a
/// constant has a one-entry table.
class FiniteAlgebra {
public:
  FiniteAlgebra() = default;

  FiniteAlgebra(Signature sig, std::vector<std::string> carrier, std::vector<std::vector<Elem>> tables)
      : sig_(std::move(sig)), carrier_(std::move(carrier)), tables_(std::move(tables)) {
    sig_.validate();
    if (tables_.size() != sig_.op_count())
      throw SemanticError("expected " + std::to_string(sig_.op_count()) + " tables, got " +
                          std::to_string(tables_.size()));
    const std::size_t n = carrier_.size();
    if (n == 0)
      for (const OpSymbol& op : sig_.ops())
        if (op.arity == 0) throw SemanticError("the empty algebra cannot interpret constant '" + op.name + "'");
    for (std::size_t i = 0; i < n; ++i) {
      if (!index_.emplace(carrier_[i], static_cast<Elem>(i)).second)
        throw SemanticError("duplicate carrier label '" + carrier_[i] + "'");
    }
    for (std::size_t k = 0; k < tables_.size(); ++k) {
      const std::size_t expected = table_size(n, sig_.op(k).arity);
      if (tables_[k].size() != expected)
        throw SemanticError("table of '" + sig_.op(k).name + "' has " + std::to_string(tables_[k].size()) +
                            " entries, expected " + std::to_string(expected));
      for (Elem v : tables_[k])
        if (v >= n) throw SemanticError("table of '" + sig_.op(k).name + "' has an entry outside the carrier");
    }
  }

  static std::size_t table_size(std::size_t n, std::size_t arity) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (n != 0 && s > (std::size_t{1} << 40) / n) throw ResourceError("operation table too large");
      s *= n;
    }
    return s;
  }

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return carrier_.size(); }
  const std::vector<std::string>& carrier() const { return carrier_; }
  const std::string& label(Elem e) const { return carrier_.at(e); }

  std::optional<Elem> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Elem element(std::string_view label) const {
    if (auto e = find(label)) return *e;
    throw SemanticError("unknown element '" + std::string(label) + "'");
  }

  std::size_t op_index(std::string_view symbol) const { return sig_.index_of(symbol); }
  std::size_t arity(std::size_t op) const { return sig_.op(op).arity; }
  const std::vector<Elem>& table(std::size_t op) const { return tables_.at(op); }
  const std::vector<std::vector<Elem>>& tables() const { return tables_; }

  Elem apply(std::size_t op, std::span<const Elem> args) const {
    const std::size_t n = carrier_.size();
    std::size_t idx = 0;
    for (Elem a : args) idx = idx * n + a;
    return tables_[op][idx];
  }
  Elem apply(std::size_t op, std::initializer_list<Elem> args) const {
    return apply(op, std::span<const Elem>(args.begin(), args.size()));
  }
  Elem apply(std::string_view symbol, std::initializer_list<Elem> args) const {
    return apply(op_index(symbol), args);
  }
  Elem constant(std::size_t op) const { return tables_.at(op).at(0); }

  std::optional<Elem> zero() const {
    if (!sig_.zero_symbol()) return std::nullopt;
    return constant(op_index(*sig_.zero_symbol()));
  }
  std::optional<Elem> unit() const {
    if (!sig_.unit_symbol()) return std::nullopt;
    return constant(op_index(*sig_.unit_symbol()));
  }

  std::vector<std::size_t> omega_ops() const { return sig_.omega_ops(); }

  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.sig_ == b.sig_ && a.carrier_ == b.carrier_ && a.tables_ == b.tables_;
  }

private:
  Signature sig_;
  std::vector<std::string> carrier_;
  std::vector<std::vector<Elem>> tables_;
  std::unordered_map<std::string, Elem> index_;
};

/// Build a table by calling `fn(args)` for every argument tuple.
template <typename Fn>
std::vector<Elem> tabulate(std::size_t n, std::size_t arity, Fn&& fn) {
  std::vector<Elem> table(FiniteAlgebra::table_size(n, arity));
  std::vector<Elem> args(arity, 0);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    table[idx] = static_cast<Elem>(fn(std::span<const Elem>(args)));
    for (std::size_t p = arity; p-- > 0;) {
      if (++args[p] < n) break;
      args[p] = 0;
    }
  }
  return table;
}

/// Visit every tuple in {0..n-1}^k in lexicographic order. Stops when `fn`
/// returns false; returns false in that case.
template <typename Fn>
bool for_each_tuple(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > 0 && n == 0) return true;
  std::vector<Elem> t(k, 0);
  while (true) {
    if (!fn(std::span<const Elem>(t))) return false;
    std::size_t p = k;
    while (p > 0) {
      --p;
      if (++t[p] < n) break;
      t[p] = 0;
      if (p == 0) return true;
    }
    if (k == 0) return true;
  }
}

/// A term compiled against a signature and a fixed variable order, for fast
/// repeated evaluation.
class TermProgram {
public:
  TermProgram(const Term& t, const Signature& sig, const std::vector<std::string>& var_order) {
    check_term(t, sig);
    compile(t, sig, var_order);
  }

  Elem eval(const FiniteAlgebra& alg, std::span<const Elem> env) const {
    std::vector<Elem> stack;
    stack.reserve(code_.size());
    for (const Node& node : code_) {
      if (node.is_var) {
        stack.push_back(env[node.index]);
        continue;
      }
      const std::size_t base = stack.size() - node.arity;
      const Elem v = alg.apply(node.index, std::span<const Elem>(stack.data() + base, node.arity));
      stack.resize(base);
      stack.push_back(v);
    }
    return stack.back();
  }

private:
  struct Node {
    bool is_var;
    std::size_t index;
    std::size_t arity;
  };

  void compile(const Term& t, const Signature& sig, const std::vector<std::string>& vars) {
    if (t.is_var()) {
      auto it = std::find(vars.begin(), vars.end(), t.name());
      if (it == vars.end()) throw PreconditionError("unbound variable '" + t.name() + "'");
      code_.push_back({true, static_cast<std::size_t>(it - vars.begin()), 0});
      return;
    }
    for (const Term& a : t.args()) compile(a, sig, vars);
    code_.push_back({false, sig.index_of(t.name()), t.arity()});
  }

  std::vector<Node> code_;
};

using Env = std::map<std::string, Elem>;

inline Elem eval_term(const FiniteAlgebra& alg, const Term& t, const Env& env) {
  const std::vector<std::string> vars = variables(t);
  std::vector<Elem> values;
  values.reserve(vars.size());
  for (const std::string& v : vars) {
    auto it = env.find(v);
    if (it == env.end()) throw PreconditionError("unbound variable '" + v + "'");
    if (it->second >= alg.size()) throw PreconditionError("variable '" + v + "' bound outside the carrier");
    values.push_back(it->second);
  }
  return TermProgram(t, alg.signature(), vars).eval(alg, values);
}

struct Satisfaction {
  bool holds = true;
  /// A failing assignment when !holds.
  Env counterexample;
  Elem lhs_value = 0;
  Elem rhs_value = 0;

  explicit operator bool() const { return holds; }
};

inline Satisfaction satisfies(const FiniteAlgebra& alg, const Identity& id) {
  const std::vector<std::string> vars = variables(id);
  const TermProgram lhs(id.lhs, alg.signature(), vars);
  const TermProgram rhs(id.rhs, alg.signature(), vars);
  Satisfaction result;
  for_each_tuple(alg.size(), vars.size(), [&](std::span<const Elem> env) {
    const Elem l = lhs.eval(alg, env);
    const Elem r = rhs.eval(alg, env);
    if (l == r) return true;
    result.holds = false;
    for (std::size_t i = 0; i < vars.size(); ++i) result.counterexample.emplace(vars[i], env[i]);
    result.lhs_value = l;
    result.rhs_value = r;
    return false;
  });
  return result;
}

/// Every Omega-operation of positive arity satisfies w(x,...,x) = x.
inline bool is_idempotent(const FiniteAlgebra& alg) {
  for (std::size_t op : alg.omega_ops()) {
    std::vector<Elem> args(alg.arity(op));
    for (Elem x = 0; x < alg.size(); ++x) {
      std::fill(args.begin(), args.end(), x);
      if (alg.apply(op, args) != x) return false;
    }
  }
  return true;
}

/// Any two Omega-operations commute (including each with itself).
inline bool is_entropic(const FiniteAlgebra& alg, const Limits& limits = default_limits()) {
  const std::size_t n = alg.size();
  const auto ops = alg.omega_ops();
  for (std::size_t w : ops) {
    for (std::size_t f : ops) {
      const std::size_t m = alg.arity(w);
      const std::size_t k = alg.arity(f);
      // Matrix x[i][j], i < k rows (arguments of f), j < m columns (arguments of w).
      long double cost = 1;
      for (std::size_t i = 0; i < m * k; ++i) cost *= static_cast<long double>(n);
      if (cost > static_cast<long double>(limits.max_tables))
        throw ResourceError("entropic check over " + std::to_string(m * k) + " variables exceeds the cap");
      std::vector<Elem> inner(k), outer(m), inner2(m), outer2(k);
      const bool ok = for_each_tuple(n, m * k, [&](std::span<const Elem> x) {
        for (std::size_t j = 0; j < m; ++j) {
          for (std::size_t i = 0; i < k; ++i) inner[i] = x[i * m + j];
          outer[j] = alg.apply(f, inner);
        }
        const Elem lhs = alg.apply(w, outer);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < m; ++j) inner2[j] = x[i * m + j];
          outer2[i] = alg.apply(w, inner2);
        }
        return lhs == alg.apply(f, outer2);
      });
      if (!ok) return false;
    }
  }
  return true;
}

/// Every Omega-operation is invariant under all permutations of its arguments.
inline bool is_symmetric(const FiniteAlgebra& alg) {
  for (std::size_t op : alg.omega_ops()) {
    const std::size_t k = alg.arity(op);
    std::vector<Elem> sorted(k);
    const bool ok = for_each_tuple(alg.size(), k, [&](std::span<const Elem> args) {
      std::copy(args.begin(), args.end(), sorted.begin());
      std::sort(sorted.begin(), sorted.end());
      return alg.apply(op, args) == alg.apply(op, sorted);
    });
    if (!ok) return false;
  }
  return true;
}

/// Every Omega-operation returns one of its arguments.
inline bool is_conservative(const FiniteAlgebra& alg) {
  for (std::size_t op : alg.omega_ops()) {
    const bool ok = for_each_tuple(alg.size(), alg.arity(op), [&](std::span<const Elem> args) {
      const Elem v = alg.apply(op, args);
      return std::find(args.begin(), args.end(), v) != args.end();
    });
    if (!ok) return false;
  }
  return true;
}

/// All elements that are a unit for every Omega-operation of positive arity.
inline std::vector<Elem> units(const FiniteAlgebra& alg) {
  std::vector<Elem> out;
  const auto ops = alg.omega_ops();
  for (Elem a = 0; a < alg.size(); ++a) {
    bool unit = true;
    for (std::size_t op : ops) {
      std::vector<Elem> args(alg.arity(op), a);
      for (std::size_t pos = 0; pos < args.size() && unit; ++pos) {
        for (Elem x = 0; x < alg.size() && unit; ++x) {
          args[pos] = x;
          unit = alg.apply(op, args) == x;
        }
        args[pos] = a;
      }
      if (!unit) break;
    }
    if (unit) out.push_back(a);
  }
  return out;
}

/// Same carrier labels in the same order, the same symbols with the same
/// tables (in any declaration order) and the same join, zero and unit
/// designations. Returns the first difference.
inline std::optional<std::string> structural_difference(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.carrier() != b.carrier()) return "carriers differ";
  const Signature& sa = a.signature();
  const Signature& sb = b.signature();
  if (sa.op_count() != sb.op_count()) return "different numbers of operations";
  for (std::size_t k = 0; k < sa.op_count(); ++k) {
    const auto other = sb.find(sa.op(k).name);
    if (!other || sb.op(*other).arity != sa.op(k).arity) return "no matching symbol for '" + sa.op(k).name + "'";
    if (a.table(k) != b.table(*other)) return "tables of '" + sa.op(k).name + "' differ";
  }
  if (sa.join_symbol() != sb.join_symbol()) return "join designations differ";
  if (sa.zero_symbol() != sb.zero_symbol()) return "zero designations differ";
  if (sa.unit_symbol() != sb.unit_symbol()) return "unit designations differ";
  return std::nullopt;
}

/// Least superset of `seed` closed under the given operations. Constants among
/// `ops` are added unconditionally. Returns a sorted list.
inline std::vector<Elem> close_under(const FiniteAlgebra& alg, const std::vector<std::size_t>& ops,
                                     std::vector<Elem> seed) {
  std::vector<bool> in(alg.size(), false);
  std::vector<Elem> members;
  auto add = [&](Elem e) {
    if (!in[e]) {
      in[e] = true;
      members.push_back(e);
    }
  };
  for (Elem e : seed) add(e);
  for (std::size_t op : ops)
    if (alg.arity(op) == 0) add(alg.constant(op));
  std::size_t done = 0;
  while (done < members.size()) {
    const std::size_t old = done;
    const std::size_t current = members.size();
    for (std::size_t op : ops) {
      const std::size_t k = alg.arity(op);
      if (k == 0) continue;
      std::vector<Elem> args(k);
      for_each_tuple(current, k, [&](std::span<const Elem> pick) {
        // Skip tuples already examined in an earlier round.
        if (*std::max_element(pick.begin(), pick.end()) < old) return true;
        for (std::size_t i = 0; i < k; ++i) args[i] = members[pick[i]];
        add(alg.apply(op, args));
        return true;
      });
    }
    done = current;
  }
  std::sort(members.begin(), members.end());
  return members;
}

} // namespace slo
