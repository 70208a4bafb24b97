#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slo/error.hpp"
#include "slo/signature.hpp"

namespace slo {

/// A finite rooted tree: either a variable leaf or an operation symbol applied
/// to child terms. Constants are operation nodes with no children.
class Term {
public:
  static Term var(std::string name) { return Term(true, std::move(name), {}); }
  static Term op(std::string symbol, std::vector<Term> args = {}) {
    return Term(false, std::move(symbol), std::move(args));
  }

  bool is_var() const { return var_; }
  const std::string& name() const { return name_; }
  std::span<const Term> args() const { return args_; }
  std::size_t arity() const { return args_.size(); }

  std::size_t node_count() const {
    std::size_t n = 1;
    for (const Term& a : args_) n += a.node_count();
    return n;
  }
  std::size_t depth() const {
    std::size_t d = 0;
    for (const Term& a : args_) d = std::max(d, a.depth() + 1);
    return d;
  }

  friend bool operator==(const Term&, const Term&) = default;

private:
  Term(bool is_var, std::string name, std::vector<Term> args)
      : var_(is_var), name_(std::move(name)), args_(std::move(args)) {}

  bool var_ = true;
  std::string name_;
  std::vector<Term> args_;
};

struct Identity {
  Term lhs;
  Term rhs;

  friend bool operator==(const Identity&, const Identity&) = default;
};

/// Prefix rendering, e.g. `mul(x, mul(y, z))`. Inverse of parse_term.
inline std::string to_string(const Term& t) {
  if (t.is_var() || t.arity() == 0) return t.name();
  std::string out = t.name() + "(";
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(t.args()[i]);
  }
  return out + ")";
}

inline std::string to_string(const Identity& id) { return to_string(id.lhs) + " = " + to_string(id.rhs); }

namespace detail {
inline void collect_vars(const Term& t, std::vector<std::string>& order, std::map<std::string, std::size_t>& count) {
  if (t.is_var()) {
    if (count[t.name()]++ == 0) order.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, order, count);
}
} // namespace detail

/// Variables in order of first occurrence (left to right).
inline std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> order;
  std::map<std::string, std::size_t> count;
  detail::collect_vars(t, order, count);
  return order;
}

inline std::vector<std::string> variables(const Identity& id) {
  std::vector<std::string> order;
  std::map<std::string, std::size_t> count;
  detail::collect_vars(id.lhs, order, count);
  detail::collect_vars(id.rhs, order, count);
  return order;
}

inline std::map<std::string, std::size_t> occurrence_counts(const Term& t) {
  std::vector<std::string> order;
  std::map<std::string, std::size_t> count;
  detail::collect_vars(t, order, count);
  return count;
}

inline bool is_linear(const Term& t) {
  for (const auto& [name, k] : occurrence_counts(t))
    if (k > 1) return false;
  return true;
}

inline bool is_linear(const Identity& id) { return is_linear(id.lhs) && is_linear(id.rhs); }

/// Both sides use the same set of variables.
inline bool is_regular(const Identity& id) {
  const auto l = variables(id.lhs);
  const auto r = variables(id.rhs);
  return std::set<std::string>(l.begin(), l.end()) == std::set<std::string>(r.begin(), r.end());
}

/// Throws SemanticError unless every node matches a symbol of `sig` with the
/// declared arity.
inline void check_term(const Term& t, const Signature& sig) {
  if (t.is_var()) return;
  const auto idx = sig.find(t.name());
  if (!idx) throw SemanticError("unknown symbol '" + t.name() + "'");
  if (sig.op(*idx).arity != t.arity())
    throw SemanticError("symbol '" + t.name() + "' expects " + std::to_string(sig.op(*idx).arity) +
                        " arguments, got " + std::to_string(t.arity()));
  for (const Term& a : t.args()) check_term(a, sig);
}

/// Replace variables by terms; unmapped variables are kept.
inline Term substitute(const Term& t, const std::map<std::string, Term>& sigma) {
  if (t.is_var()) {
    auto it = sigma.find(t.name());
    return it == sigma.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(substitute(a, sigma));
  return Term::op(t.name(), std::move(args));
}

inline Term rename(const Term& t, const std::map<std::string, std::string>& names) {
  std::map<std::string, Term> sigma;
  for (const auto& [from, to] : names) sigma.emplace(from, Term::var(to));
  return substitute(t, sigma);
}

/// Rename variables to x1, x2, ... by first occurrence across lhs then rhs.
inline Identity canonical_renaming(const Identity& id) {
  std::map<std::string, std::string> names;
  std::size_t k = 0;
  for (const std::string& v : variables(id)) names.emplace(v, "x" + std::to_string(++k));
  return {rename(id.lhs, names), rename(id.rhs, names)};
}

/// A linear term together with the identification of its fresh variables
/// that recovers the original term.
struct Linearization {
  Term linear_term;
  /// Fresh variable -> original variable, in left-to-right occurrence order.
  std::vector<std::pair<std::string, std::string>> identification;
  /// Original variable -> number of occurrences.
  std::map<std::string, std::size_t> multiplicities;

  Term apply_identification() const {
    std::map<std::string, std::string> names(identification.begin(), identification.end());
    return rename(linear_term, names);
  }
};

namespace detail {
inline Term linearize_into(const Term& t, std::map<std::string, std::size_t>& seen,
                           std::vector<std::pair<std::string, std::string>>& ident) {
  if (t.is_var()) {
    // Fresh names `<var>_<j>`. Splitting at the last underscore recovers (var, j),
    // so distinct originals never collide.
    std::string fresh = t.name() + "_" + std::to_string(++seen[t.name()]);
    ident.emplace_back(fresh, t.name());
    return Term::var(std::move(fresh));
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(linearize_into(a, seen, ident));
  return Term::op(t.name(), std::move(args));
}
} // namespace detail

/// Linear terms are returned unchanged with the identity identification.
inline Linearization linearize(const Term& t) {
  Linearization out{t, {}, occurrence_counts(t)};
  if (is_linear(t)) {
    for (const std::string& v : variables(t)) out.identification.emplace_back(v, v);
    return out;
  }
  std::map<std::string, std::size_t> seen;
  out.linear_term = detail::linearize_into(t, seen, out.identification);
  return out;
}

/// Every identity obtained from a linear identity of `ids` by merging its
/// variables according to a set partition, deduplicated up to variable
/// renaming. Stops once `max_identifications` identities have been produced.
inline std::vector<Identity> identification_images(const std::vector<Identity>& ids,
                                                   std::size_t max_identifications) {
  std::vector<Identity> out;
  std::set<std::string> seen;
  for (const Identity& id : ids) {
    if (!is_linear(id)) throw PreconditionError("identification_images needs linear identities: " + to_string(id));
    const std::vector<std::string> vars = variables(id);
    const std::size_t n = vars.size();
    // Restricted growth strings enumerate set partitions of the variables.
    std::vector<std::size_t> block(n, 0);
    while (true) {
      std::map<std::string, std::string> names;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t first = 0;
        while (block[first] != block[i]) ++first;
        names.emplace(vars[i], vars[first]);
      }
      Identity image = canonical_renaming({rename(id.lhs, names), rename(id.rhs, names)});
      if (seen.insert(to_string(image)).second) {
        if (out.size() >= max_identifications) return out;
        out.push_back(std::move(image));
      }
      // next restricted growth string
      std::size_t i = n;
      bool advanced = false;
      while (i > 1) {
        --i;
        std::size_t prefix_max = 0;
        for (std::size_t j = 0; j < i; ++j) prefix_max = std::max(prefix_max, block[j]);
        if (block[i] <= prefix_max) {
          ++block[i];
          for (std::size_t j = i + 1; j < n; ++j) block[j] = 0;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return out;
}

} // namespace slo
