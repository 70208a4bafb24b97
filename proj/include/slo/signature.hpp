#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slo/error.hpp"

namespace slo {

struct OpSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const OpSymbol&, const OpSymbol&) = default;
};

/// Finitary operation symbols with optional join, zero and unit designations.
///
/// Constants are 0-ary symbols. The join symbol is binary and is the
/// semilattice operation; it is not one of the Omega-operations. The zero is a
/// constant of the join semilattice and is likewise excluded from Omega, while
/// the unit and any plain constants belong to Omega.
class Signature {
public:
  Signature() = default;
  explicit Signature(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  const std::vector<OpSymbol>& ops() const { return ops_; }
  std::size_t op_count() const { return ops_.size(); }
  const OpSymbol& op(std::size_t i) const { return ops_.at(i); }

  const std::optional<std::string>& join_symbol() const { return join_; }
  const std::optional<std::string>& zero_symbol() const { return zero_; }
  const std::optional<std::string>& unit_symbol() const { return unit_; }

  Signature& add_op(std::string symbol, std::size_t arity) {
    if (symbol.empty()) throw SemanticError("empty operation symbol");
    if (find(symbol)) throw SemanticError("duplicate symbol '" + symbol + "'");
    ops_.push_back({std::move(symbol), arity});
    return *this;
  }

  /// Designate the join. Declares a binary symbol if absent.
  Signature& set_join(const std::string& symbol) {
    if (!find(symbol)) add_op(symbol, 2);
    if (arity(symbol) != 2) throw SemanticError("join symbol '" + symbol + "' must have arity 2");
    join_ = symbol;
    return *this;
  }
  Signature& set_zero(const std::string& symbol) {
    declare_constant(symbol, "zero");
    zero_ = symbol;
    return *this;
  }
  Signature& set_unit(const std::string& symbol) {
    declare_constant(symbol, "unit");
    unit_ = symbol;
    return *this;
  }
  Signature& clear_join() {
    join_.reset();
    return *this;
  }

  std::optional<std::size_t> find(std::string_view symbol) const {
    for (std::size_t i = 0; i < ops_.size(); ++i)
      if (ops_[i].name == symbol) return i;
    return std::nullopt;
  }
  std::size_t index_of(std::string_view symbol) const {
    if (auto i = find(symbol)) return *i;
    throw SemanticError("unknown symbol '" + std::string(symbol) + "' in signature '" + name_ + "'");
  }
  std::size_t arity(std::string_view symbol) const { return ops_[index_of(symbol)].arity; }
  bool has(std::string_view symbol) const { return find(symbol).has_value(); }

  bool is_join(std::size_t i) const { return join_ && ops_.at(i).name == *join_; }
  bool is_zero(std::size_t i) const { return zero_ && ops_.at(i).name == *zero_; }
  bool is_unit(std::size_t i) const { return unit_ && ops_.at(i).name == *unit_; }

  /// Omega-operations of positive arity: everything except the join and constants.
  std::vector<std::size_t> omega_ops() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ops_.size(); ++i)
      if (ops_[i].arity > 0 && !is_join(i)) out.push_back(i);
    return out;
  }
  /// Omega-constants: 0-ary symbols other than the zero.
  std::vector<std::size_t> omega_constants() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ops_.size(); ++i)
      if (ops_[i].arity == 0 && !is_zero(i)) out.push_back(i);
    return out;
  }

  /// `preferred`, or `preferred` with a numeric suffix if already taken.
  std::string fresh_symbol(const std::string& preferred) const {
    if (!has(preferred)) return preferred;
    for (std::size_t k = 1;; ++k) {
      std::string candidate = preferred + std::to_string(k);
      if (!has(candidate)) return candidate;
    }
  }

  void validate() const {
    for (std::size_t i = 0; i < ops_.size(); ++i)
      for (std::size_t j = i + 1; j < ops_.size(); ++j)
        if (ops_[i].name == ops_[j].name) throw SemanticError("duplicate symbol '" + ops_[i].name + "'");
    if (join_ && arity(*join_) != 2) throw SemanticError("join symbol must have arity 2");
    if (zero_ && arity(*zero_) != 0) throw SemanticError("zero symbol must have arity 0");
    if (unit_ && arity(*unit_) != 0) throw SemanticError("unit symbol must have arity 0");
    if (zero_ && unit_ && *zero_ == *unit_) throw SemanticError("zero and unit must be distinct symbols");
  }

  friend bool operator==(const Signature&, const Signature&) = default;

private:
  void declare_constant(const std::string& symbol, const char* role) {
    if (!find(symbol)) add_op(symbol, 0);
    if (arity(symbol) != 0)
      throw SemanticError(std::string(role) + " symbol '" + symbol + "' must have arity 0");
  }

  std::string name_;
  std::vector<OpSymbol> ops_;
  std::optional<std::string> join_;
  std::optional<std::string> zero_;
  std::optional<std::string> unit_;
};

} // namespace slo
