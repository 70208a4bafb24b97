#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "slo/error.hpp"

namespace slo {

using Elem = std::uint32_t;

/// A subset of a base carrier of at most 64 elements, stored as a bit mask
/// over base indices. Equal sets are equal values, so the representation is
/// canonical.
class Subset {
public:
  static constexpr std::size_t max_base = 64;

  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}

  static Subset of(std::initializer_list<Elem> members) {
    Subset s;
    for (Elem e : members) s.insert(e);
    return s;
  }
  template <typename Range>
  static Subset from(const Range& members) {
    Subset s;
    for (auto e : members) s.insert(static_cast<Elem>(e));
    return s;
  }
  static Subset singleton(Elem e) { return of({e}); }
  static Subset full(std::size_t n) {
    check_base(n);
    return Subset(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  static void check_base(std::size_t n) {
    if (n > max_base)
      throw ResourceError("subset base of " + std::to_string(n) + " elements exceeds 64");
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(Elem e) const { return e < 64 && ((bits_ >> e) & 1U) != 0; }
  constexpr bool is_singleton() const { return std::has_single_bit(bits_); }

  void insert(Elem e) {
    if (e >= 64) throw ResourceError("subset member index exceeds 64");
    bits_ |= std::uint64_t{1} << e;
  }
  void erase(Elem e) {
    if (e < 64) bits_ &= ~(std::uint64_t{1} << e);
  }

  /// Lowest member. Undefined on the empty set.
  constexpr Elem first() const { return static_cast<Elem>(std::countr_zero(bits_)); }

  std::vector<Elem> members() const {
    std::vector<Elem> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<Elem>(std::countr_zero(b)));
    return out;
  }

  constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
  Subset& operator|=(Subset o) {
    bits_ |= o.bits_;
    return *this;
  }
  friend constexpr bool operator==(Subset, Subset) = default;

private:
  std::uint64_t bits_ = 0;
};

/// Order by size, then lexicographically by member indices.
inline bool canonical_less(Subset a, Subset b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.members() < b.members();
}

/// "{a,b}" with members in base order.
template <typename LabelOf>
std::string subset_label(Subset s, LabelOf&& label_of, const char* open = "{", const char* close = "}") {
  std::string out = open;
  bool first = true;
  for (Elem e : s.members()) {
    if (!first) out += ',';
    out += label_of(e);
    first = false;
  }
  out += close;
  return out;
}

} // namespace slo
