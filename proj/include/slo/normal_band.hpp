#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "slo/finite_algebra.hpp"
#include "slo/free_constructions.hpp"

#ifndef SLO_NORMAL_BAND
#define SLO_NORMAL_BAND 1
#endif

namespace slo {

namespace detail {

/// Words over k letters up to a maximal length, numbered by length and then
/// base-k value.
class WordSpace {
public:
  WordSpace(std::size_t letters, std::size_t max_len) : k_(letters), max_len_(max_len) {
    offset_.push_back(0);
    std::uint64_t count = 1;
    for (std::size_t len = 1; len <= max_len_; ++len) {
      offset_.push_back(offset_.back() + count);
      count *= k_;
    }
    total_ = offset_.back() + count;
  }
  std::uint64_t size() const { return total_; }
  std::uint64_t code(const std::vector<std::uint8_t>& w) const {
    std::uint64_t v = 0;
    for (std::uint8_t c : w) v = v * k_ + c;
    return offset_[w.size()] + v;
  }
  std::vector<std::uint8_t> word(std::uint64_t code) const {
    std::size_t len = 0;
    while (len < max_len_ && code >= offset_[len + 1]) ++len;
    std::uint64_t v = code - offset_[len];
    std::vector<std::uint8_t> w(len);
    for (std::size_t i = len; i > 0; --i) {
      w[i - 1] = static_cast<std::uint8_t>(v % k_);
      v /= k_;
    }
    return w;
  }

private:
  std::size_t k_;
  std::size_t max_len_;
  std::vector<std::uint64_t> offset_;
  std::uint64_t total_ = 0;
};

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::uint32_t{0}); }
  std::uint32_t find(std::uint32_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::uint32_t> parent_;
};

} // namespace detail

/// Classes of non-empty words over `letters` letters of length at most
/// `max_len`, under the congruence generated by uu = u and pqrs = prqs,
/// using only rewriting steps that stay within the length bound. Each class is
/// returned with its (first letter, content mask, last letter).
struct WordOracle {
  std::size_t classes = 0;
  bool well_defined = true; // every class has a single (first, content, last)
  std::vector<std::tuple<std::uint8_t, std::uint64_t, std::uint8_t>> invariants;
};

inline WordOracle normal_band_word_oracle(std::size_t letters, std::size_t max_len) {
  if (letters == 0) return {};
  const detail::WordSpace space(letters, max_len);
  if (space.size() > (std::uint64_t{1} << 26)) throw ResourceError("word oracle space too large");
  detail::UnionFind uf(space.size());
  for (std::uint64_t c = 1; c < space.size(); ++c) {
    const auto w = space.word(c);
    const std::size_t len = w.size();
    // uu -> u for every square factor
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t half = 1; i + 2 * half <= len; ++half) {
        if (!std::equal(w.begin() + i, w.begin() + i + half, w.begin() + i + half)) continue;
        std::vector<std::uint8_t> r(w.begin(), w.begin() + i + half);
        r.insert(r.end(), w.begin() + i + 2 * half, w.end());
        uf.unite(static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(space.code(r)));
      }
    // p q r s -> p r q s on letters
    for (std::size_t i = 1; i + 2 < len; ++i) {
      if (w[i] == w[i + 1]) continue;
      auto r = w;
      std::swap(r[i], r[i + 1]);
      uf.unite(static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(space.code(r)));
    }
  }
  WordOracle out;
  std::vector<std::int64_t> seen(space.size(), -1);
  for (std::uint64_t c = 1; c < space.size(); ++c) {
    const auto w = space.word(c);
    std::uint64_t content = 0;
    for (std::uint8_t l : w) content |= std::uint64_t{1} << l;
    const auto inv = std::tuple{w.front(), content, w.back()};
    const std::uint32_t root = uf.find(static_cast<std::uint32_t>(c));
    if (seen[root] < 0) {
      seen[root] = static_cast<std::int64_t>(out.invariants.size());
      out.invariants.push_back(inv);
    } else if (out.invariants[static_cast<std::size_t>(seen[root])] != inv) {
      out.well_defined = false;
    }
  }
  out.classes = out.invariants.size();
  return out;
}

class NormalBandError : public Error {
public:
  using Error::Error;
};

/// The free normal band on X as triples (a, S, b) with a, b in S, multiplied
/// by (a,S,b)(c,T,d) = (a, S u T, d). Accepted only if the word oracle (words
/// up to length 2|X|+2) yields exactly one class per triple.
inline FiniteAlgebra free_normal_band(const std::vector<std::string>& x) {
#if !SLO_NORMAL_BAND
  (void)x;
  throw NormalBandError("free normal band support is disabled in this build");
#else
  detail::check_generator_names(x);
  if (x.empty()) throw PreconditionError("free normal band needs at least one generator");
  if (x.size() > 4) throw ResourceError("free normal band is limited to 4 generators");
  const std::size_t k = x.size();
  using Triple = std::tuple<std::uint8_t, std::uint64_t, std::uint8_t>;
  std::vector<Triple> triples;
  for (std::uint64_t mask : detail::semilattice_masks(k))
    for (std::uint8_t a = 0; a < k; ++a)
      for (std::uint8_t b = 0; b < k; ++b)
        if (((mask >> a) & 1U) && ((mask >> b) & 1U)) triples.emplace_back(a, mask, b);

  const WordOracle oracle = normal_band_word_oracle(k, 2 * k + 2);
  if (!oracle.well_defined || oracle.classes != triples.size())
    throw NormalBandError("word oracle disagrees with the triple construction: " + std::to_string(oracle.classes) +
                          " word classes for " + std::to_string(triples.size()) + " triples");

  std::map<Triple, Elem> index;
  std::vector<std::string> labels;
  for (const auto& t : triples) {
    index.emplace(t, static_cast<Elem>(labels.size()));
    const auto& [a, mask, b] = t;
    labels.push_back("(" + x[a] + "," + detail::word_label(x, mask) + "," + x[b] + ")");
  }
  Signature sig("NB");
  sig.add_op("mul", 2);
  const std::size_t n = triples.size();
  std::vector<std::vector<Elem>> tables{tabulate(n, 2, [&](std::span<const Elem> p) {
    const auto& [a, s, b] = triples[p[0]];
    const auto& [c, t, d] = triples[p[1]];
    return index.at(Triple{a, s | t, d});
  })};
  return FiniteAlgebra(std::move(sig), std::move(labels), std::move(tables));
#endif
}

inline Identity normality(const Signature& sig, const std::string& op = "mul") {
  return parse_identity(op + "(" + op + "(" + op + "(a, b), c), d) = " + op + "(" + op + "(" + op + "(a, c), b), d)",
                        sig);
}

} // namespace slo
