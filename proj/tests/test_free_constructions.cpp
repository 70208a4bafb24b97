#include "catch_amalgamated.hpp"

#include <set>

#include "slo/slo.hpp"

using namespace slo;

namespace {

// Union-closed families of non-empty subsets of an n-set, by direct filtering.
std::size_t union_closed_families(std::size_t n) {
  const std::size_t m = (std::size_t{1} << n) - 1;
  std::size_t count = 0;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << m); ++fam) {
    bool closed = true;
    for (std::size_t a = 1; a <= m && closed; ++a) {
      if (!((fam >> (a - 1)) & 1U)) continue;
      for (std::size_t b = a + 1; b <= m && closed; ++b)
        if ((fam >> (b - 1)) & 1U) closed = (fam >> ((a | b) - 1)) & 1U;
    }
    count += closed;
  }
  return count;
}

std::vector<FreeModel> all_free_models() {
  std::vector<FreeModel> out;
  for (auto& c : universality_free_models()) out.push_back(std::move(c.model));
  const auto sl2 = free_semilattice({"x", "y"});
  out.push_back(free_slo(free_semilattice({"x", "y", "z"}), {"x", "y", "z"}, PowerVariant::nonempty,
                         base_identities(sl2)));
  const auto sl1u = free_semilattice_unit({"x", "y"});
  out.push_back(free_slo(sl1u, {"x", "y"}, PowerVariant::with_empty_and_unit, base_identities(sl1u)));
  out.push_back(free_cdis({"x", "y", "z"}));
  return out;
}

bool uses_join(const Term& t, const std::string& join) {
  if (t.is_var()) return false;
  if (t.name() == join) return true;
  return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return uses_join(a, join); });
}

} // namespace

TEST_CASE("free semilattices", "[free]") {
  const FiniteAlgebra sl2 = free_semilattice({"x", "y"});
  CHECK(sl2.carrier() == std::vector<std::string>{"x", "y", "xy"});
  CHECK(free_semilattice({"x"}).size() == 1);
  const FiniteAlgebra sl3 = free_semilattice({"x", "y", "z"});
  CHECK(sl3.carrier() == std::vector<std::string>{"x", "y", "z", "xy", "xz", "yz", "xyz"});
  CHECK(sl3.label(sl3.apply("mul", {sl3.element("xy"), sl3.element("z")})) == "xyz");
  for (const FiniteAlgebra& a : {sl2, sl3}) {
    CHECK(satisfies(a, associativity(a.signature())));
    CHECK(satisfies(a, commutativity(a.signature())));
    CHECK(satisfies(a, idempotency(a.signature())));
  }
  CHECK_THROWS_AS(free_semilattice({}), PreconditionError);
  CHECK_THROWS_AS(free_semilattice({"x", "x"}), SemanticError);
  CHECK(generator_names(3) == std::vector<std::string>{"x", "y", "z"});
  CHECK(generator_names(5).front() == "x1");
}

TEST_CASE("free semilattices with unit", "[free]") {
  const FiniteAlgebra e = free_semilattice_unit({});
  CHECK(e.carrier() == std::vector<std::string>{"1"});
  const FiniteAlgebra one = free_semilattice_unit({"x"});
  CHECK(one.size() == 2);
  CHECK(units(one) == std::vector<Elem>{one.element("1")});
  CHECK(one.unit() == one.element("1"));
  const FiniteAlgebra two = free_semilattice_unit({"x", "y"});
  CHECK(two.size() == 4);
  CHECK(units(two) == std::vector<Elem>{two.element("1")});
}

TEST_CASE("free power models and variety membership", "[free]") {
  const FreeModel p = free_slo_nonempty(free_semilattice({"x", "y"}), {"x", "y"});
  REQUIRE(p.membership);
  CHECK_FALSE(p.membership->in_variety);
  CHECK(to_string(*p.membership->failed) == "mul(x, x) = x");
  CHECK(p.membership->witness == std::vector<std::pair<std::string, std::string>>{{"x", "{x,y}"}});
  CHECK(p.membership->lhs == "{x,y,xy}");
  CHECK(p.membership->rhs == "{x,y}");

  const FreeModel trivial = free_slo_nonempty(catalog::chain_semilattice(1), {"0"});
  CHECK(trivial.membership->in_variety);
  const FreeModel single = free_slo_nonempty(free_semilattice({"x"}), {"x"});
  CHECK(single.membership->in_variety);
  CHECK(single.algebra.size() == 1);

  const auto json = free_model_to_json(p);
  CHECK(json["membership"]["in_variety"] == false);
  CHECK(json["membership"]["witness"]["x"] == "{x,y}");
  const FreeModel back = free_model_from_json(json);
  CHECK(back.algebra.algebra() == p.algebra.algebra());
  CHECK(back.generators == p.generators);
}

TEST_CASE("free commutative doubly idempotent semirings", "[free][cdis]") {
  const FreeModel f0 = free_cdis({});
  CHECK(f0.algebra.algebra().carrier() == std::vector<std::string>{"⟨⟩", "⟨⟩+1"});
  const FreeModel f1 = free_cdis({"x"});
  CHECK(f1.algebra.algebra().carrier() == std::vector<std::string>{"⟨⟩", "⟨⟩+1", "⟨x⟩", "⟨x⟩+1"});
  const FreeModel f2 = free_cdis({"x", "y"});
  CHECK(f2.algebra.size() == 14);
  CHECK(f2.algebra.label(*f2.algebra.zero()) == "⟨⟩");
  CHECK(f2.algebra.label(*f2.algebra.unit()) == "⟨⟩+1");
  CHECK(free_cdis({"x", "y", "z"}).algebra.size() == 122);

  Limits small;
  small.max_carrier = 100;
  CHECK_THROWS_AS(free_cdis({"x", "y", "z"}, small), ResourceError);
  CHECK_THROWS_AS(free_cdis(generator_names(5)), ResourceError);
}

TEST_CASE("free CDIS laws", "[free][cdis][property]") {
  for (std::size_t n = 0; n <= 3; ++n) {
    const FreeModel f = free_cdis(generator_names(n));
    const FiniteAlgebra& a = f.algebra.algebra();
    const Signature& sig = a.signature();
    CHECK(check_slo(a));
    for (const char* op : {"mul", "join"}) {
      CHECK(satisfies(a, associativity(sig, op)));
      CHECK(satisfies(a, commutativity(sig, op)));
      CHECK(satisfies(a, idempotency(sig, op)));
    }
    CHECK(satisfies(a, parse_identity("mul(x, join(y, z)) = join(mul(x, y), mul(x, z))", sig)));
    CHECK(satisfies(a, parse_identity("mul(x, zero) = zero", sig)));
    CHECK(satisfies(a, parse_identity("mul(x, one) = x", sig)));
    CHECK(satisfies(a, parse_identity("join(x, zero) = x", sig)));
    CHECK(is_idempotent(a));
  }
}

TEST_CASE("free CDIS matches the replica quotient", "[free][cdis]") {
  for (std::size_t n = 0; n <= 2; ++n) {
    INFO(n);
    CHECK_FALSE(cdis_quotient_difference(generator_names(n)));
  }
}

TEST_CASE("cardinalities", "[free][counts]") {
  const CardinalityReport r2 = cardinality_report(2);
  CHECK(r2.n_free_sl_elements == 3);
  CHECK(r2.n_subalgebras_incl_empty == 7);
  CHECK(r2.n_reduced_subsets == 7);
  CHECK(r2.n_free_cdis == 14);
  CHECK(r2.bound_2_2n == 16);
  CHECK(r2.cdis_route == "model");

  const CardinalityReport r0 = cardinality_report(0);
  CHECK(r0.n_free_sl_elements == 0);
  CHECK(r0.n_subalgebras_incl_empty == 1);
  CHECK(r0.n_free_cdis == 2);
  CHECK(r0.bound_2_2n == 2);

  const auto j = r2.to_json();
  CHECK(j["n_free_cdis"] == 14);
  CHECK(j["bound_2_2n"] == 16);

  CHECK_THROWS_AS(cardinality_report(5), ResourceError);
}

TEST_CASE("cardinalities agree with a direct family count", "[free][counts][property]") {
  std::size_t previous = 0;
  for (std::size_t n = 0; n <= 4; ++n) {
    const std::size_t families = union_closed_families(n);
    const CardinalityReport r = cardinality_report(n);
    INFO(n);
    CHECK(r.n_free_sl_elements == (std::size_t{1} << n) - 1);
    CHECK(r.n_subalgebras_incl_empty == families);
    CHECK(r.n_reduced_subsets == families);
    CHECK(r.n_free_cdis == 2 * families);
    CHECK(r.n_free_cdis <= r.bound_2_2n);
    CHECK(r.n_free_cdis > previous);
    previous = r.n_free_cdis;
    const auto& row = expected_cardinalities().at(n);
    CHECK(row[1] == families);
    CHECK(row[3] == 2 * families);
  }
  CHECK(union_closed_families(3) == 61);
  CHECK(union_closed_families(4) == 2480);
  CHECK(cardinality_report(4).cdis_route == "count");
  CHECK(free_cdis_count(3) == free_cdis({"x", "y", "z"}).algebra.size());
}

TEST_CASE("decompositions of free models", "[free][property]") {
  for (const FreeModel& m : all_free_models()) {
    INFO(m.algebra.algebra().signature().name() << " on " << m.generators.size() << " generators");
    CHECK_FALSE(decomposition_mismatch(m));
    const auto sub = full_subreduct(m.algebra, m.generator_elements());
    const Env env = m.generator_env();
    for (Elem e = 0; e < m.algebra.size(); ++e) {
      for (const Term& part : m.decomposition[e]) {
        CHECK_FALSE(uses_join(part, m.algebra.join_symbol()));
        const Elem v = eval_term(m.algebra.algebra(), part, env);
        CHECK(std::binary_search(sub.begin(), sub.end(), v));
        CHECK(m.algebra.leq(v, e));
      }
    }
    if (auto z = m.algebra.zero()) CHECK(m.decomposition[*z].empty());
  }
}

TEST_CASE("free CDIS extends every generator map uniquely", "[free][cdis][hom]") {
  std::vector<SloAlgebra> targets;
  targets.push_back(require_slo(catalog::distributive_chain(2)));
  targets.push_back(require_slo(catalog::distributive_chain(3)));
  targets.push_back(require_slo(catalog::boolean_lattice4()));
  targets.push_back(require_slo(build_power(catalog::chain_semilattice(2), PowerVariant::with_empty_and_unit)));
  targets.push_back(free_cdis({"x"}).algebra);
  for (std::size_t n = 0; n <= 2; ++n) {
    const FreeModel f = free_cdis(generator_names(n));
    for (const SloAlgebra& t : targets)
      for_each_tuple(t.size(), n, [&](std::span<const Elem> img) {
        std::map<std::string, Elem> h;
        std::map<Elem, Elem> fixed;
        for (std::size_t i = 0; i < n; ++i) {
          h[f.generators[i].first] = img[i];
          fixed[f.generators[i].second] = img[i];
        }
        const Homomorphism hom = extend_hom(f, h, t);
        CHECK(hom(*f.algebra.zero()) == *t.zero());
        CHECK(hom(*f.algebra.unit()) == *t.unit());
        CHECK(count_homomorphisms(f.algebra, t, fixed) == 1);
        return true;
      });
  }
}

#if SLO_NORMAL_BAND
namespace {

// The free normal band on k letters as the subalgebra generated by the letters
// inside the product of every normal band on at most 3 elements, one factor per
// assignment of the letters.
struct ProductOracle {
  std::vector<std::vector<Elem>> elements;
  std::vector<std::pair<const FiniteAlgebra*, std::vector<Elem>>> factors;
  std::vector<FiniteAlgebra> bands;

  explicit ProductOracle(std::size_t k) {
    const Signature& sig = catalog::semigroup_signature();
    for (std::size_t n = 1; n <= 3; ++n)
      for (auto& b : enumerate_models(sig, n, {associativity(sig), idempotency(sig), normality(sig)}))
        bands.push_back(std::move(b));
    for (const FiniteAlgebra& b : bands)
      for_each_tuple(b.size(), k, [&](std::span<const Elem> h) {
        factors.emplace_back(&b, std::vector<Elem>(h.begin(), h.end()));
        return true;
      });
    std::set<std::vector<Elem>> seen;
    for (std::size_t g = 0; g < k; ++g) {
      std::vector<Elem> v;
      for (const auto& f : factors) v.push_back(f.second[g]);
      if (seen.insert(v).second) elements.push_back(v);
    }
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
          auto v = multiply(elements[a], elements[b]);
          if (seen.insert(v).second) elements.push_back(std::move(v));
        }
  }

  std::vector<Elem> multiply(const std::vector<Elem>& a, const std::vector<Elem>& b) const {
    std::vector<Elem> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = factors[i].first->apply(0, {a[i], b[i]});
    return out;
  }
  std::vector<Elem> letter(std::size_t g) const {
    std::vector<Elem> v;
    for (const auto& f : factors) v.push_back(f.second[g]);
    return v;
  }
};

} // namespace

TEST_CASE("free normal bands", "[free][normal_band]") {
  CHECK(free_normal_band({"x"}).size() == 1);
  CHECK(free_normal_band({"x", "y"}).size() == 6);
  CHECK(free_normal_band({"x", "y", "z"}).size() == 24);
  CHECK(free_normal_band({"x", "y"}).carrier().front() == "(x,x,x)");
  CHECK_THROWS_AS(free_normal_band({}), PreconditionError);
  CHECK_THROWS_AS(free_normal_band(generator_names(5)), ResourceError);

  const WordOracle w = normal_band_word_oracle(2, 6);
  CHECK(w.well_defined);
  CHECK(w.classes == 6);

  for (std::size_t k = 1; k <= 3; ++k) {
    const FiniteAlgebra nb = free_normal_band(generator_names(k));
    const Signature& sig = nb.signature();
    CHECK(satisfies(nb, associativity(sig)));
    CHECK(satisfies(nb, idempotency(sig)));
    CHECK(satisfies(nb, normality(sig)));
  }
}

TEST_CASE("free normal bands agree with a product of small normal bands", "[free][normal_band][property]") {
  for (std::size_t k = 1; k <= 3; ++k) {
    const std::vector<std::string> x = generator_names(k);
    const FiniteAlgebra nb = free_normal_band(x);
    const ProductOracle oracle(k);
    INFO(k);
    CHECK(oracle.elements.size() == nb.size());

    // (a, S, b) evaluates as the word a s1 ... sm b
    std::vector<std::vector<Elem>> image(nb.size());
    for (Elem e = 0; e < nb.size(); ++e) {
      const std::string& label = nb.label(e); // "(a,word,b)"
      const auto c1 = label.find(','), c2 = label.rfind(',');
      const std::string first = label.substr(1, c1 - 1);
      const std::string content = label.substr(c1 + 1, c2 - c1 - 1);
      const std::string last = label.substr(c2 + 1, label.size() - c2 - 2);
      auto idx = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(x.begin(), x.end(), name) - x.begin());
      };
      std::vector<Elem> v = oracle.letter(idx(first));
      for (char c : content) v = oracle.multiply(v, oracle.letter(idx(std::string(1, c))));
      v = oracle.multiply(v, oracle.letter(idx(last)));
      image[e] = std::move(v);
    }
    CHECK(std::set<std::vector<Elem>>(image.begin(), image.end()).size() == nb.size());
    for (Elem a = 0; a < nb.size(); ++a)
      for (Elem b = 0; b < nb.size(); ++b) REQUIRE(image[nb.apply("mul", {a, b})] == oracle.multiply(image[a], image[b]));
  }
}
#else
TEST_CASE("free normal bands are disabled", "[free][normal_band]") {
  CHECK_THROWS_AS(free_normal_band({"x"}), NormalBandError);
}
#endif
