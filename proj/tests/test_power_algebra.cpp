#include "catch_amalgamated.hpp"

#include "slo/slo.hpp"

using namespace slo;

namespace {

// Pointwise image computed straight from the definition.
Subset pointwise(const FiniteAlgebra& base, std::size_t op, const std::vector<Subset>& args) {
  Subset out;
  for_each_tuple(base.size(), args.size(), [&](std::span<const Elem> t) {
    for (std::size_t i = 0; i < args.size(); ++i)
      if (!args[i].contains(t[i])) return true;
    out.insert(base.apply(op, t));
    return true;
  });
  return out;
}

Subset set_of(const FiniteAlgebra& base, std::initializer_list<const char*> labels) {
  Subset s;
  for (const char* l : labels) s.insert(base.element(l));
  return s;
}

// Visit every tuple of `k` subsets of an n-element base (empty set included).
template <typename Fn>
void for_each_subset_tuple(std::size_t n, std::size_t k, Fn&& fn) {
  const std::size_t count = std::size_t{1} << n;
  std::vector<Subset> args(k);
  for_each_tuple(count, k, [&](std::span<const Elem> m) {
    for (std::size_t i = 0; i < k; ++i) args[i] = Subset(m[i]);
    fn(args);
    return true;
  });
}

} // namespace

TEST_CASE("complex operations", "[power]") {
  const FiniteAlgebra sl = free_semilattice({"x", "y"});
  const Subset xy = set_of(sl, {"x", "y"});
  CHECK(complex_op(sl, "mul", {xy, xy}) == set_of(sl, {"x", "y", "xy"}));
  CHECK(complex_op(sl, "mul", {xy, xy}) != xy);
  CHECK(subset_label(sl, complex_op(sl, "mul", {xy, xy})) == "{x,y,xy}");

  CHECK(complex_op(sl, "mul", {xy, Subset{}}).empty());
  CHECK(complex_op(sl, "mul", {Subset{}, xy}).empty());
  const FiniteAlgebra maj = catalog::majority2();
  CHECK(complex_op(maj, "maj", {Subset::of({0, 1}), Subset{}, Subset::of({1})}).empty());

  const FiniteAlgebra fan = catalog::fan_semilattice();
  CHECK(complex_op(fan, "mul", {set_of(fan, {"a"}), set_of(fan, {"b"})}) == set_of(fan, {"0"}));
  for (Elem a = 0; a < fan.size(); ++a)
    for (Elem b = 0; b < fan.size(); ++b)
      CHECK(complex_op(fan, "mul", {Subset::singleton(a), Subset::singleton(b)}) ==
            Subset::singleton(fan.apply("mul", {a, b})));

  CHECK_THROWS_AS(complex_op(fan, "mul", {Subset::of({0})}), PreconditionError);
  CHECK_THROWS_AS(complex_op(fan, "mul", {Subset::of({0}), Subset::of({5})}), PreconditionError);
}

TEST_CASE("complex operations agree with the pointwise definition", "[power][property]") {
  for (const auto& named : catalog::bases(4)) {
    const FiniteAlgebra& base = named.algebra;
    for (std::size_t op = 0; op < base.signature().op_count(); ++op)
      for_each_subset_tuple(base.size(), base.arity(op), [&](const std::vector<Subset>& args) {
        REQUIRE(complex_op(base, op, std::span<const Subset>(args)) == pointwise(base, op, args));
      });
  }
}

TEST_CASE("power algebra construction", "[power]") {
  const FiniteAlgebra chain = catalog::chain_semilattice(2);
  const PowerAlgebra p = build_power(chain, PowerVariant::nonempty);
  CHECK(p.algebra.size() == 3);
  CHECK(p.algebra.carrier() == std::vector<std::string>{"{0}", "{1}", "{0,1}"});
  CHECK_FALSE(p.algebra.zero());
  CHECK_FALSE(p.algebra.unit());

  const PowerAlgebra full = build_power(chain, PowerVariant::with_empty_and_unit);
  CHECK(full.algebra.carrier() == std::vector<std::string>{"{}", "{0}", "{1}", "{0,1}"});
  CHECK(full.algebra.label(*full.algebra.zero()) == "{}");
  CHECK(full.algebra.label(*full.algebra.unit()) == "{1}");
  CHECK(full.index_of(Subset::of({0, 1})) == 3);
  CHECK(p.index_of(Subset::of({0, 1})) == 2);
  CHECK_THROWS_AS(p.index_of(Subset{}), PreconditionError);

  const FiniteAlgebra fan = catalog::fan_semilattice();
  const PowerAlgebra pf = build_power(fan, PowerVariant::nonempty);
  CHECK(pf.algebra.size() == 7);
  const Elem ab = pf.index_of(set_of(fan, {"a", "b"}));
  CHECK(pf.subset(pf.algebra.apply("mul", {ab, ab})) == set_of(fan, {"0", "a", "b"}));

  CHECK(build_power(chain, PowerVariant::with_empty).algebra.size() == 4);
  CHECK(build_power(chain, PowerVariant::with_unit).algebra.size() == 3);

  CHECK_THROWS_AS(build_power(catalog::left_zero(2), PowerVariant::with_unit), PreconditionError);
  CHECK_THROWS_AS(build_power(catalog::identity_unary(2), PowerVariant::with_unit), PreconditionError);
  Limits small;
  small.max_power_base = 3;
  CHECK_THROWS_AS(build_power(catalog::chain_semilattice(4), PowerVariant::nonempty, small), ResourceError);
  CHECK(parse_variant("with_empty_and_unit") == PowerVariant::with_empty_and_unit);
  CHECK_THROWS_AS(parse_variant("all"), ParseError);
}

TEST_CASE("power algebras round trip through JSON", "[power][io]") {
  const PowerAlgebra p = build_power(catalog::chain_semilattice(2), PowerVariant::with_empty_and_unit);
  CHECK(algebra_from_json(algebra_to_json(p.algebra)) == p.algebra);
  const PowerAlgebra q = build_power(free_semilattice({"x", "y"}), PowerVariant::nonempty);
  CHECK(algebra_from_json(algebra_to_json(q.algebra)) == q.algebra);
}

TEST_CASE("linear term images", "[power]") {
  const FiniteAlgebra chain = catalog::chain_semilattice(2);
  const Signature& sig = chain.signature();
  const std::vector<Subset> args{Subset::of({0, 1}), Subset::of({1}), Subset::of({1})};
  CHECK(complex_linear_term(chain, parse_term("mul(x, mul(y, z))", sig), args) == Subset::of({0, 1}));
  const std::vector<Subset> one{Subset::of({1})};
  CHECK(complex_linear_term(chain, Term::var("x"), one) == Subset::of({1}));
  CHECK_THROWS_AS(complex_linear_term(chain, parse_term("mul(x, x)", sig), one), PreconditionError);
}

TEST_CASE("non-linear terms", "[power]") {
  const FiniteAlgebra fan = catalog::fan_semilattice();
  const Signature& sig = fan.signature();
  const std::vector<Subset> ab{set_of(fan, {"a", "b"})};
  const InclusionReport r = nonlinear_inclusion_check(fan, parse_term("mul(x, x)", sig), ab);
  CHECK(r.pointwise == set_of(fan, {"a", "b"}));
  CHECK(r.power_value == set_of(fan, {"0", "a", "b"}));
  CHECK(r.contained);
  CHECK(r.proper);

  const Term lin = parse_term("mul(x, y)", sig);
  const std::vector<Subset> ab2{ab[0], ab[0]};
  const InclusionReport eq = nonlinear_inclusion_check(fan, lin, ab2);
  CHECK(eq.contained);
  CHECK_FALSE(eq.proper);

  const Term t = parse_term("mul(x, mul(y, x))", sig);
  for (Elem a = 0; a < fan.size(); ++a)
    for (Elem b = 0; b < fan.size(); ++b) {
      const std::vector<Subset> singles{Subset::singleton(a), Subset::singleton(b)};
      const InclusionReport s = nonlinear_inclusion_check(fan, t, singles);
      CHECK(s.contained);
      CHECK_FALSE(s.proper);
    }
}

TEST_CASE("non-linear images always contain the pointwise image", "[power][property]") {
  const std::vector<std::string> terms{"mul(x, x)", "mul(x, mul(y, x))", "mul(mul(x, y), mul(y, x))"};
  for (const auto& named : catalog::bases(3)) {
    const FiniteAlgebra& base = named.algebra;
    if (!base.signature().has("mul")) continue;
    for (const std::string& text : terms) {
      const Term t = parse_term(text, base.signature());
      const std::size_t k = variables(t).size();
      for_each_subset_tuple(base.size(), k, [&](const std::vector<Subset>& args) {
        const InclusionReport r = nonlinear_inclusion_check(base, t, args);
        REQUIRE(r.contained);
      });
    }
  }
}

TEST_CASE("complex operations distribute over union, are monotone and superdistributive", "[power][property]") {
  for (const auto& named : catalog::bases(4)) {
    const FiniteAlgebra& base = named.algebra;
    INFO(named.name);
    for (std::size_t op : base.omega_ops()) {
      const std::size_t k = base.arity(op);
      auto apply = [&](const std::vector<Subset>& a) { return complex_op(base, op, std::span<const Subset>(a)); };
      for_each_subset_tuple(base.size(), k + 1, [&](const std::vector<Subset>& t) {
        const std::vector<Subset> a(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k));
        const Subset extra = t[k];
        for (std::size_t pos = 0; pos < k; ++pos) {
          std::vector<Subset> b = a, u = a;
          b[pos] = extra;
          u[pos] = a[pos] | extra;
          REQUIRE(apply(u) == (apply(a) | apply(b)));
          if (a[pos].subset_of(extra)) REQUIRE(apply(a).subset_of(apply(b)));
        }
      });
      // superdistributivity over two full argument tuples
      for_each_subset_tuple(base.size(), 2 * k, [&](const std::vector<Subset>& t) {
        const std::vector<Subset> a(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k));
        const std::vector<Subset> b(t.begin() + static_cast<std::ptrdiff_t>(k), t.end());
        std::vector<Subset> u(k);
        for (std::size_t i = 0; i < k; ++i) u[i] = a[i] | b[i];
        REQUIRE((apply(a) | apply(b)).subset_of(apply(u)));
      });
    }
  }
}

TEST_CASE("power algebras are semilattice ordered", "[power][property]") {
  for (const auto& named : catalog::bases(4)) {
    INFO(named.name);
    for (PowerVariant v : {PowerVariant::nonempty, PowerVariant::with_empty}) {
      const PowerAlgebra p = build_power(named.algebra, v);
      const SloCheck c = check_slo(p.algebra);
      CHECK(c);
      if (v == PowerVariant::with_empty) {
        const Elem zero = *p.algebra.zero();
        for (std::size_t op : p.algebra.omega_ops())
          for_each_tuple(p.algebra.size(), p.algebra.arity(op), [&](std::span<const Elem> args) {
            const bool has_empty = std::find(args.begin(), args.end(), zero) != args.end();
            if (has_empty) REQUIRE(p.algebra.apply(op, args) == zero);
            return true;
          });
      }
    }
    if (units(named.algebra).size() != 1) continue;
    for (PowerVariant v : {PowerVariant::with_unit, PowerVariant::with_empty_and_unit}) {
      const PowerAlgebra p = build_power(named.algebra, v);
      CHECK(check_slo(p.algebra));
      const Elem one = *p.algebra.unit();
      CHECK(p.subset(one) == Subset::singleton(units(named.algebra).front()));
      for (std::size_t op : p.algebra.omega_ops()) {
        const std::size_t k = p.algebra.arity(op);
        for (std::size_t pos = 0; pos < k; ++pos)
          for (Elem x = 0; x < p.algebra.size(); ++x) {
            std::vector<Elem> args(k, one);
            args[pos] = x;
            REQUIRE(p.algebra.apply(op, args) == x);
          }
      }
    }
  }
}
