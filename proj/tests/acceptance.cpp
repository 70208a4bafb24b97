// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: acceptance PATH_TO_SLO_CLI

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "slo/slo.hpp"

using namespace slo;

namespace {

std::string cli;

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = cli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Failure{"cannot start " + cli};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

// Associative tables on {0,1,2}, by brute force over all 3^9 tables.
std::size_t associative_tables_3() {
  std::size_t count = 0;
  int t[3][3];
  for (int code = 0; code < 19683; ++code) {
    int c = code;
    for (auto& row : t)
      for (int& v : row) {
        v = c % 3;
        c /= 3;
      }
    bool assoc = true;
    for (int a = 0; a < 3 && assoc; ++a)
      for (int b = 0; b < 3 && assoc; ++b)
        for (int d = 0; d < 3 && assoc; ++d) assoc = t[t[a][b]][d] == t[a][t[b][d]];
    count += assoc;
  }
  return count;
}

bool uses_join(const Term& t, const std::string& join) {
  if (t.is_var()) return false;
  if (t.name() == join) return true;
  for (const Term& a : t.args())
    if (uses_join(a, join)) return true;
  return false;
}

std::string suite_failures(const SuiteReport& r) {
  std::ostringstream ss;
  ss << r.failures() << " failures in suite " << r.suite;
  for (const auto& e : r.entries)
    if (!e.passed) {
      ss << "; first: " << e.instance << ": " << e.witness;
      break;
    }
  return ss.str();
}

void criterion1() {
  const char* expected[] = {"2\n", "4\n", "14\n"};
  for (int n = 0; n < 3; ++n) {
    int code = 0;
    const std::string out = run_cli("free-cdis --gens " + std::to_string(n) + " --count", code);
    require(code == 0 && out == expected[n], "free-cdis --gens " + std::to_string(n) + " printed '" + out + "'");
  }
  const FiniteAlgebra sl = free_semilattice({"x", "y"});
  require(sl.size() == 3, "free semilattice on 2 generators has " + std::to_string(sl.size()) + " elements");
  const std::vector<std::string> list{"⟨⟩", "⟨x⟩", "⟨y⟩", "⟨xy⟩", "⟨x,xy⟩", "⟨y,xy⟩", "⟨x,y,xy⟩"};
  std::vector<std::string> got;
  for (const auto& s : enumerate_subalgebras(sl, true)) got.push_back(rep_label(sl, s));
  require(got == list, "subalgebra list differs");
  const std::string path = (std::filesystem::temp_directory_path() / "slo_acceptance_sl2.json").string();
  int code = 0;
  run_cli("free-sl --gens 2 --out " + path, code);
  require(code == 0, "free-sl --gens 2 failed");
  const std::string out = run_cli("subalgebras --include-empty --alg " + path, code);
  std::filesystem::remove(path);
  require(code == 0 && out == "{}\n{x}\n{y}\n{xy}\n{x,xy}\n{y,xy}\n{x,y,xy}\ncount: 7\n",
          "slo subalgebras printed '" + out + "'");
}

void criterion2() {
  for (std::size_t n = 0; n <= 3; ++n) {
    const std::size_t size = free_cdis(generator_names(n)).algebra.size();
    const std::uint64_t bound = std::uint64_t{1} << (std::uint64_t{1} << n);
    require(size == free_cdis_count(n), "built and counted sizes differ at n=" + std::to_string(n));
    require(size <= bound, std::to_string(size) + " > " + std::to_string(bound) + " at n=" + std::to_string(n));
  }
}

void criterion3() {
  const FiniteAlgebra sl = free_semilattice({"x", "y"});
  Subset xy;
  xy.insert(sl.element("x"));
  xy.insert(sl.element("y"));
  const Subset sq = complex_op(sl, "mul", {xy, xy});
  require(subset_label(sl, sq) == "{x,y,xy}", "{x,y}·{x,y} = " + subset_label(sl, sq));
  require(sq != xy, "{x,y}·{x,y} equals {x,y}");
  const FreeModel p = free_slo_nonempty(sl, {"x", "y"});
  require(p.membership && !p.membership->in_variety, "membership flag is not false");
}

void criterion4() {
  for (const auto& named : catalog::bases(4)) {
    const FiniteAlgebra& base = named.algebra;
    const std::uint64_t count = std::uint64_t{1} << base.size();
    for (std::size_t op : base.omega_ops()) {
      const std::size_t k = base.arity(op);
      std::vector<Subset> a(k), b(k), u(k);
      for_each_tuple(count, 2 * k, [&](std::span<const Elem> pick) {
        for (std::size_t i = 0; i < k; ++i) {
          a[i] = Subset(pick[i]);
          b[i] = Subset(pick[k + i]);
          u[i] = a[i] | b[i];
        }
        const Subset fa = complex_op(base, op, a);
        const Subset fb = complex_op(base, op, b);
        require((fa | fb).subset_of(complex_op(base, op, u)), named.name + ": superdistributivity fails");
        for (std::size_t pos = 0; pos < k; ++pos) {
          std::vector<Subset> c = a, v = a;
          c[pos] = b[pos];
          v[pos] = a[pos] | b[pos];
          const Subset fc = complex_op(base, op, c);
          require(complex_op(base, op, v) == (fa | fc), named.name + ": distributivity fails");
          if (a[pos].subset_of(b[pos])) require(fa.subset_of(fc), named.name + ": monotonicity fails");
        }
        return true;
      });
    }
  }
}

void criterion5() {
  const std::size_t oracle = associative_tables_3();
  require(oracle == 113, "oracle found " + std::to_string(oracle) + " associative tables");
  const SuiteReport r = suite_gl(3);
  require(r.passed(), suite_failures(r));
  std::size_t size3 = 0;
  bool fan = false;
  for (const auto& e : r.entries) {
    if (e.instance.starts_with("semigroup 3#") && e.instance.ends_with("associativity lifts")) ++size3;
    if (e.instance.starts_with("fan semilattice") && e.passed && !e.witness.empty()) fan = true;
  }
  require(size3 == oracle, std::to_string(size3) + " size-3 semigroups in the suite, oracle " + std::to_string(oracle));
  require(fan, "no explicit witness for the fan semilattice");
}

void criterion6() {
  const SuiteReport r = suite_cor52(3);
  require(r.passed(), suite_failures(r));
  require(r.entries.size() > 2, "no idempotent groupoids were checked");
}

void criterion7() {
  for (const FiniteAlgebra& base : {free_semilattice({"x", "y"}), catalog::fan_semilattice()}) {
    const std::uint64_t count = std::uint64_t{1} << base.size();
    for (std::uint64_t a = 1; a < count; ++a) {
      require(rho_equivalent(base, Subset(a), Subset(a)), "rho is not reflexive");
      for (std::uint64_t b = 1; b < count; ++b) {
        const bool ab = rho_equivalent(base, Subset(a), Subset(b));
        require(ab == rho_equivalent(base, Subset(b), Subset(a)), "rho is not symmetric");
        if (!ab) continue;
        for (std::uint64_t c = 1; c < count; ++c)
          if (rho_equivalent(base, Subset(b), Subset(c)))
            require(rho_equivalent(base, Subset(a), Subset(c)), "rho is not transitive");
      }
    }
    const auto bad = rho_congruence_violation(base);
    require(!bad, "rho is not compatible: " + bad.value_or(""));
    for (PowerVariant v : {PowerVariant::nonempty, PowerVariant::with_empty}) {
      const RhoQuotient q = quotient_by_rho(build_power(base, v));
      const SloCheck c = check_slo(q.algebra.algebra());
      require(c.slo.has_value(), "quotient is not an SLO algebra");
      require(is_idempotent(q.algebra.algebra()), "quotient is not idempotent");
    }
  }
  for (std::size_t n = 0; n <= 2; ++n) {
    const auto diff = cdis_quotient_difference(generator_names(n));
    require(!diff, "free CDIS differs from the quotient at n=" + std::to_string(n) + ": " + diff.value_or(""));
  }
}

void criterion8() {
  for (const auto& t : universality_targets())
    require(t.algebra.size() <= 8, t.name + " has more than 8 elements");
  const SuiteReport r = suite_universality();
  require(r.passed(), suite_failures(r));
}

void criterion9() {
  std::vector<FreeModel> models;
  for (auto& c : universality_free_models()) models.push_back(std::move(c.model));
  const FiniteAlgebra sl3 = free_semilattice({"x", "y", "z"});
  models.push_back(free_slo(sl3, {"x", "y", "z"}, PowerVariant::nonempty, base_identities(sl3)));
  const FiniteAlgebra sl1u = free_semilattice_unit({"x", "y"});
  models.push_back(free_slo(sl1u, {"x", "y"}, PowerVariant::with_empty_and_unit, base_identities(sl1u)));
  models.push_back(free_cdis({"x", "y", "z"}));
  for (const FreeModel& m : models) {
    const std::string name = m.algebra.algebra().signature().name();
    const auto mismatch = decomposition_mismatch(m);
    require(!mismatch, name + ": decomposition of " + (mismatch ? m.algebra.label(*mismatch) : "") + " does not re-join");
    const auto sub = full_subreduct(m.algebra, m.generator_elements());
    const Env env = m.generator_env();
    for (Elem e = 0; e < m.algebra.size(); ++e)
      for (const Term& part : m.decomposition[e]) {
        require(!uses_join(part, m.algebra.join_symbol()), name + ": a part uses the join");
        const Elem v = eval_term(m.algebra.algebra(), part, env);
        require(std::binary_search(sub.begin(), sub.end(), v), name + ": a part lies outside the subreduct");
      }
  }
}

void criterion10() {
  for (std::size_t n = 1; n <= 3; ++n) {
    const FiniteAlgebra sl = free_semilattice(generator_names(n));
    const auto reduced = reduced_subsets(sl);
    std::set<std::uint64_t> images;
    for (Subset r : reduced) images.insert(closure(sl, r).bits());
    std::set<std::uint64_t> subalgebras;
    for (const auto& s : enumerate_subalgebras(sl, true)) subalgebras.insert(s.carrier.bits());
    const std::string at = " at |X|=" + std::to_string(n);
    require(reduced.size() == subalgebras.size(), std::to_string(reduced.size()) + " reduced subsets vs " +
                                                      std::to_string(subalgebras.size()) + " subalgebras" + at);
    require(images.size() == reduced.size(), "closure is not injective on reduced subsets" + at);
    require(images == subalgebras, "closure does not hit every subalgebra" + at);
    if (n == 2) require(reduced.size() == 7, "expected 7 reduced subsets" + at);
  }
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance PATH_TO_SLO_CLI\n";
    return 2;
  }
  cli = argv[1];
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<void()> body;
  };
  const std::vector<Criterion> criteria{
      {1, "exact free CDIS counts 2/4/14 and 7 subalgebras of F_SL(x,y)", 1, criterion1},
      {2, "free CDIS size bounded by 2^(2^n) for n <= 3", 10, criterion2},
      {3, "{x,y}.{x,y} = {x,y,xy} and membership flag false", 1, criterion3},
      {4, "distributivity, monotonicity, superdistributivity over bases <= 4", 30, criterion4},
      {5, "linear identities lift for all semigroups <= 3 (113 at size 3)", 120, criterion5},
      {6, "power idempotent iff all non-empty subsets closed, size <= 3", 60, criterion6},
      {7, "replica relation, congruence, quotients and free CDIS agreement", 60, criterion7},
      {8, "universality of free models into matching targets", 60, criterion8},
      {9, "decompositions of free models re-join inside the subreduct", 60, criterion9},
      {10, "reduced subsets biject with subalgebras for |X| <= 3", 10, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body();
    } catch (const Failure& f) {
      error = f.what;
    } catch (const std::exception& e) {
      error = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && secs > c.budget_s) error = "over the " + std::to_string(c.budget_s) + " s budget";
    std::printf("%s criterion %d: %s (%.3f s, budget %.0f s)%s%s\n", error.empty() ? "PASS" : "FAIL", c.id, c.title,
                secs, c.budget_s, error.empty() ? "" : " -- ", error.c_str());
    failed += !error.empty();
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
