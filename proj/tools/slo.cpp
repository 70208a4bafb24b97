// slo: command-line front end for the semilattice-ordered algebra library.
//
// Exit codes: 0 success, 1 a checked property or suite failed, 2 bad usage or input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slo/slo.hpp"

namespace {

constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw slo::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const slo::ordered_json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    slo::write_json_file(out, j);
  }
}

// Split on commas that are not nested inside braces, brackets, parentheses or angle quotes.
std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (text.compare(i, 3, "⟨") == 0) {
      ++depth;
      cur += text.substr(i, 3);
      i += 2;
      continue;
    }
    if (text.compare(i, 3, "⟩") == 0) {
      --depth;
      cur += text.substr(i, 3);
      i += 2;
      continue;
    }
    if (c == '{' || c == '(' || c == '[') ++depth;
    if (c == '}' || c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  for (auto& s : out) {
    const auto b = s.find_first_not_of(' ');
    const auto e = s.find_last_not_of(' ');
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }
  return out;
}

int print_suites(const std::vector<slo::SuiteReport>& reports, bool json) {
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  if (json) {
    slo::ordered_json j;
    if (reports.size() == 1) {
      j = reports.front().to_json();
    } else {
      j["suites"] = slo::ordered_json::array();
      for (const auto& r : reports) j["suites"].push_back(r.to_json());
      j["pass"] = ok;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      std::printf("suite %-13s %5zu instances  %zu failures  %.3f s\n", r.suite.c_str(), r.entries.size(), r.failures(),
                  r.wall_seconds);
      for (const auto& e : r.entries)
        if (!e.passed) std::printf("  FAIL %s: %s\n", e.instance.c_str(), e.witness.c_str());
    }
    std::printf("%s\n", ok ? "all suites pass" : "suite failures");
  }
  return ok ? 0 : kFail;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semilattice ordered algebras: power algebras, replicas and free objects"};
  app.require_subcommand(1);
  int code = 0;

  std::string sig_file;
  auto* parse = app.add_subcommand("parse", "Parse a signature file and print it normalized");
  parse->add_option("--sig", sig_file, "Signature DSL file")->required();
  parse->callback([&] { std::cout << slo::print_signature(slo::parse_signature(read_text(sig_file))) << "\n"; });

  std::string alg_file, identity;
  auto* check = app.add_subcommand("check", "Check an identity in a finite algebra");
  check->add_option("--alg", alg_file, "Algebra JSON file")->required();
  check->add_option("--id", identity, "Identity, e.g. \"mul(x, y) = mul(y, x)\"")->required();
  check->callback([&] {
    const auto alg = slo::load_algebra(alg_file);
    const auto id = slo::parse_identity(identity, alg.signature());
    const auto sat = slo::satisfies(alg, id);
    if (sat) {
      std::cout << "holds: " << slo::to_string(id) << "\n";
      return;
    }
    std::cout << "fails: " << slo::to_string(id) << "\n  at";
    for (const auto& [v, e] : sat.counterexample) std::cout << " " << v << "=" << alg.label(e);
    std::cout << "\n  lhs = " << alg.label(sat.lhs_value) << ", rhs = " << alg.label(sat.rhs_value) << "\n";
    code = kFail;
  });

  bool props_json = false;
  auto* props = app.add_subcommand("props", "Idempotent, entropic, symmetric, conservative, units");
  props->add_option("--alg", alg_file, "Algebra JSON file")->required();
  props->add_flag("--json", props_json, "Machine-readable output");
  props->callback([&] {
    const auto alg = slo::load_algebra(alg_file);
    slo::ordered_json j;
    j["size"] = alg.size();
    j["idempotent"] = slo::is_idempotent(alg);
    j["entropic"] = slo::is_entropic(alg, slo::default_limits());
    j["symmetric"] = slo::is_symmetric(alg);
    j["conservative"] = slo::is_conservative(alg);
    j["units"] = slo::ordered_json::array();
    for (slo::Elem u : slo::units(alg)) j["units"].push_back(alg.label(u));
    if (props_json) {
      std::cout << j.dump(2) << "\n";
      return;
    }
    for (auto it = j.begin(); it != j.end(); ++it) std::cout << it.key() << ": " << it.value().dump() << "\n";
  });

  std::string variant = "nonempty", out_file;
  auto* power = app.add_subcommand("power", "Build a power algebra");
  power->add_option("--alg", alg_file, "Base algebra JSON file")->required();
  power->add_option("--variant", variant, "nonempty | with_empty | with_unit | with_empty_and_unit");
  power->add_option("--out", out_file, "Output file (stdout if omitted)");
  power->callback([&] {
    const auto p = slo::build_power(slo::load_algebra(alg_file), slo::parse_variant(variant), slo::default_limits());
    emit(slo::algebra_to_json(p.algebra), out_file);
  });

  bool include_empty = false;
  auto* subs = app.add_subcommand("subalgebras", "List the subalgebras of a finite algebra");
  subs->add_option("--alg", alg_file, "Algebra JSON file")->required();
  subs->add_flag("--include-empty", include_empty, "Count the empty subalgebra");
  subs->callback([&] {
    const auto alg = slo::load_algebra(alg_file);
    const auto all = slo::enumerate_subalgebras(alg, include_empty, slo::default_limits());
    for (const auto& s : all) std::cout << slo::subset_label(alg, s.carrier) << "\n";
    std::cout << "count: " << all.size() << "\n";
  });

  auto* quotient = app.add_subcommand("quotient-rho", "Quotient of a power algebra by the replica relation");
  quotient->add_option("--alg", alg_file, "Base algebra JSON file (idempotent, entropic)")->required();
  quotient->add_option("--variant", variant, "nonempty | with_empty | with_unit | with_empty_and_unit");
  quotient->add_option("--out", out_file, "Output file (stdout if omitted)");
  quotient->callback([&] {
    const auto p = slo::build_power(slo::load_algebra(alg_file), slo::parse_variant(variant), slo::default_limits());
    emit(slo::algebra_to_json(slo::quotient_by_rho(p, slo::default_limits()).algebra.algebra()), out_file);
  });

  std::size_t gens = 0;
  auto* free_sl = app.add_subcommand("free-sl", "Free semilattice on N generators");
  free_sl->add_option("--gens", gens, "Number of generators (>= 1)")->required();
  free_sl->add_option("--out", out_file, "Output file (stdout if omitted)");
  free_sl->callback([&] { emit(slo::algebra_to_json(slo::free_semilattice(slo::generator_names(gens))), out_file); });

  bool count_only = false;
  auto* free_cdis = app.add_subcommand("free-cdis", "Free commutative doubly idempotent semiring with 0 and 1");
  free_cdis->add_option("--gens", gens, "Number of generators")->required();
  free_cdis->add_flag("--count", count_only, "Print only the number of elements");
  free_cdis->add_option("--out", out_file, "Output file (stdout if omitted)");
  free_cdis->callback([&] {
    if (count_only) {
      std::cout << slo::free_cdis_count(gens, slo::default_limits()) << "\n";
      return;
    }
    emit(slo::free_model_to_json(slo::free_cdis(slo::generator_names(gens), slo::default_limits())), out_file);
  });

  std::string gen_list, elem;
  auto* disj = app.add_subcommand("disj", "Disjunctive form of an element over generators");
  disj->add_option("--alg", alg_file, "SLO algebra JSON file (with a join)")->required();
  disj->add_option("--gens", gen_list, "Comma-separated generator labels")->required();
  disj->add_option("--elem", elem, "Target element label")->required();
  disj->callback([&] {
    const auto s = slo::require_slo(slo::load_algebra(alg_file));
    std::vector<slo::Elem> g;
    for (const auto& label : split_top_level(gen_list)) g.push_back(s.algebra().element(label));
    try {
      const auto form = slo::disjunctive_form(s, g, s.algebra().element(elem));
      std::cout << elem << " = " << (form.parts.empty() ? "(empty join)" : "") ;
      for (std::size_t i = 0; i < form.parts.size(); ++i) std::cout << (i ? " + " : "") << s.label(form.parts[i]);
      std::cout << "\n";
    } catch (const slo::GenerationError& e) {
      std::cout << "not generated: " << e.what() << "\n";
      code = kFail;
    }
  });

  std::string free_file, target_file, map_text;
  auto* extend = app.add_subcommand("extend", "Extend a generator map from a free model to a homomorphism");
  extend->add_option("--free", free_file, "Free model JSON file (with generators and decomposition)")->required();
  extend->add_option("--target", target_file, "Target SLO algebra JSON file")->required();
  extend->add_option("--map", map_text, "Generator map, e.g. \"x=a,y=b\"")->required();
  extend->add_option("--out", out_file, "Output file (stdout if omitted)");
  extend->callback([&] {
    const auto free = slo::free_model_from_json(slo::read_json_file(free_file));
    const auto target = slo::require_slo(slo::load_algebra(target_file));
    std::map<std::string, slo::Elem> h;
    for (const auto& item : split_top_level(map_text)) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw slo::ParseError("map entries look like name=label, got '" + item + "'");
      h[item.substr(0, eq)] = target.algebra().element(item.substr(eq + 1));
    }
    const auto hom = slo::extend_hom(free, h, target);
    slo::ordered_json j = slo::ordered_json::object();
    for (slo::Elem e = 0; e < free.algebra.size(); ++e) j[free.algebra.label(e)] = target.label(hom.image[e]);
    emit(j, out_file);
  });

  std::string suite_name;
  std::size_t max_size = 3;
  bool suite_json = false;
  auto* suite = app.add_subcommand("suite", "Run a desk-check suite");
  suite->add_option("name", suite_name, "gl | cor52 | counts | universality | all")
      ->required()
      ->check(CLI::IsMember({"gl", "cor52", "counts", "universality", "all"}));
  auto* max_opt = suite->add_option("--max-size", max_size, "Largest base size (counts: largest generator count)");
  suite->add_flag("--json", suite_json, "Deterministic JSON report");
  suite->callback([&] {
    const auto& limits = slo::default_limits();
    std::vector<slo::SuiteReport> reports;
    if (suite_name == "gl") reports.push_back(slo::suite_gl(max_size, limits));
    if (suite_name == "cor52") reports.push_back(slo::suite_cor52(max_size, limits));
    if (suite_name == "counts") reports.push_back(slo::suite_counts(max_opt->count() ? max_size : 4, limits));
    if (suite_name == "universality") reports.push_back(slo::suite_universality(limits));
    if (suite_name == "all") reports = slo::suite_all(max_size, limits);
    code = print_suites(reports, suite_json);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  } catch (const slo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
