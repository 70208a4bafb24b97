#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slo/algebra_io.hpp"
#include "slo/slo_core.hpp"

namespace slo {

/// Outcome of testing a candidate free object against the identities of the
/// base variety.
struct MembershipReport {
  bool in_variety = true;
  std::optional<Identity> failed;
  std::vector<std::pair<std::string, std::string>> witness;
  std::string lhs;
  std::string rhs;
};

/// An SLO algebra generated by named elements, where every element carries a
/// disjunctive decomposition into Omega-terms over the generator names.
struct FreeModel {
  SloAlgebra algebra;
  std::vector<std::pair<std::string, Elem>> generators;
  std::vector<std::vector<Term>> decomposition;
  std::optional<MembershipReport> membership;

  Env generator_env() const { return Env(generators.begin(), generators.end()); }

  std::vector<Elem> generator_elements() const {
    std::vector<Elem> out;
    for (const auto& [name, e] : generators) out.push_back(e);
    return out;
  }

  /// Join of the values of the decomposition terms of `e` (zero if empty).
  Elem evaluate_decomposition(Elem e) const {
    const Env env = generator_env();
    std::vector<Elem> values;
    for (const Term& part : decomposition.at(e)) values.push_back(eval_term(algebra.algebra(), part, env));
    return algebra.join_all(values);
  }
};

/// First element whose decomposition does not re-evaluate to itself.
inline std::optional<Elem> decomposition_mismatch(const FreeModel& m) {
  if (m.decomposition.size() != m.algebra.size()) return Elem{0};
  for (Elem e = 0; e < m.algebra.size(); ++e)
    if (m.evaluate_decomposition(e) != e) return e;
  return std::nullopt;
}

inline ordered_json free_model_to_json(const FreeModel& m) {
  ordered_json j = algebra_to_json(m.algebra.algebra());
  ordered_json gens = ordered_json::object();
  for (const auto& [name, e] : m.generators) gens[name] = m.algebra.label(e);
  j["generators"] = std::move(gens);
  ordered_json dec = ordered_json::object();
  for (Elem e = 0; e < m.algebra.size(); ++e) {
    ordered_json parts = ordered_json::array();
    for (const Term& t : m.decomposition[e]) parts.push_back(to_string(t));
    dec[m.algebra.label(e)] = std::move(parts);
  }
  j["decomposition"] = std::move(dec);
  if (m.membership) {
    ordered_json mem;
    mem["in_variety"] = m.membership->in_variety;
    if (m.membership->failed) {
      mem["failed_identity"] = to_string(*m.membership->failed);
      ordered_json w = ordered_json::object();
      for (const auto& [v, l] : m.membership->witness) w[v] = l;
      mem["witness"] = std::move(w);
      mem["lhs"] = m.membership->lhs;
      mem["rhs"] = m.membership->rhs;
    }
    j["membership"] = std::move(mem);
  }
  return j;
}

inline FreeModel free_model_from_json(const ordered_json& j) {
  FiniteAlgebra alg = algebra_from_json(j);
  SloAlgebra slo = require_slo(alg);
  if (!j.contains("generators") || !j.contains("decomposition"))
    throw ParseError("free model file needs \"generators\" and \"decomposition\"");
  std::vector<std::pair<std::string, Elem>> gens;
  for (auto it = j.at("generators").begin(); it != j.at("generators").end(); ++it)
    gens.emplace_back(it.key(), slo.algebra().element(it.value().get<std::string>()));
  std::vector<std::vector<Term>> dec(slo.size());
  std::vector<bool> seen(slo.size(), false);
  for (auto it = j.at("decomposition").begin(); it != j.at("decomposition").end(); ++it) {
    const Elem e = slo.algebra().element(it.key());
    seen[e] = true;
    for (const auto& part : it.value()) dec[e].push_back(parse_term(part.get<std::string>(), slo.algebra().signature()));
  }
  for (Elem e = 0; e < slo.size(); ++e)
    if (!seen[e]) throw ParseError("no decomposition for element '" + slo.label(e) + "'");
  FreeModel m{std::move(slo), std::move(gens), std::move(dec), std::nullopt};
  if (auto bad = decomposition_mismatch(m))
    throw SemanticError("decomposition of '" + m.algebra.label(*bad) + "' does not evaluate to it");
  return m;
}

} // namespace slo
