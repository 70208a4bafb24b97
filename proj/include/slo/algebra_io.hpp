#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "slo/finite_algebra.hpp"

// Algebra file format (JSON):
//   {"signature": <name or inline DSL>, "carrier": [labels],
//    "ops": {symbol: nested row-major table of labels},
//    "join": symbol?, "zero": label?, "unit": label?}
// An n-ary table is nested n times, outermost index = first argument; a
// constant's table is a bare label.

namespace slo {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline void write_table(const FiniteAlgebra& alg, std::size_t op, ordered_json& out) {
  const std::size_t k = alg.arity(op);
  const std::size_t n = alg.size();
  const auto& table = alg.table(op);
  std::function<ordered_json(std::size_t, std::size_t)> level = [&](std::size_t depth, std::size_t offset) {
    if (depth == k) return ordered_json(alg.label(table[offset]));
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) arr.push_back(level(depth + 1, offset * n + i));
    return arr;
  };
  out = level(0, 0);
}

inline std::size_t nesting_depth(const ordered_json& j) {
  std::size_t d = 0;
  const ordered_json* cur = &j;
  while (cur->is_array()) {
    ++d;
    if (cur->empty()) break;
    cur = &(*cur)[0];
  }
  return d;
}

inline void read_table(const ordered_json& j, std::size_t arity, std::size_t n,
                       const std::unordered_map<std::string, Elem>& index, const std::string& symbol,
                       std::vector<Elem>& out) {
  if (arity == 0) {
    if (!j.is_string()) throw ParseError("table of '" + symbol + "' must hold element labels");
    auto it = index.find(j.get<std::string>());
    if (it == index.end()) throw ParseError("table of '" + symbol + "' names unknown element '" + j.get<std::string>() + "'");
    out.push_back(it->second);
    return;
  }
  if (!j.is_array() || j.size() != n)
    throw ParseError("table of '" + symbol + "' must be nested arrays of length " + std::to_string(n));
  for (const auto& row : j) read_table(row, arity - 1, n, index, symbol, out);
}

} // namespace detail

inline ordered_json algebra_to_json(const FiniteAlgebra& alg) {
  ordered_json j;
  j["signature"] = print_signature(alg.signature());
  j["carrier"] = alg.carrier();
  ordered_json ops = ordered_json::object();
  for (std::size_t k = 0; k < alg.signature().op_count(); ++k)
    detail::write_table(alg, k, ops[alg.signature().op(k).name]);
  j["ops"] = std::move(ops);
  if (alg.signature().join_symbol()) j["join"] = *alg.signature().join_symbol();
  if (auto z = alg.zero()) j["zero"] = alg.label(*z);
  if (auto u = alg.unit()) j["unit"] = alg.label(*u);
  return j;
}

inline FiniteAlgebra algebra_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ParseError("algebra file must be a JSON object");
  for (const char* key : {"signature", "carrier", "ops"})
    if (!j.contains(key)) throw ParseError(std::string("algebra file lacks \"") + key + "\"");
  std::vector<std::string> carrier;
  for (const auto& l : j.at("carrier")) {
    if (!l.is_string()) throw ParseError("carrier labels must be strings");
    carrier.push_back(l.get<std::string>());
  }
  std::unordered_map<std::string, Elem> index;
  for (std::size_t i = 0; i < carrier.size(); ++i)
    if (!index.emplace(carrier[i], static_cast<Elem>(i)).second)
      throw ParseError("duplicate carrier label '" + carrier[i] + "'");

  const ordered_json& ops = j.at("ops");
  if (!ops.is_object()) throw ParseError("\"ops\" must be an object");
  const std::string sig_text = j.at("signature").get<std::string>();
  Signature sig;
  const auto start = sig_text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && sig_text.compare(start, 10, "signature ") == 0) {
    sig = parse_signature(sig_text);
  } else {
    sig = Signature(sig_text);
    for (auto it = ops.begin(); it != ops.end(); ++it) sig.add_op(it.key(), detail::nesting_depth(it.value()));
  }
  if (j.contains("join")) sig.set_join(j.at("join").get<std::string>());

  std::vector<std::vector<Elem>> tables(sig.op_count());
  for (auto it = ops.begin(); it != ops.end(); ++it)
    if (!sig.has(it.key())) throw ParseError("table for undeclared symbol '" + it.key() + "'");

  auto designate = [&](const char* key, const std::optional<std::string>& symbol, bool is_zero) {
    if (!j.contains(key)) return;
    const std::string label = j.at(key).get<std::string>();
    auto e = index.find(label);
    if (e == index.end()) throw ParseError(std::string("\"") + key + "\" names unknown element '" + label + "'");
    if (symbol) {
      if (ops.contains(*symbol) && ops.at(*symbol) != label)
        throw ParseError(std::string("\"") + key + "\" disagrees with the table of '" + *symbol + "'");
      return;
    }
    const std::string fresh = sig.fresh_symbol(key);
    if (is_zero)
      sig.set_zero(fresh);
    else
      sig.set_unit(fresh);
    tables.emplace_back(1, e->second);
  };
  // Constants designated by label only get a fresh symbol appended after the declared ones.
  designate("zero", sig.zero_symbol(), true);
  designate("unit", sig.unit_symbol(), false);

  for (std::size_t k = 0; k < sig.op_count(); ++k) {
    if (!tables[k].empty()) continue;
    const OpSymbol& op = sig.op(k);
    if (!ops.contains(op.name)) {
      const bool designated = (sig.zero_symbol() == op.name && j.contains("zero")) ||
                              (sig.unit_symbol() == op.name && j.contains("unit"));
      if (!designated) throw ParseError("no table for symbol '" + op.name + "'");
      tables[k].push_back(index.at(j.at(sig.zero_symbol() == op.name ? "zero" : "unit").get<std::string>()));
      continue;
    }
    detail::read_table(ops.at(op.name), op.arity, carrier.size(), index, op.name, tables[k]);
  }
  return FiniteAlgebra(std::move(sig), std::move(carrier), std::move(tables));
}

inline ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

inline FiniteAlgebra load_algebra(const std::string& path) { return algebra_from_json(read_json_file(path)); }

inline void save_algebra(const std::string& path, const FiniteAlgebra& alg) {
  write_json_file(path, algebra_to_json(alg));
}

} // namespace slo
