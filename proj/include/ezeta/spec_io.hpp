#pragma once
/*
 * Spec files.
 *
 * A spec file is a JSON document; see docs/spec-format.md for the grammar.
 * parse_spec rejects unknown keys and validates the result; serialize_spec
 * writes a document that parses back to an equivalent spec.
 */

#include <json.hpp>

#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "spec.hpp"

namespace ezeta {

namespace detail {

using Json = nlohmann::ordered_json;

inline void only_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw SyntaxError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw SyntaxError(where + ": unknown key \"" + key + "\"");
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SyntaxError(where + ": missing key \"" + key + "\"");
  return *it;
}

inline Rational exact_from_double(double v) {
  // Every finite double is a dyadic rational.
  int exp = 0;
  double mant = std::frexp(v, &exp);
  const auto m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational q(m);
  if (exp > 0) q *= Rational(BigInt(1) << exp);
  else if (exp < 0) q /= Rational(BigInt(1) << -exp);
  return q;
}

inline GaussianRational json_value(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_gaussian(j.get<std::string>());
    if (j.is_number_integer()) return GaussianRational(Rational(j.get<long long>()));
    if (j.is_number_unsigned()) return GaussianRational(Rational(BigInt(j.get<unsigned long long>())));
    if (j.is_number_float()) return GaussianRational(exact_from_double(j.get<double>()));
  } catch (const SyntaxError& e) {
    throw SyntaxError(where + ": " + e.what());
  }
  throw SyntaxError(where + ": expected a complex value string or number");
}

inline std::uint64_t json_uint(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint64_t>(j.get<long long>());
  throw SyntaxError(where + ": expected a nonnegative integer");
}

inline std::uint64_t key_uint(const std::string& key, const std::string& where) {
  if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos || key.size() > 19)
    throw SyntaxError(where + ": key \"" + key + "\" is not a nonnegative integer");
  return std::stoull(key);
}

inline SpecNumber json_number(const Json& j, const std::string& where) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    const Rational q = j.is_number_unsigned() ? Rational(BigInt(j.get<unsigned long long>()))
                                              : Rational(j.get<long long>());
    return SpecNumber::from_rational(q);
  }
  if (j.is_number_float()) return SpecNumber::from_double(j.get<double>());
  if (j.is_string()) {
    try {
      return SpecNumber::from_rational(parse_rational(j.get<std::string>()));
    } catch (const SyntaxError& e) {
      throw SyntaxError(where + ": " + e.what());
    }
  }
  throw SyntaxError(where + ": expected a number or \"p/q\" string");
}

// Scaling token inside a mode string: decimals are floating point, the rest exact.
inline SpecNumber mode_number(const std::string& tok, const std::string& where) {
  try {
    if (tok.find_first_of(".eE") != std::string::npos) {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw SyntaxError("bad number \"" + tok + "\"");
      return SpecNumber::from_double(v);
    }
    return SpecNumber::from_rational(parse_rational(tok));
  } catch (const std::invalid_argument&) {
    throw SyntaxError(where + ": bad number \"" + tok + "\"");
  } catch (const SyntaxError& e) {
    throw SyntaxError(where + ": " + e.what());
  }
}

inline CoefficientRule json_rule(const Json& j, const std::string& where) {
  if (!j.is_object()) throw SyntaxError(where + ": expected a rule object");
  const Json& kind_j = require(j, "kind", where);
  if (!kind_j.is_string()) throw SyntaxError(where + ": kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "constant") {
    only_keys(j, {"kind", "value"}, where);
    return rule::constant(json_value(require(j, "value", where), where + ".value"));
  }
  if (kind == "power-decay") {
    only_keys(j, {"kind", "exponent"}, where);
    const SpecNumber e = json_number(require(j, "exponent", where), where + ".exponent");
    if (!e.exact) throw SyntaxError(where + ".exponent: must be an integer or fraction");
    return rule::power_decay(*e.exact);
  }
  if (kind == "character") {
    only_keys(j, {"kind", "modulus", "values"}, where);
    const std::uint64_t q = json_uint(require(j, "modulus", where), where + ".modulus");
    const Json& vals = require(j, "values", where);
    if (!vals.is_object()) throw SyntaxError(where + ".values: expected an object");
    std::map<std::uint64_t, GaussianRational> table;
    for (const auto& [k, v] : vals.items())
      table[key_uint(k, where + ".values")] = json_value(v, where + ".values." + k);
    return rule::character(q, std::move(table));
  }
  if (kind == "unit-power") {
    only_keys(j, {"kind", "base"}, where);
    return rule::unit_power(json_value(require(j, "base", where), where + ".base"));
  }
  if (kind == "finite-support") {
    only_keys(j, {"kind", "values", "default"}, where);
    const Json& vals = require(j, "values", where);
    if (!vals.is_object()) throw SyntaxError(where + ".values: expected an object");
    std::map<std::uint64_t, GaussianRational> table;
    for (const auto& [k, v] : vals.items())
      table[key_uint(k, where + ".values")] = json_value(v, where + ".values." + k);
    std::optional<CoefficientRule> fallback;
    if (auto it = j.find("default"); it != j.end()) fallback = json_rule(*it, where + ".default");
    return rule::finite_support(std::move(table), std::move(fallback));
  }
  if (kind == "root") {
    only_keys(j, {"kind", "of", "degree", "branch"}, where);
    const auto degree = json_uint(require(j, "degree", where), where + ".degree");
    const auto branch = json_uint(require(j, "branch", where), where + ".branch");
    if (degree > 1024) throw ConstraintError(where + ": root degree too large");
    return rule::root(json_rule(require(j, "of", where), where + ".of"), static_cast<unsigned>(degree),
                      static_cast<unsigned>(std::min<std::uint64_t>(branch, 1025)));
  }
  throw SyntaxError(where + ": unknown rule kind \"" + kind + "\"");
}

inline std::string number_text(const SpecNumber& x) {
  if (x.exact) return to_string(*x.exact);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x.value);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

inline Json number_json(const SpecNumber& x) {
  if (!x.exact) return x.value;
  if (boost::multiprecision::denominator(*x.exact) == 1 && abs(*x.exact) < Rational(1LL << 53))
    return x.exact->convert_to<long long>();
  return to_string(*x.exact);
}

inline Json value_map_json(const std::map<std::uint64_t, GaussianRational>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v.str();
  return out;
}

inline Json rule_json(const CoefficientRule& r) {
  struct Visitor {
    Json operator()(const ConstantExact& c) const { return {{"kind", "constant"}, {"value", c.value.str()}}; }
    Json operator()(const PowerDecay& d) const { return {{"kind", "power-decay"}, {"exponent", to_string(d.exponent)}}; }
    Json operator()(const DirichletCharacter& c) const {
      return {{"kind", "character"}, {"modulus", c.modulus}, {"values", value_map_json(c.table)}};
    }
    Json operator()(const UnitPowerByIndex& u) const { return {{"kind", "unit-power"}, {"base", u.base.str()}}; }
    Json operator()(const FiniteSupport& f) const {
      Json j = {{"kind", "finite-support"}, {"values", value_map_json(f.values)}};
      if (f.fallback) j["default"] = rule_json(*f.fallback);
      return j;
    }
    Json operator()(const RootOf& r) const {
      return {{"kind", "root"}, {"of", rule_json(*r.inner)}, {"degree", r.degree}, {"branch", r.branch}};
    }
  };
  return std::visit(Visitor{}, r);
}

}  // namespace detail

inline EulerProductSpec parse_spec(std::string_view text) {
  using detail::Json;
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw SyntaxError(std::string("malformed spec document: ") + e.what(), e.byte ? e.byte - 1 : 0);
  }
  detail::only_keys(doc, {"name", "dimension", "phi", "eta", "directions", "mode", "rules"}, "spec");
  EulerProductSpec s;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw SyntaxError("spec.name: expected a string");
    s.name = it->get<std::string>();
  }
  auto small_int = [&](const char* key) {
    const auto v = detail::json_uint(detail::require(doc, key, "spec"), std::string("spec.") + key);
    if (v > 4096) throw ConstraintError(std::string("spec.") + key + " is too large");
    return static_cast<int>(v);
  };
  s.dimension = small_int("dimension");
  s.phi = small_int("phi");
  s.eta = small_int("eta");

  const Json& dirs = detail::require(doc, "directions", "spec");
  if (!dirs.is_array()) throw SyntaxError("spec.directions: expected an array");
  for (std::size_t l = 0; l < dirs.size(); ++l) {
    const std::string where = "spec.directions[" + std::to_string(l) + "]";
    if (!dirs[l].is_array()) throw SyntaxError(where + ": expected an array");
    std::vector<SpecNumber> c;
    for (std::size_t j = 0; j < dirs[l].size(); ++j)
      c.push_back(detail::json_number(dirs[l][j], where + "[" + std::to_string(j) + "]"));
    s.directions.push_back(std::move(c));
  }

  const Json& mode = detail::require(doc, "mode", "spec");
  if (!mode.is_string()) throw SyntaxError("spec.mode: expected a string");
  const std::string m = mode.get<std::string>();
  auto gamma_list = [&](std::size_t prefix) {
    std::vector<SpecNumber> out;
    std::stringstream ss(m.substr(prefix));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok.erase(0, tok.find_first_not_of(" \t"));
      tok.erase(tok.find_last_not_of(" \t") + 1);
      out.push_back(detail::mode_number(tok, "spec.mode"));
    }
    return out;
  };
  if (m == "independent") {
    s.mode = DependenceMode::Independent;
  } else if (m.rfind("scalar:", 0) == 0) {
    s.mode = DependenceMode::ScalarMultiples;
    s.scaling = gamma_list(7);
  } else if (m.rfind("integer:", 0) == 0) {
    s.mode = DependenceMode::IntegerDependent;
    s.scaling = gamma_list(8);
  } else {
    throw SyntaxError("spec.mode: expected \"independent\", \"scalar:<list>\" or \"integer:<list>\"");
  }

  const Json& rules = detail::require(doc, "rules", "spec");
  if (!rules.is_array()) throw SyntaxError("spec.rules: expected an array");
  for (std::size_t l = 0; l < rules.size(); ++l) {
    const std::string where = "spec.rules[" + std::to_string(l) + "]";
    if (!rules[l].is_array()) throw SyntaxError(where + ": expected an array");
    std::vector<CoefficientRule> row;
    for (std::size_t k = 0; k < rules[l].size(); ++k)
      row.push_back(detail::json_rule(rules[l][k], where + "[" + std::to_string(k) + "]"));
    s.rules.push_back(std::move(row));
  }
  validate_spec(s);
  return s;
}

inline std::string serialize_spec(const EulerProductSpec& s) {
  using detail::Json;
  Json doc = Json::object();
  if (!s.name.empty()) doc["name"] = s.name;
  doc["dimension"] = s.dimension;
  doc["phi"] = s.phi;
  doc["eta"] = s.eta;
  Json dirs = Json::array();
  for (const auto& c : s.directions) {
    Json row = Json::array();
    for (const auto& x : c) row.push_back(detail::number_json(x));
    dirs.push_back(row);
  }
  doc["directions"] = dirs;
  std::string mode;
  if (s.mode == DependenceMode::Independent) {
    mode = "independent";
  } else {
    mode = s.mode == DependenceMode::ScalarMultiples ? "scalar:" : "integer:";
    for (std::size_t l = 0; l < s.scaling.size(); ++l) mode += (l ? "," : "") + detail::number_text(s.scaling[l]);
  }
  doc["mode"] = mode;
  Json rules = Json::array();
  for (const auto& row : s.rules) {
    Json r = Json::array();
    for (const auto& rule : row) r.push_back(detail::rule_json(rule));
    rules.push_back(r);
  }
  doc["rules"] = rules;
  return doc.dump(2) + "\n";
}

}  // namespace ezeta
