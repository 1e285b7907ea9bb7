#pragma once
/*
 * Euler-product specifications.
 *
 * A spec describes Z(s) = prod_p prod_l prod_k (1 - a_lk(p) p^{-<c_l,s>})^{-1}
 * through a phi x eta grid of coefficient rules a_lk and phi direction
 * vectors c_l in R^d.
 */

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "primes.hpp"
#include "rational.hpp"

namespace ezeta {

// ---------------------------------------------------------------------------
// Coefficient values

class CoefficientValue {
 public:
  CoefficientValue() : exact_(GaussianRational(0)) {}
  static CoefficientValue exact(GaussianRational v) {
    CoefficientValue c;
    c.numeric_ = v.to_complex();
    c.exact_ = std::move(v);
    return c;
  }
  static CoefficientValue numeric(std::complex<double> v, bool positive_real = false) {
    CoefficientValue c;
    c.exact_.reset();
    c.numeric_ = v;
    c.positive_real_ = positive_real;
    return c;
  }

  bool is_exact() const { return exact_.has_value(); }
  const GaussianRational& exact_value() const { return *exact_; }
  std::complex<double> value() const { return numeric_; }
  // Numeric value known to be a positive real by construction (p^{-a}).
  bool positive_real() const { return positive_real_; }

  std::string str() const {
    if (exact_) return exact_->str();
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", numeric_.real(), numeric_.imag());
    return buf;
  }

 private:
  std::optional<GaussianRational> exact_;
  std::complex<double> numeric_{0.0, 0.0};
  bool positive_real_ = false;
};

// ---------------------------------------------------------------------------
// Coefficient rules

struct ConstantExact;
struct PowerDecay;
struct DirichletCharacter;
struct UnitPowerByIndex;
struct FiniteSupport;
struct RootOf;

using CoefficientRule =
    std::variant<ConstantExact, PowerDecay, DirichletCharacter, UnitPowerByIndex, FiniteSupport, RootOf>;
using RulePtr = std::shared_ptr<const CoefficientRule>;

struct ConstantExact {
  GaussianRational value;
  friend bool operator==(const ConstantExact&, const ConstantExact&) = default;
};

// a(p) = p^{-exponent}
struct PowerDecay {
  Rational exponent;
  friend bool operator==(const PowerDecay&, const PowerDecay&) = default;
};

// a(p) = table[p mod modulus]; residues missing from the table map to 0.
struct DirichletCharacter {
  std::uint64_t modulus = 1;
  std::map<std::uint64_t, GaussianRational> table;
  friend bool operator==(const DirichletCharacter&, const DirichletCharacter&) = default;
};

// a(p_n) = base^n where p_n is the n-th prime.
struct UnitPowerByIndex {
  GaussianRational base;
  friend bool operator==(const UnitPowerByIndex&, const UnitPowerByIndex&) = default;
};

struct FiniteSupport {
  std::map<std::uint64_t, GaussianRational> values;
  RulePtr fallback;  // null means 0 off the support
};

// Branch k of the degree-th root: principal root of the inner value times
// e^{2 pi i k / degree}, 1 <= k <= degree.
struct RootOf {
  RulePtr inner;
  unsigned degree = 1;
  unsigned branch = 1;
};

bool operator==(const FiniteSupport& a, const FiniteSupport& b);
bool operator==(const RootOf& a, const RootOf& b);

inline bool same_rule(const RulePtr& a, const RulePtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}
inline bool operator==(const FiniteSupport& a, const FiniteSupport& b) {
  return a.values == b.values && same_rule(a.fallback, b.fallback);
}
inline bool operator==(const RootOf& a, const RootOf& b) {
  return a.degree == b.degree && a.branch == b.branch && same_rule(a.inner, b.inner);
}

namespace rule {
inline CoefficientRule constant(GaussianRational v) { return ConstantExact{std::move(v)}; }
inline CoefficientRule power_decay(Rational e) { return PowerDecay{std::move(e)}; }
inline CoefficientRule character(std::uint64_t q, std::map<std::uint64_t, GaussianRational> t) {
  return DirichletCharacter{q, std::move(t)};
}
inline CoefficientRule unit_power(GaussianRational base) { return UnitPowerByIndex{std::move(base)}; }
inline CoefficientRule finite_support(std::map<std::uint64_t, GaussianRational> v,
                                      std::optional<CoefficientRule> fallback = std::nullopt) {
  FiniteSupport fs{std::move(v), nullptr};
  if (fallback) fs.fallback = std::make_shared<const CoefficientRule>(std::move(*fallback));
  return fs;
}
inline CoefficientRule root(CoefficientRule inner, unsigned degree, unsigned branch) {
  return RootOf{std::make_shared<const CoefficientRule>(std::move(inner)), degree, branch};
}
// The character mod 4 with chi(1) = 1, chi(3) = -1.
inline CoefficientRule chi4() { return character(4, {{1, GaussianRational(1)}, {3, GaussianRational(-1)}}); }
}  // namespace rule

// ---------------------------------------------------------------------------
// Specs

// A real number as written in a spec: exact when given as a fraction.
struct SpecNumber {
  double value = 0.0;
  std::optional<Rational> exact;

  static SpecNumber from_rational(const Rational& q) { return {to_double(q), q}; }
  static SpecNumber from_double(double v) { return {v, std::nullopt}; }
  friend bool operator==(const SpecNumber& a, const SpecNumber& b) {
    return a.value == b.value && a.exact == b.exact;
  }
};

enum class DependenceMode { Independent, ScalarMultiples, IntegerDependent };

struct TruncationBounds {
  std::uint64_t prime_cutoff = 100000;  // P
  unsigned power_cutoff = 60;           // R
  std::uint64_t coefficient_cutoff = 10000;  // N

  void check() const {
    if (prime_cutoff < 2) throw ParameterError("prime cutoff must be at least 2");
    if (power_cutoff < 1) throw ParameterError("power cutoff must be at least 1");
    if (coefficient_cutoff < 1) throw ParameterError("coefficient cutoff must be at least 1");
  }
};

struct EulerProductSpec {
  std::string name;
  int dimension = 1;
  int phi = 1;
  int eta = 1;
  std::vector<std::vector<SpecNumber>> directions;  // phi x dimension
  DependenceMode mode = DependenceMode::Independent;
  std::vector<SpecNumber> scaling;  // gamma_l, empty in Independent mode
  std::vector<std::vector<CoefficientRule>> rules;  // phi x eta

  std::vector<double> direction(int l) const {
    std::vector<double> c;
    for (const auto& x : directions.at(l)) c.push_back(x.value);
    return c;
  }
};

// ---------------------------------------------------------------------------
// Rule evaluation

struct PrimeContext {
  std::uint64_t p = 2;
  std::uint64_t index = 1;  // p is the index-th prime
};

namespace detail {

inline BigInt integer_root(const BigInt& n, unsigned g) {
  if (n < 2 || g == 1) return n;
  BigInt lo = 0, hi = BigInt(1) << (msb(n) / g + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (boost::multiprecision::pow(mid, g) <= n) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

// Exact g-th root of a positive rational, if there is one.
inline std::optional<Rational> exact_root(const Rational& q, unsigned g) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt a = integer_root(numerator(q), g), b = integer_root(denominator(q), g);
  if (boost::multiprecision::pow(a, g) != numerator(q) || boost::multiprecision::pow(b, g) != denominator(q))
    return std::nullopt;
  return Rational(a, b);
}

inline GaussianRational i_power(long long j) {
  switch (((j % 4) + 4) % 4) {
    case 0: return GaussianRational(1);
    case 1: return GaussianRational::i();
    case 2: return GaussianRational(-1);
    default: return -GaussianRational::i();
  }
}

// Exact value of branch k of v^{1/g}, when it lies in Q(i).
inline std::optional<GaussianRational> exact_branch_root(const GaussianRational& v, unsigned g, unsigned k) {
  if (v.is_zero()) return GaussianRational(0);
  if (g == 1) return v;
  // v = q * i^m with q > 0 rational, m in {0, 1, 2, -1}
  Rational q;
  long long m;
  if (v.im() == 0) {
    q = v.re() > 0 ? v.re() : Rational(-v.re());
    m = v.re() > 0 ? 0 : 2;
  } else if (v.re() == 0) {
    q = v.im() > 0 ? v.im() : Rational(-v.im());
    m = v.im() > 0 ? 1 : -1;
  } else {
    return std::nullopt;
  }
  const long long total = m + 4LL * k;
  if (total % static_cast<long long>(g) != 0) return std::nullopt;
  auto mag = exact_root(q, g);
  if (!mag) return std::nullopt;
  return GaussianRational(*mag) * i_power(total / static_cast<long long>(g));
}

inline std::complex<double> numeric_branch_root(std::complex<double> v, unsigned g, unsigned k) {
  if (v == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};
  const double two_pi = 2.0 * std::numbers::pi;
  return std::pow(v, 1.0 / g) * std::polar(1.0, two_pi * k / g);
}

}  // namespace detail

CoefficientValue rule_value(const CoefficientRule& r, const PrimeContext& ctx);

inline CoefficientValue rule_value(const CoefficientRule& r, const PrimeContext& ctx) {
  struct Visitor {
    const PrimeContext& ctx;
    CoefficientValue operator()(const ConstantExact& c) const { return CoefficientValue::exact(c.value); }
    CoefficientValue operator()(const PowerDecay& d) const {
      return CoefficientValue::numeric(std::pow(static_cast<double>(ctx.p), -to_double(d.exponent)), true);
    }
    CoefficientValue operator()(const DirichletCharacter& c) const {
      auto it = c.table.find(ctx.p % c.modulus);
      return CoefficientValue::exact(it == c.table.end() ? GaussianRational(0) : it->second);
    }
    CoefficientValue operator()(const UnitPowerByIndex& u) const {
      int m;
      if (u.base.is_fourth_root_of_unity(&m))
        return CoefficientValue::exact(detail::i_power(static_cast<long long>(m) * static_cast<long long>(ctx.index % 4)));
      // Other unit bases are kept exact while the powers stay small.
      if (ctx.index <= 256) return CoefficientValue::exact(pow(u.base, ctx.index));
      const auto b = u.base.to_complex();
      return CoefficientValue::numeric(std::polar(1.0, std::arg(b) * static_cast<double>(ctx.index)));
    }
    CoefficientValue operator()(const FiniteSupport& f) const {
      auto it = f.values.find(ctx.p);
      if (it != f.values.end()) return CoefficientValue::exact(it->second);
      if (!f.fallback) return CoefficientValue::exact(GaussianRational(0));
      return rule_value(*f.fallback, ctx);
    }
    CoefficientValue operator()(const RootOf& r) const {
      CoefficientValue inner = rule_value(*r.inner, ctx);
      if (inner.is_exact()) {
        if (auto v = detail::exact_branch_root(inner.exact_value(), r.degree, r.branch))
          return CoefficientValue::exact(*v);
      }
      const bool positive = inner.positive_real() && r.branch == r.degree;
      return CoefficientValue::numeric(detail::numeric_branch_root(inner.value(), r.degree, r.branch), positive);
    }
  };
  return std::visit(Visitor{ctx}, r);
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline void check_unit_disc(const GaussianRational& v, const std::string& where) {
  if (v.norm() > 1) throw ConstraintError(where + ": |" + v.str() + "| > 1");
}

inline void validate_rule(const CoefficientRule& r, const std::string& where) {
  struct Visitor {
    const std::string& where;
    void operator()(const ConstantExact& c) const { check_unit_disc(c.value, where); }
    void operator()(const PowerDecay& d) const {
      if (d.exponent <= 0) throw ConstraintError(where + ": power-decay exponent must be positive");
    }
    void operator()(const DirichletCharacter& c) const {
      if (c.modulus == 0) throw ConstraintError(where + ": character modulus must be positive");
      for (const auto& [res, v] : c.table) {
        if (res >= c.modulus) throw ConstraintError(where + ": residue " + std::to_string(res) + " out of range");
        check_unit_disc(v, where);
        if (!v.is_zero() && gcd_u64(res, c.modulus) != 1)
          throw ConstraintError(where + ": nonzero value on non-coprime residue " + std::to_string(res));
      }
      auto at = [&](std::uint64_t a) {
        auto it = c.table.find(a % c.modulus);
        return it == c.table.end() ? GaussianRational(0) : it->second;
      };
      for (std::uint64_t a = 1; a < c.modulus; ++a) {
        if (gcd_u64(a, c.modulus) != 1) continue;
        for (std::uint64_t b = a; b < c.modulus; ++b) {
          if (gcd_u64(b, c.modulus) != 1) continue;
          if (at(a * b) != at(a) * at(b))
            throw ConstraintError(where + ": character table is not multiplicative at residues " +
                                  std::to_string(a) + ", " + std::to_string(b));
        }
      }
    }
    void operator()(const UnitPowerByIndex& u) const {
      if (u.base.norm() != 1) throw ConstraintError(where + ": unit-power base must have modulus 1");
    }
    void operator()(const FiniteSupport& f) const {
      for (const auto& [p, v] : f.values) {
        if (!is_prime(p)) throw ConstraintError(where + ": support key " + std::to_string(p) + " is not prime");
        check_unit_disc(v, where);
      }
      if (f.fallback) validate_rule(*f.fallback, where);
    }
    void operator()(const RootOf& r) const {
      if (!r.inner) throw ConstraintError(where + ": root rule without inner rule");
      if (r.degree < 1 || r.branch < 1 || r.branch > r.degree)
        throw ConstraintError(where + ": root branch must lie in 1..degree");
      validate_rule(*r.inner, where);
    }
  };
  std::visit(Visitor{where}, r);
}

}  // namespace detail

inline void validate_spec(const EulerProductSpec& s) {
  if (s.dimension < 1) throw ConstraintError("dimension must be positive");
  if (s.phi < 1) throw ConstraintError("phi must be positive");
  if (s.eta < 1) throw ConstraintError("eta must be positive");
  if (static_cast<int>(s.directions.size()) != s.phi) throw ConstraintError("expected phi direction vectors");
  for (int l = 0; l < s.phi; ++l) {
    if (static_cast<int>(s.directions[l].size()) != s.dimension)
      throw ConstraintError("direction " + std::to_string(l + 1) + " has wrong length");
    bool nonzero = false;
    for (const auto& x : s.directions[l]) {
      if (!std::isfinite(x.value)) throw ConstraintError("direction entries must be finite");
      nonzero |= x.value != 0.0;
    }
    if (!nonzero) throw ConstraintError("direction " + std::to_string(l + 1) + " is the zero vector");
  }
  if (static_cast<int>(s.rules.size()) != s.phi) throw ConstraintError("expected phi rows of rules");
  for (int l = 0; l < s.phi; ++l) {
    if (static_cast<int>(s.rules[l].size()) != s.eta)
      throw ConstraintError("rule row " + std::to_string(l + 1) + " must have eta entries");
    for (int k = 0; k < s.eta; ++k)
      detail::validate_rule(s.rules[l][k], "rule (" + std::to_string(l + 1) + "," + std::to_string(k + 1) + ")");
  }
  switch (s.mode) {
    case DependenceMode::Independent:
      if (!s.scaling.empty()) throw ConstraintError("independent mode takes no scaling factors");
      break;
    case DependenceMode::ScalarMultiples: {
      if (static_cast<int>(s.scaling.size()) != s.phi) throw ConstraintError("scalar mode needs phi scaling factors");
      if (s.scaling[0].value != 1.0) throw ConstraintError("scalar mode needs gamma_1 = 1");
      std::set<double> seen;
      for (const auto& g : s.scaling)
        if (!seen.insert(g.value).second) throw ConstraintError("scalar mode needs distinct scaling factors");
      break;
    }
    case DependenceMode::IntegerDependent:
      if (static_cast<int>(s.scaling.size()) != s.phi) throw ConstraintError("integer mode needs phi scaling factors");
      for (const auto& g : s.scaling) {
        const bool integral = g.exact ? boost::multiprecision::denominator(*g.exact) == 1
                                      : std::floor(g.value) == g.value;
        if (!integral || g.value < 1) throw ConstraintError("integer mode needs positive integer scaling factors");
      }
      break;
  }
}

struct DependenceReport {
  bool pass = false;
  int rank = 0;
  std::string note;
};

inline int numeric_rank(std::vector<std::vector<double>> m, double tol = 1e-10) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
    std::size_t piv = rank;
    for (std::size_t r = rank; r < rows; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) <= tol) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const double f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline DependenceReport validate_dependence(const EulerProductSpec& s) {
  DependenceReport rep;
  std::vector<std::vector<double>> m;
  for (int l = 0; l < s.phi; ++l) m.push_back(s.direction(l));
  rep.rank = numeric_rank(m);
  auto multiples_match = [&](auto gamma_of) {
    const auto c1 = s.direction(0);
    for (int l = 0; l < s.phi; ++l) {
      const auto cl = s.direction(l);
      for (int j = 0; j < s.dimension; ++j)
        if (std::abs(cl[j] - gamma_of(l) * c1[j]) > 1e-12) return false;
    }
    return true;
  };
  switch (s.mode) {
    case DependenceMode::Independent:
      rep.pass = rep.rank == s.phi;
      rep.note = "rank " + std::to_string(rep.rank) + " of " + std::to_string(s.phi);
      break;
    case DependenceMode::ScalarMultiples:
      rep.pass = multiples_match([&](int l) { return s.scaling[l].value; });
      rep.note = rep.pass ? "rational independence of scaling factors is user-declared"
                          : "directions are not the declared multiples of c_1";
      break;
    case DependenceMode::IntegerDependent: {
      bool integral = true;
      for (const auto& g : s.scaling) integral &= g.value >= 1 && std::floor(g.value) == g.value;
      rep.pass = integral && multiples_match([&](int l) { return s.scaling[l].value / s.scaling[0].value; });
      rep.note = rep.pass ? "reduce before classification" : "directions are not the declared integer multiples";
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Builtins

namespace detail {

inline EulerProductSpec one_dim(std::string name, std::vector<CoefficientRule> row) {
  EulerProductSpec s;
  s.name = std::move(name);
  s.eta = static_cast<int>(row.size());
  s.directions = {{SpecNumber::from_rational(1)}};
  s.rules = {std::move(row)};
  return s;
}

// Ranks c_l = gamma_l * 1 on d = 1; rows are padded with zero rules to equal length.
inline EulerProductSpec integer_dependent(std::string name, std::vector<unsigned> gamma,
                                          std::vector<std::vector<CoefficientRule>> rows) {
  EulerProductSpec s;
  s.name = std::move(name);
  s.phi = static_cast<int>(rows.size());
  s.mode = DependenceMode::IntegerDependent;
  std::size_t eta = 0;
  for (const auto& r : rows) eta = std::max(eta, r.size());
  for (auto& r : rows)
    while (r.size() < eta) r.push_back(rule::constant(0));
  s.eta = static_cast<int>(eta);
  for (unsigned g : gamma) {
    s.directions.push_back({SpecNumber::from_rational(g)});
    s.scaling.push_back(SpecNumber::from_rational(g));
  }
  s.rules = std::move(rows);
  return s;
}

inline unsigned parse_builtin_count(const std::string& name, std::size_t prefix, unsigned lo, unsigned hi) {
  const std::string digits = name.substr(prefix);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 4)
    throw ParameterError("bad builtin parameter in \"" + name + "\"");
  const unsigned v = static_cast<unsigned>(std::stoul(digits));
  if (v < lo || v > hi) throw ParameterError("builtin parameter out of range in \"" + name + "\"");
  return v;
}

}  // namespace detail

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "riemann", "dirichlet-chi4", "dedekind-qi", "zq",          "fn:<n>",
      "zeta-l2s", "zeta2-l2s",     "l-zeta2s",    "zeta3s-factored", "zeta-k:<k>"};
  return names;
}

inline EulerProductSpec builtin_spec(const std::string& name) {
  using detail::one_dim;
  const GaussianRational one(1), i = GaussianRational::i();
  EulerProductSpec s;
  if (name == "riemann") {
    s = one_dim(name, {rule::constant(one)});
  } else if (name == "dirichlet-chi4") {
    s = one_dim(name, {rule::chi4()});
  } else if (name == "dedekind-qi") {
    s = one_dim(name, {rule::constant(one), rule::chi4()});
  } else if (name == "zq") {
    s = one_dim(name, {rule::finite_support({{2, one}}), rule::finite_support({{2, i}}),
                       rule::finite_support({{2, -i}})});
  } else if (name.rfind("fn:", 0) == 0) {
    const unsigned n = detail::parse_builtin_count(name, 3, 0, 64);
    std::vector<CoefficientRule> row(n, rule::finite_support({{2, one}}));
    row.push_back(rule::finite_support({{2, i}}));
    row.push_back(rule::finite_support({{2, -i}}));
    s = one_dim(name, std::move(row));
  } else if (name == "zeta-l2s") {
    s = detail::integer_dependent(name, {1, 2}, {{rule::constant(one)}, {rule::chi4()}});
  } else if (name == "zeta2-l2s") {
    s = detail::integer_dependent(name, {1, 2}, {{rule::constant(one), rule::constant(one)}, {rule::chi4()}});
  } else if (name == "l-zeta2s") {
    s = detail::integer_dependent(name, {1, 2}, {{rule::chi4()}, {rule::constant(one)}});
  } else if (name == "zeta3s-factored") {
    s = one_dim(name, {rule::root(rule::constant(one), 3, 1), rule::root(rule::constant(one), 3, 2),
                       rule::root(rule::constant(one), 3, 3)});
  } else if (name.rfind("zeta-k:", 0) == 0) {
    const unsigned k = detail::parse_builtin_count(name, 7, 1, 64);
    s = one_dim(name, std::vector<CoefficientRule>(k, rule::constant(one)));
  } else {
    throw ParameterError("unknown builtin spec \"" + name + "\"");
  }
  validate_spec(s);
  return s;
}

// Builtins in their concrete form (fn:0..4, zeta-k:2).
inline std::vector<std::string> builtin_gallery() {
  return {"riemann", "dirichlet-chi4", "dedekind-qi", "zq",        "fn:0",           "fn:1",   "fn:2",
          "fn:3",    "fn:4",           "zeta-l2s",    "zeta2-l2s", "l-zeta2s", "zeta3s-factored", "zeta-k:2"};
}

// ---------------------------------------------------------------------------
// Structural queries

namespace detail {

inline bool rule_has_infinite_support(const CoefficientRule& r) {
  if (const auto* f = std::get_if<FiniteSupport>(&r)) return f->fallback && rule_has_infinite_support(*f->fallback);
  if (const auto* c = std::get_if<ConstantExact>(&r)) return !c->value.is_zero();
  if (const auto* c = std::get_if<DirichletCharacter>(&r)) {
    for (const auto& [res, v] : c->table)
      if (!v.is_zero()) return true;
    return false;
  }
  if (const auto* ro = std::get_if<RootOf>(&r)) return rule_has_infinite_support(*ro->inner);
  return true;
}

inline void collect_support(const CoefficientRule& r, std::set<std::uint64_t>& out) {
  if (const auto* f = std::get_if<FiniteSupport>(&r)) {
    for (const auto& [p, v] : f->values) out.insert(p);
    if (f->fallback) collect_support(*f->fallback, out);
  } else if (const auto* ro = std::get_if<RootOf>(&r)) {
    collect_support(*ro->inner, out);
  }
}

}  // namespace detail

// True when every rule of rank l vanishes off a finite set of primes.
inline bool rank_is_finite_support(const EulerProductSpec& s, int l) {
  for (const auto& r : s.rules.at(l))
    if (detail::rule_has_infinite_support(r)) return false;
  return true;
}

inline bool spec_is_finite_support(const EulerProductSpec& s) {
  for (int l = 0; l < s.phi; ++l)
    if (!rank_is_finite_support(s, l)) return false;
  return true;
}

// Primes explicitly named by finite-support rules of rank l.
inline std::vector<std::uint64_t> support_primes(const EulerProductSpec& s, int l) {
  std::set<std::uint64_t> out;
  for (const auto& r : s.rules.at(l)) detail::collect_support(r, out);
  return {out.begin(), out.end()};
}

}  // namespace ezeta
