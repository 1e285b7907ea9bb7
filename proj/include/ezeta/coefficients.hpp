#pragma once
/*
 * Local and global Dirichlet coefficients.
 *
 * At a prime p the rank-l factor is prod_k (1 - a_k x)^{-1} with x = p^{-<c_l,s>},
 * so a_l(p^r) = h_r(a_1, ..., a_eta), the complete homogeneous symmetric
 * polynomial. h_r comes from the power sums through Newton's identity
 * r h_r = sum_{i=1..r} p_i h_{r-i}.
 */

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "primes.hpp"
#include "spec.hpp"

namespace ezeta {

inline std::complex<double> ipow(std::complex<double> z, unsigned e) {
  std::complex<double> acc{1.0, 0.0};
  while (e) {
    if (e & 1u) acc *= z;
    e >>= 1;
    if (e) z *= z;
  }
  return acc;
}

// One contribution to the local factor at a prime. For degree 1 it is a single
// value a; for degree g it is the full set of g-th roots of beta = value, whose
// power sums are g * beta^{r/g} when g | r and 0 otherwise.
struct LocalTerm {
  CoefficientValue value;
  unsigned degree = 1;
};

inline std::vector<LocalTerm> local_terms(const EulerProductSpec& s, int l, const PrimeContext& ctx) {
  std::vector<LocalTerm> out;
  auto push_single = [&](CoefficientValue v) {
    if (v.is_exact() ? v.exact_value().is_zero() : v.value() == std::complex<double>(0.0, 0.0)) return;
    out.push_back({std::move(v), 1});
  };
  struct Bucket {
    const RootOf* sample;
    std::vector<const RootOf*> members;
  };
  std::vector<Bucket> buckets;
  for (const auto& r : s.rules.at(l)) {
    const auto* root = std::get_if<RootOf>(&r);
    if (!root || root->degree == 1) {
      push_single(rule_value(r, ctx));
      continue;
    }
    auto it = std::find_if(buckets.begin(), buckets.end(), [&](const Bucket& b) {
      return b.sample->degree == root->degree && *b.sample->inner == *root->inner;
    });
    if (it == buckets.end()) buckets.push_back({root, {root}});
    else it->members.push_back(root);
  }
  for (auto& b : buckets) {
    const unsigned g = b.sample->degree;
    std::vector<std::vector<const RootOf*>> by_branch(g + 1);
    for (const auto* m : b.members) by_branch[m->branch].push_back(m);
    std::size_t complete = b.members.size();
    for (unsigned k = 1; k <= g; ++k) complete = std::min(complete, by_branch[k].size());
    if (complete) {
      CoefficientValue beta = rule_value(*b.sample->inner, ctx);
      const bool zero = beta.is_exact() ? beta.exact_value().is_zero() : beta.value() == std::complex<double>(0, 0);
      for (std::size_t c = 0; c < complete && !zero; ++c) out.push_back({beta, g});
    }
    for (unsigned k = 1; k <= g; ++k)
      for (std::size_t j = complete; j < by_branch[k].size(); ++j)
        push_single(rule_value(CoefficientRule(*by_branch[k][j]), ctx));
  }
  return out;
}

inline bool terms_exact(const std::vector<LocalTerm>& terms) {
  for (const auto& t : terms)
    if (!t.value.is_exact()) return false;
  return true;
}

inline CoefficientValue power_sum(const std::vector<LocalTerm>& terms, unsigned r) {
  if (terms_exact(terms)) {
    GaussianRational acc(0);
    for (const auto& t : terms) {
      if (r % t.degree) continue;
      acc += GaussianRational(static_cast<long long>(t.degree)) * pow(t.value.exact_value(), r / t.degree);
    }
    return CoefficientValue::exact(std::move(acc));
  }
  std::complex<double> acc{0.0, 0.0};
  bool positive = true;
  for (const auto& t : terms) {
    if (r % t.degree) continue;
    acc += static_cast<double>(t.degree) * ipow(t.value.value(), r / t.degree);
    positive &= t.value.is_exact() ? t.value.exact_value().is_nonnegative_real() : t.value.positive_real();
  }
  return CoefficientValue::numeric(acc, positive);
}

inline PrimeContext prime_context(std::uint64_t p) { return {p, prime_index(p)}; }

// Sum_k a_lk(p)^r for 0-based rank l.
inline CoefficientValue power_sum(const EulerProductSpec& s, int l, const PrimeContext& ctx, unsigned r) {
  return power_sum(local_terms(s, l, ctx), r);
}
inline CoefficientValue power_sum(const EulerProductSpec& s, int l, std::uint64_t p, unsigned r) {
  return power_sum(s, l, prime_context(p), r);
}

struct LocalCoefficientSeries {
  int rank = 0;
  std::uint64_t p = 0;
  bool exact = true;
  std::vector<GaussianRational> exact_values;  // h_0..h_R when exact
  std::vector<std::complex<double>> values;    // h_0..h_R

  CoefficientValue at(std::size_t r) const {
    return exact ? CoefficientValue::exact(exact_values.at(r)) : CoefficientValue::numeric(values.at(r));
  }
};

inline LocalCoefficientSeries local_series(const std::vector<LocalTerm>& terms, unsigned r_max) {
  LocalCoefficientSeries out;
  out.exact = terms_exact(terms);
  if (out.exact) {
    std::vector<GaussianRational> ps(r_max + 1);
    for (unsigned i = 1; i <= r_max; ++i) ps[i] = power_sum(terms, i).exact_value();
    auto& h = out.exact_values;
    h.assign(r_max + 1, GaussianRational(0));
    h[0] = GaussianRational(1);
    for (unsigned r = 1; r <= r_max; ++r) {
      GaussianRational acc(0);
      for (unsigned i = 1; i <= r; ++i)
        if (!ps[i].is_zero() && !h[r - i].is_zero()) acc += ps[i] * h[r - i];
      h[r] = acc / GaussianRational(static_cast<long long>(r));
    }
    for (const auto& v : h) out.values.push_back(v.to_complex());
    return out;
  }
  std::vector<std::complex<double>> ps(r_max + 1);
  for (unsigned i = 1; i <= r_max; ++i) ps[i] = power_sum(terms, i).value();
  auto& h = out.values;
  h.assign(r_max + 1, {0.0, 0.0});
  h[0] = 1.0;
  for (unsigned r = 1; r <= r_max; ++r) {
    std::complex<double> acc{0.0, 0.0};
    for (unsigned i = 1; i <= r; ++i) acc += ps[i] * h[r - i];
    h[r] = acc / static_cast<double>(r);
  }
  return out;
}

// h_0..h_{r_max} at prime p for 0-based rank l.
inline LocalCoefficientSeries local_coefficients(const EulerProductSpec& s, int l, const PrimeContext& ctx,
                                                 unsigned r_max) {
  auto out = local_series(local_terms(s, l, ctx), r_max);
  out.rank = l;
  out.p = ctx.p;
  return out;
}
inline LocalCoefficientSeries local_coefficients(const EulerProductSpec& s, int l, std::uint64_t p, unsigned r_max) {
  return local_coefficients(s, l, prime_context(p), r_max);
}

// ---------------------------------------------------------------------------
// Prime signatures: primes with equal signature carry identical exact values.

struct PrimeSignature {
  std::vector<std::int64_t> key;
  bool p_dependent = false;  // some value varies continuously with p (power decay)
  bool aperiodic = false;    // some value depends on p with no finite period
};

namespace detail {

inline void append_signature(const CoefficientRule& r, const PrimeContext& ctx, PrimeSignature& sig) {
  if (std::get_if<ConstantExact>(&r)) {
    sig.key.push_back(0);
  } else if (std::get_if<PowerDecay>(&r)) {
    sig.key.push_back(1);
    sig.p_dependent = true;
  } else if (const auto* c = std::get_if<DirichletCharacter>(&r)) {
    sig.key.push_back(2);
    sig.key.push_back(static_cast<std::int64_t>(ctx.p % c->modulus));
  } else if (const auto* u = std::get_if<UnitPowerByIndex>(&r)) {
    if (u->base.is_fourth_root_of_unity()) {
      sig.key.push_back(3);
      sig.key.push_back(static_cast<std::int64_t>(ctx.index % 4));
    } else {
      sig.key.push_back(4);
      sig.key.push_back(static_cast<std::int64_t>(ctx.p));
      sig.aperiodic = true;
    }
  } else if (const auto* f = std::get_if<FiniteSupport>(&r)) {
    if (f->values.count(ctx.p)) {
      sig.key.push_back(5);
      sig.key.push_back(static_cast<std::int64_t>(ctx.p));
    } else if (f->fallback) {
      sig.key.push_back(6);
      append_signature(*f->fallback, ctx, sig);
    } else {
      sig.key.push_back(7);
    }
  } else if (const auto* ro = std::get_if<RootOf>(&r)) {
    sig.key.push_back(8);
    append_signature(*ro->inner, ctx, sig);
  }
}

inline void collect_moduli(const CoefficientRule& r, std::uint64_t& q, bool& index_periodic, bool& aperiodic) {
  if (const auto* c = std::get_if<DirichletCharacter>(&r)) {
    q = std::lcm(q, c->modulus);
  } else if (const auto* u = std::get_if<UnitPowerByIndex>(&r)) {
    if (u->base.is_fourth_root_of_unity()) index_periodic = true;
    else aperiodic = true;
  } else if (const auto* f = std::get_if<FiniteSupport>(&r)) {
    if (f->fallback) collect_moduli(*f->fallback, q, index_periodic, aperiodic);
  } else if (const auto* ro = std::get_if<RootOf>(&r)) {
    collect_moduli(*ro->inner, q, index_periodic, aperiodic);
  }
}

}  // namespace detail

inline PrimeSignature prime_signature(const EulerProductSpec& s, int l, const PrimeContext& ctx) {
  PrimeSignature sig;
  for (const auto& r : s.rules.at(l)) detail::append_signature(r, ctx, sig);
  return sig;
}

// Tracks which prime classes of a rank have been examined. Once every class
// (residue mod the character moduli, index mod 4, and each exceptional prime)
// has been seen, a property checked per class holds for all primes.
class PrimeClassCover {
 public:
  PrimeClassCover(const EulerProductSpec& s, int l) {
    for (const auto& r : s.rules.at(l)) detail::collect_moduli(r, modulus_, index_periodic_, aperiodic_);
    for (auto p : support_primes(s, l)) special_.insert(p);
    for (const auto& [p, e] : factorize(modulus_)) special_.insert(p);
    std::uint64_t units = 0;
    for (std::uint64_t a = 0; a < modulus_; ++a) units += gcd_u64(a, modulus_) == 1;
    target_ = units * (index_periodic_ ? 4 : 1);
    // Off its support a finite-support rank is identically zero.
    if (rank_is_finite_support(s, l)) target_ = 0;
  }

  const std::set<std::uint64_t>& special_primes() const { return special_; }

  void visit(const PrimeContext& ctx) {
    if (special_.count(ctx.p)) {
      seen_special_.insert(ctx.p);
      return;
    }
    seen_.insert({ctx.p % modulus_, index_periodic_ ? ctx.index % 4 : 0});
  }

  bool complete() const {
    return !aperiodic_ && seen_special_.size() == special_.size() && seen_.size() >= target_;
  }

 private:
  std::uint64_t modulus_ = 1;
  bool index_periodic_ = false;
  bool aperiodic_ = false;
  std::set<std::uint64_t> special_, seen_special_;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen_;
  std::uint64_t target_ = 1;
};

// Primes <= limit plus the exceptional primes of rank l above it, ascending.
inline std::vector<PrimeContext> certificate_primes(const EulerProductSpec& s, int l, std::uint64_t limit) {
  std::vector<PrimeContext> out;
  const bool finite = rank_is_finite_support(s, l);
  PrimeClassCover cover(s, l);
  if (!finite) {
    const auto ps = primes_up_to(limit);
    for (std::size_t j = 0; j < ps.size(); ++j) out.push_back({ps[j], j + 1});
  }
  for (auto p : cover.special_primes()) {
    if (!finite && p <= limit) continue;
    out.push_back(prime_context(p));
  }
  std::sort(out.begin(), out.end(), [](const PrimeContext& a, const PrimeContext& b) { return a.p < b.p; });
  return out;
}

// ---------------------------------------------------------------------------
// Dirichlet coefficient tables

struct DirichletCoefficientTable {
  int rank = 0;
  std::uint64_t cutoff = 0;
  bool exact = true;
  std::vector<GaussianRational> exact_values;  // index n, entry 0 unused
  std::vector<std::complex<double>> values;

  CoefficientValue at(std::uint64_t n) const {
    return exact ? CoefficientValue::exact(exact_values.at(n)) : CoefficientValue::numeric(values.at(n));
  }
};

namespace detail {

// Local series at every prime <= n_max, reused across primes with equal signature.
template <class Fn>
void for_each_local_series(const EulerProductSpec& s, int l, std::uint64_t n_max, Fn&& fn) {
  const auto ps = primes_up_to(n_max);
  std::map<std::vector<std::int64_t>, LocalCoefficientSeries> cache;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    const PrimeContext ctx{ps[j], j + 1};
    unsigned e_max = 0;
    for (std::uint64_t q = ps[j]; q <= n_max; q *= ps[j]) {
      ++e_max;
      if (q > n_max / ps[j]) break;
    }
    const auto sig = prime_signature(s, l, ctx);
    if (sig.p_dependent || sig.aperiodic) {
      auto series = local_coefficients(s, l, ctx, e_max);
      fn(ctx, series, e_max);
      continue;
    }
    auto it = cache.find(sig.key);
    if (it == cache.end() || it->second.values.size() < e_max + 1u)
      it = cache.insert_or_assign(sig.key, local_coefficients(s, l, ctx, e_max)).first;
    fn(ctx, it->second, e_max);
  }
}

}  // namespace detail

// a_l(1..N) for 0-based rank l, exact when every local value is exact.
inline DirichletCoefficientTable dirichlet_coefficients(const EulerProductSpec& s, int l, std::uint64_t n_max) {
  DirichletCoefficientTable t;
  t.rank = l;
  t.cutoff = n_max;
  std::vector<LocalCoefficientSeries> local(n_max + 1);  // indexed by prime
  detail::for_each_local_series(s, l, n_max, [&](const PrimeContext& ctx, const LocalCoefficientSeries& ser, unsigned) {
    local[ctx.p] = ser;
    t.exact &= ser.exact;
  });
  const auto spf = smallest_prime_factors(static_cast<std::uint32_t>(n_max));
  t.values.assign(n_max + 1, {0.0, 0.0});
  if (t.exact) t.exact_values.assign(n_max + 1, GaussianRational(0));
  if (n_max >= 1) {
    t.values[1] = 1.0;
    if (t.exact) t.exact_values[1] = GaussianRational(1);
  }
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const std::uint64_t p = spf[n];
    std::uint64_t m = n;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    const auto& ser = local[p];
    if (t.exact) {
      const auto& h = ser.exact_values[e];
      t.exact_values[n] = h.is_zero() ? GaussianRational(0) : t.exact_values[m] * h;
      t.values[n] = t.exact_values[n].to_complex();
    } else {
      t.values[n] = t.values[m] * ser.values[e];
    }
  }
  return t;
}

// Floating-point a_l(1..N); suitable for large N.
inline std::vector<std::complex<double>> dirichlet_coefficients_numeric(const EulerProductSpec& s, int l,
                                                                        std::uint64_t n_max) {
  std::vector<std::vector<std::complex<double>>> local(n_max + 1);
  detail::for_each_local_series(s, l, n_max, [&](const PrimeContext& ctx, const LocalCoefficientSeries& ser, unsigned e) {
    local[ctx.p].assign(ser.values.begin(), ser.values.begin() + e + 1);
  });
  const auto spf = smallest_prime_factors(static_cast<std::uint32_t>(n_max));
  std::vector<std::complex<double>> a(n_max + 1, {0.0, 0.0});
  if (n_max >= 1) a[1] = 1.0;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const std::uint64_t p = spf[n];
    std::uint64_t m = n;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    a[n] = a[m] * local[p][e];
  }
  return a;
}

}  // namespace ezeta
