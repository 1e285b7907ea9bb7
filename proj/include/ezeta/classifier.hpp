#pragma once
// Three-way classification of normalized Euler products: infinitely divisible,
// quasi-infinitely divisible only, or not a characteristic function.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "coefficients.hpp"
#include "spec.hpp"

namespace ezeta {

enum class Verdict { InfinitelyDivisible, QuasiInfinitelyDivisibleOnly, NotCharacteristic, Undecided };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::InfinitelyDivisible: return "InfinitelyDivisible";
    case Verdict::QuasiInfinitelyDivisibleOnly: return "QuasiInfinitelyDivisibleOnly";
    case Verdict::NotCharacteristic: return "NotCharacteristic";
    case Verdict::Undecided: return "Undecided";
  }
  return "?";
}

// sum_k a_lk(p)^r at a specific (l, p, r); l is 0-based.
struct PowerSumWitness {
  int rank = 0;
  std::uint64_t p = 0;
  unsigned r = 0;
  CoefficientValue value;
};

// a_l(n) with n = p^exponent; n is 0 when p^exponent does not fit in 64 bits.
struct CoefficientWitness {
  int rank = 0;
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  unsigned exponent = 0;
  CoefficientValue value;
};

struct PowerSumCertificate {
  enum class Kind { AllNonnegative, Violation, Undecided };
  Kind kind = Kind::AllNonnegative;
  bool complete = false;  // holds for every r and every prime
  std::optional<PowerSumWitness> witness;  // violation, or where the decision stalled
  unsigned r_checked = 0;
  std::uint64_t prime_cutoff = 0;
};

struct CoefficientScan {
  enum class Kind { Clean, Witness, Undecided };
  Kind kind = Kind::Clean;
  std::optional<CoefficientWitness> witness;  // witness, or where the decision stalled
  std::uint64_t cutoff = 0;
  bool complete = false;  // a structural certificate gives a(n) >= 0 for every n
};

struct ClassificationVerdict {
  Verdict verdict = Verdict::Undecided;
  std::optional<PowerSumWitness> power_witness;
  std::optional<CoefficientWitness> coefficient_witness;
  TruncationBounds certified;
  bool complete = false;
  std::string note;
};

namespace detail {

constexpr double kDeadBand = 1e-9;
constexpr unsigned kMaxExactPower = 4096;

enum class Sign { Nonnegative, Bad, Unknown };

// Exact values decide exactly; numeric ones inside the dead band are Unknown.
inline Sign sign_of(const CoefficientValue& v) {
  if (v.is_exact()) return v.exact_value().is_nonnegative_real() ? Sign::Nonnegative : Sign::Bad;
  const auto z = v.value();
  if (std::abs(z.imag()) > kDeadBand || z.real() < -kDeadBand) return Sign::Bad;
  if (z.real() > kDeadBand) return Sign::Nonnegative;
  return Sign::Unknown;
}

struct PrimeCertificate {
  Sign sign = Sign::Nonnegative;
  bool closed = false;   // nonnegative for every r
  bool uniform = true;   // no numeric magnitude entered the decision
  unsigned r = 0;        // first bad or unknown r
  CoefficientValue value;
  unsigned r_checked = 0;
};

struct DecayTerm {
  double rho;
  unsigned degree;
};

inline double decay_bound(const std::vector<DecayTerm>& terms, unsigned r) {
  double b = 0;
  for (const auto& t : terms) b += t.degree * std::pow(t.rho, static_cast<double>(r) / t.degree);
  return b;
}

// Least r >= 1 with decay_bound(r) < level, or 0 when none up to the cap.
inline unsigned decay_threshold(const std::vector<DecayTerm>& terms, double level) {
  for (unsigned r = 1; r <= kMaxExactPower; ++r)
    if (decay_bound(terms, r) < level) return r;
  return 0;
}

// Power sums at one prime. Unit values in {1, i, -1, -i} give a periodic part;
// everything else has modulus < 1 or is a positive real and decays.
inline PrimeCertificate certify_prime(const std::vector<LocalTerm>& terms, unsigned R) {
  std::vector<LocalTerm> periodic, rest;
  std::vector<DecayTerm> signed_decay, positive_decay;
  bool aperiodic = false;
  unsigned period = 1;
  for (const auto& t : terms) {
    if (t.value.is_exact()) {
      const auto& v = t.value.exact_value();
      if (v.is_fourth_root_of_unity()) {
        periodic.push_back(t);
        period = std::lcm(period, 4 * t.degree);
        continue;
      }
      rest.push_back(t);
      const double rho = std::sqrt(to_double(v.norm()));
      if (v.is_unit()) aperiodic = true;
      else if (v.is_nonnegative_real()) positive_decay.push_back({rho, t.degree});
      else signed_decay.push_back({rho, t.degree});
    } else {
      rest.push_back(t);
      const double rho = std::abs(t.value.value());
      if (t.value.positive_real()) positive_decay.push_back({rho, t.degree});
      else if (rho >= 1 - 1e-12) aperiodic = true;
      else signed_decay.push_back({rho, t.degree});
    }
  }
  const bool numeric_rest = !terms_exact(rest);

  // Closing argument per residue class of r modulo the period.
  bool closable = !aperiodic;
  unsigned r_end = R;
  for (unsigned m = 1; m <= period && closable; ++m) {
    const auto u = power_sum(periodic, m).exact_value();
    if (u.is_zero()) {
      if (!signed_decay.empty()) closable = false;
      continue;
    }
    unsigned th = 0;
    if (!u.is_real()) th = decay_threshold(signed_decay, std::abs(to_double(u.im())));
    else if (u.re() > 0) th = decay_threshold(signed_decay, to_double(u.re()));
    else {
      auto both = signed_decay;
      both.insert(both.end(), positive_decay.begin(), positive_decay.end());
      th = decay_threshold(both, -to_double(u.re()));
    }
    if (th == 0) closable = false;
    else r_end = std::max(r_end, th + period);
  }
  if (!closable) r_end = R;
  r_end = std::min(r_end, std::max(R, kMaxExactPower));

  PrimeCertificate out;
  out.r_checked = r_end;
  out.uniform = !numeric_rest || signed_decay.empty();
  for (unsigned r = 1; r <= r_end; ++r) {
    const auto u = power_sum(periodic, r).exact_value();
    CoefficientValue total;
    Sign sign;
    if (!numeric_rest) {
      total = CoefficientValue::exact(u + power_sum(rest, r).exact_value());
      sign = sign_of(total);
    } else {
      const auto d = power_sum(rest, r);
      total = CoefficientValue::numeric(u.to_complex() + d.value());
      if (d.positive_real() && u.is_nonnegative_real()) sign = Sign::Nonnegative;
      else if (d.positive_real() && !u.is_real()) sign = Sign::Bad;
      else {
        sign = sign_of(total);
        out.uniform = false;
      }
    }
    if (sign != Sign::Nonnegative) {
      out.sign = sign;
      out.r = r;
      out.value = total;
      out.closed = false;
      return out;
    }
  }
  out.closed = closable;
  return out;
}

inline std::uint64_t saturating_power(std::uint64_t p, unsigned e) {
  std::uint64_t n = 1;
  for (unsigned j = 0; j < e; ++j) {
    if (n > UINT64_MAX / p) return 0;
    n *= p;
  }
  return n;
}

// Is (1 - x^L)^M / prod(1 - u x^g) a polynomial with nonnegative coefficients
// for some M? Together with factors 1/(1 - b x^g), b >= 0, this proves every
// local coefficient is nonnegative.
inline bool structural_certificate(const std::vector<LocalTerm>& terms) {
  std::vector<std::pair<int, unsigned>> units;  // (argument in units of pi/2, degree)
  unsigned L = 1;
  for (const auto& t : terms) {
    int m = 0;
    if (t.value.is_exact() && t.value.exact_value().is_fourth_root_of_unity(&m)) {
      units.push_back({m, t.degree});
      L = std::lcm(L, 4 * t.degree);
    } else if (t.value.is_exact() ? !t.value.exact_value().is_nonnegative_real() : !t.value.positive_real()) {
      return false;
    }
  }
  if (units.empty()) return true;
  // A unit term of degree g contributes 1 - u x^g = prod over g-th roots.
  // Work with polynomials over Q(i) in x.
  using Poly = std::vector<GaussianRational>;
  auto mul = [](const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, GaussianRational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!a[i].is_zero())
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  Poly denom{GaussianRational(1)};
  for (const auto& [m, g] : units) {
    Poly f(g + 1, GaussianRational(0));
    f[0] = GaussianRational(1);
    f[g] = -detail::i_power(m);
    denom = mul(denom, f);
  }
  Poly base(L + 1, GaussianRational(0));
  base[0] = GaussianRational(1);
  base[L] = GaussianRational(-1);
  Poly num{GaussianRational(1)};
  for (std::size_t M = 1; M <= units.size(); ++M) {
    num = mul(num, base);
    if (num.size() < denom.size()) continue;
    // Exact long division by the monic-at-zero denominator, lowest degree first.
    Poly rem = num, q(num.size() - denom.size() + 1, GaussianRational(0));
    for (std::size_t k = 0; k < q.size(); ++k) {
      q[k] = rem[k];
      if (q[k].is_zero()) continue;
      for (std::size_t j = 0; j < denom.size(); ++j) rem[k + j] -= q[k] * denom[j];
    }
    bool divides = true;
    for (const auto& c : rem) divides &= c.is_zero();
    if (!divides) continue;
    bool nonneg = true;
    for (const auto& c : q) nonneg &= c.is_nonnegative_real();
    if (nonneg) return true;
  }
  return false;
}

}  // namespace detail

inline PowerSumCertificate certify_power_sums(const EulerProductSpec& s, const TruncationBounds& b = {}) {
  b.check();
  PowerSumCertificate out;
  out.prime_cutoff = b.prime_cutoff;
  out.r_checked = b.power_cutoff;
  out.complete = true;
  std::optional<PowerSumWitness> unknown;
  for (int l = 0; l < s.phi; ++l) {
    PrimeClassCover cover(s, l);
    std::map<std::vector<std::int64_t>, detail::PrimeCertificate> cache;
    bool rank_complete = true;
    for (const auto& ctx : certificate_primes(s, l, b.prime_cutoff)) {
      cover.visit(ctx);
      const auto sig = prime_signature(s, l, ctx);
      const bool periodic = !sig.aperiodic;
      auto it = periodic ? cache.find(sig.key) : cache.end();
      detail::PrimeCertificate c;
      if (it != cache.end()) {
        c = it->second;
      } else {
        c = detail::certify_prime(local_terms(s, l, ctx), b.power_cutoff);
        if (periodic && (c.uniform || !sig.p_dependent)) cache.emplace(sig.key, c);
      }
      out.r_checked = std::max(out.r_checked, c.r_checked);
      if (c.sign == detail::Sign::Bad) {
        out.kind = PowerSumCertificate::Kind::Violation;
        out.complete = false;
        out.witness = PowerSumWitness{l, ctx.p, c.r, c.value};
        return out;
      }
      if (c.sign == detail::Sign::Unknown && !unknown) unknown = PowerSumWitness{l, ctx.p, c.r, c.value};
      if (!c.closed || (sig.p_dependent && !c.uniform) || !periodic) rank_complete = false;
    }
    out.complete &= rank_complete && cover.complete();
  }
  if (unknown) {
    out.kind = PowerSumCertificate::Kind::Undecided;
    out.complete = false;
    out.witness = unknown;
  }
  return out;
}

// First n <= N (per rank, in rank order) with a_l(n) not a nonnegative real.
// Multiplicativity puts the smallest such n at a prime power.
inline CoefficientScan scan_coefficients(const EulerProductSpec& s, std::uint64_t N) {
  if (N < 1) throw ParameterError("coefficient cutoff must be at least 1");
  CoefficientScan out;
  out.cutoff = N;
  out.complete = true;
  std::optional<CoefficientWitness> unknown;
  for (int l = 0; l < s.phi; ++l) {
    std::optional<CoefficientWitness> bad;
    PrimeClassCover cover(s, l);
    std::map<std::vector<std::int64_t>, bool> structural;
    bool rank_complete = true;
    auto consider = [&](std::optional<CoefficientWitness>& slot, const CoefficientWitness& w) {
      if (!slot || w.n < slot->n) slot = w;
    };
    detail::for_each_local_series(s, l, N, [&](const PrimeContext& ctx, const LocalCoefficientSeries& ser, unsigned e) {
      cover.visit(ctx);
      const auto sig = prime_signature(s, l, ctx);
      if (sig.aperiodic || sig.p_dependent) {
        rank_complete &= !sig.aperiodic && detail::structural_certificate(local_terms(s, l, ctx));
      } else {
        auto it = structural.find(sig.key);
        if (it == structural.end())
          it = structural.emplace(sig.key, detail::structural_certificate(local_terms(s, l, ctx))).first;
        rank_complete &= it->second;
      }
      for (unsigned k = 1; k <= e; ++k) {
        const auto v = ser.at(k);
        const auto sign = detail::sign_of(v);
        if (sign == detail::Sign::Nonnegative) continue;
        const CoefficientWitness w{l, detail::saturating_power(ctx.p, k), ctx.p, k, v};
        consider(sign == detail::Sign::Bad ? bad : unknown, w);
        break;
      }
    });
    // Exceptional primes above N never show up in the scan but matter for all-n completeness.
    for (auto p : cover.special_primes()) {
      if (p <= N) continue;
      const auto ctx = prime_context(p);
      cover.visit(ctx);
      rank_complete &= detail::structural_certificate(local_terms(s, l, ctx));
    }
    if (bad) {
      out.kind = CoefficientScan::Kind::Witness;
      out.witness = bad;
      out.complete = false;
      return out;
    }
    out.complete &= rank_complete && cover.complete();
  }
  if (unknown) {
    out.kind = CoefficientScan::Kind::Undecided;
    out.witness = unknown;
    out.complete = false;
  }
  return out;
}

// True when classify can hand the spec to classify_degree2.
inline bool degree2_applicable(const EulerProductSpec& s) {
  if (s.eta > 2) return false;
  std::function<bool(const CoefficientRule&)> exact = [&](const CoefficientRule& r) -> bool {
    if (std::get_if<PowerDecay>(&r) || std::get_if<RootOf>(&r)) return false;
    if (const auto* u = std::get_if<UnitPowerByIndex>(&r)) return u->base.is_fourth_root_of_unity();
    if (const auto* f = std::get_if<FiniteSupport>(&r)) return !f->fallback || exact(*f->fallback);
    return true;
  };
  for (const auto& row : s.rules)
    for (const auto& r : row)
      if (!exact(r)) return false;
  return true;
}

namespace detail {

// For a non-real conjugate pair with real sum S and product P, h_r is real and
// h_r = S h_{r-1} - P h_{r-2}. Returns the first r <= r_max with h_r < 0.
inline std::optional<std::pair<unsigned, Rational>> conjugate_pair_witness(const GaussianRational& a, unsigned r_max) {
  const double theta = std::arg(a.to_complex());
  const Rational S = 2 * a.re(), P = a.norm();
  // sin(theta) sin(j theta) < 0 first happens near j = pi/|theta|; h_{j-1} has that sign.
  Rational h0 = 1, h1 = S;
  unsigned r = 1;
  auto advance_to = [&](unsigned target) {
    while (r < target) {
      Rational h2 = S * h1 - P * h0;
      h0 = std::move(h1);
      h1 = std::move(h2);
      ++r;
    }
  };
  for (unsigned j = 2; j <= r_max + 1; ++j) {
    if (std::sin(theta) * std::sin(j * theta) >= 0 && std::abs(std::sin(j * theta)) > 1e-6) continue;
    advance_to(j - 1);
    if (h1 < 0) return std::make_pair(r, h1);
  }
  return std::nullopt;
}

}  // namespace detail

// Exact, complete verdict for eta <= 2 with Gaussian-rational values.
inline ClassificationVerdict classify_degree2(const EulerProductSpec& s) {
  if (!degree2_applicable(s)) throw ParameterError("classify_degree2 needs eta <= 2 and exact periodic values");
  if (s.mode == DependenceMode::IntegerDependent) throw ModeError("reduce integer-dependent specs before classification");
  ClassificationVerdict out;
  out.complete = true;
  out.certified.prime_cutoff = 0;
  out.certified.power_cutoff = 0;
  out.certified.coefficient_cutoff = 0;
  for (int l = 0; l < s.phi; ++l) {
    PrimeClassCover cover(s, l);
    std::map<std::vector<std::int64_t>, bool> seen;
    std::uint64_t limit = 1000;
    for (;;) {
      for (const auto& ctx : certificate_primes(s, l, limit)) {
        const auto sig = prime_signature(s, l, ctx);
        cover.visit(ctx);
        if (!seen.emplace(sig.key, true).second) continue;
        const auto terms = local_terms(s, l, ctx);
        std::vector<GaussianRational> a;
        for (const auto& t : terms) a.push_back(t.value.exact_value());
        while (a.size() < 2) a.push_back(GaussianRational(0));
        auto witness = [&](unsigned e, GaussianRational v) {
          out.verdict = Verdict::NotCharacteristic;
          out.coefficient_witness =
              CoefficientWitness{l, detail::saturating_power(ctx.p, e), ctx.p, e, CoefficientValue::exact(std::move(v))};
          out.certified.prime_cutoff = ctx.p;
          out.certified.power_cutoff = e;
          out.certified.coefficient_cutoff = out.coefficient_witness->n;
          return out;
        };
        const GaussianRational sum = a[0] + a[1];
        if (!sum.is_nonnegative_real()) return witness(1, sum);
        if (a[0].is_real() && a[1].is_real()) continue;
        if (a[1] == a[0].conj()) {
          const auto w = detail::conjugate_pair_witness(a[0], 20000);
          if (!w) {
            out.verdict = Verdict::Undecided;
            out.complete = false;
            out.note = "no sign change found for the conjugate pair at p=" + std::to_string(ctx.p);
            return out;
          }
          return witness(w->first, GaussianRational(w->second));
        }
        // Real sum from a non-conjugate pair: h_2 = a0^2 + a0 a1 + a1^2 is then non-real.
        const auto ser = local_series(terms, 64);
        for (unsigned r = 2; r <= 64; ++r)
          if (!ser.exact_values[r].is_nonnegative_real()) return witness(r, ser.exact_values[r]);
      }
      if (cover.complete() || limit >= 10000000) break;
      limit *= 10;
    }
    out.certified.prime_cutoff = std::max<std::uint64_t>(out.certified.prime_cutoff, limit);
    if (!cover.complete()) out.complete = false;
  }
  out.verdict = out.complete ? Verdict::InfinitelyDivisible : Verdict::Undecided;
  if (!out.complete) out.note = "prime classes not exhausted";
  return out;
}

inline ClassificationVerdict classify(const EulerProductSpec& s, const TruncationBounds& b = {}) {
  if (s.mode == DependenceMode::IntegerDependent) throw ModeError("reduce integer-dependent specs before classification");
  b.check();
  if (degree2_applicable(s)) {
    auto v = classify_degree2(s);
    if (v.verdict != Verdict::Undecided) return v;
  }
  ClassificationVerdict out;
  out.certified = b;
  const auto scan = scan_coefficients(s, b.coefficient_cutoff);
  if (scan.kind == CoefficientScan::Kind::Witness) {
    out.verdict = Verdict::NotCharacteristic;
    out.coefficient_witness = scan.witness;
    out.complete = true;
    return out;
  }
  const auto cert = certify_power_sums(s, b);
  out.certified.power_cutoff = cert.r_checked;
  switch (cert.kind) {
    case PowerSumCertificate::Kind::AllNonnegative:
      out.verdict = Verdict::InfinitelyDivisible;
      out.complete = cert.complete;
      if (!cert.complete) out.note = "power sums nonnegative up to the stated bounds";
      return out;
    case PowerSumCertificate::Kind::Violation:
      out.power_witness = cert.witness;
      if (scan.kind == CoefficientScan::Kind::Clean) {
        out.verdict = Verdict::QuasiInfinitelyDivisibleOnly;
        out.complete = scan.complete;
        if (!scan.complete) out.note = "coefficients nonnegative up to N only";
      } else {
        out.verdict = Verdict::Undecided;
        out.coefficient_witness = scan.witness;
        out.note = "coefficient sign inside the numeric dead band";
      }
      return out;
    case PowerSumCertificate::Kind::Undecided:
      out.verdict = Verdict::Undecided;
      out.power_witness = cert.witness;
      out.note = "power sum sign inside the numeric dead band";
      return out;
  }
  return out;
}

// Replaces each factor (1 - a x^gamma) by the product over the gamma-th roots
// of a, giving a single rank along c = c_l / gamma_l.
inline EulerProductSpec reduce_integer_dependent(const EulerProductSpec& s) {
  if (s.mode != DependenceMode::IntegerDependent) throw ModeError("spec is not in integer-dependent mode");
  std::vector<unsigned> gamma;
  for (const auto& x : s.scaling) gamma.push_back(numerator(*x.exact).convert_to<unsigned>());
  EulerProductSpec out;
  out.name = s.name;
  out.dimension = s.dimension;
  out.phi = 1;
  out.mode = DependenceMode::Independent;
  std::vector<SpecNumber> c;
  for (const auto& x : s.directions[0]) {
    if (x.exact) c.push_back(SpecNumber::from_rational(*x.exact / gamma[0]));
    else c.push_back(SpecNumber::from_double(x.value / gamma[0]));
  }
  out.directions = {c};
  out.rules.emplace_back();
  for (int l = 0; l < s.phi; ++l)
    for (const auto& r : s.rules[l]) {
      if (gamma[l] == 1) out.rules[0].push_back(r);
      else
        for (unsigned k = 1; k <= gamma[l]; ++k) out.rules[0].push_back(rule::root(r, gamma[l], k));
    }
  out.eta = static_cast<int>(out.rules[0].size());
  validate_spec(out);
  return out;
}

}  // namespace ezeta
