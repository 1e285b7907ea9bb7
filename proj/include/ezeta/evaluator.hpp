#pragma once
/*
 * Numerical evaluation of Z(s), log Z(s), the Dirichlet series, and the
 * normalized function f(t) = Z(sigma + it) / Z(sigma).
 *
 * log Z is defined by the prime-power series
 *   sum_p sum_r sum_{l,k} a_lk(p)^r p^{-r<c_l,s>} / r,
 * not by the principal logarithm of the product. Both forms are truncated at
 * p <= P (all support primes for finite-support ranks) and r <= R.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "coefficients.hpp"
#include "parallel.hpp"
#include "spec.hpp"

namespace ezeta {

struct EvalPoint {
  std::vector<double> sigma;
  std::vector<double> t;
};

inline EvalPoint make_point(std::vector<double> sigma, std::vector<double> t = {}) {
  if (t.empty()) t.assign(sigma.size(), 0.0);
  return {std::move(sigma), std::move(t)};
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

// Certified upper bound on zeta(v), v > 1.
inline double zeta_upper_bound(double v, std::uint64_t m = 100000) {
  if (!(v > 1)) throw DomainError("zeta bound needs v > 1");
  double acc = 0;
  for (std::uint64_t n = m; n >= 1; --n) acc += std::pow(static_cast<double>(n), -v);
  return acc * (1 + 1e-14) + std::pow(static_cast<double>(m), 1 - v) / (v - 1);
}

// The spec's numeric coefficient values at the primes used for evaluation.
class PreparedProduct {
 public:
  static constexpr std::size_t kBlock = 8192;

  PreparedProduct(EulerProductSpec spec, std::uint64_t prime_cutoff)
      : spec_(std::move(spec)), cutoff_(prime_cutoff) {
    const int phi = spec_.phi, eta = spec_.eta;
    finite_.resize(phi);
    bool any_infinite = false;
    std::set<std::uint64_t> support;
    for (int l = 0; l < phi; ++l) {
      finite_[l] = rank_is_finite_support(spec_, l);
      any_infinite |= !finite_[l];
      if (finite_[l])
        for (auto p : support_primes(spec_, l)) support.insert(p);
    }
    std::vector<PrimeContext> ctxs;
    if (any_infinite) {
      const auto ps = primes_up_to(prime_cutoff);
      for (std::size_t j = 0; j < ps.size(); ++j) ctxs.push_back({ps[j], j + 1});
    }
    for (auto p : support)
      if (!any_infinite || p > prime_cutoff) ctxs.push_back(prime_context(p));
    std::sort(ctxs.begin(), ctxs.end(), [](const PrimeContext& a, const PrimeContext& b) { return a.p < b.p; });
    for (const auto& ctx : ctxs) {
      primes_.push_back(ctx.p);
      logp_.push_back(std::log(static_cast<double>(ctx.p)));
      for (int l = 0; l < phi; ++l)
        for (int k = 0; k < eta; ++k) {
          const bool active = finite_[l] || ctx.p <= prime_cutoff;
          alpha_.push_back(active ? rule_value(spec_.rules[l][k], ctx).value() : std::complex<double>(0, 0));
        }
    }
  }

  const EulerProductSpec& spec() const { return spec_; }
  std::uint64_t prime_cutoff() const { return cutoff_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  bool rank_finite(int l) const { return finite_[l]; }
  std::complex<double> alpha(std::size_t j, int l, int k) const {
    return alpha_[(j * spec_.phi + l) * spec_.eta + k];
  }

  // <c_l, sigma> for each rank; throws DomainError outside the region of absolute convergence.
  std::vector<double> check_domain(const std::vector<double>& sigma) const {
    if (static_cast<int>(sigma.size()) != spec_.dimension)
      throw ParameterError("sigma has dimension " + std::to_string(sigma.size()) + ", spec has " +
                           std::to_string(spec_.dimension));
    std::vector<double> v(spec_.phi);
    for (int l = 0; l < spec_.phi; ++l) {
      v[l] = dot(spec_.direction(l), sigma);
      if (!finite_[l]) {
        if (!(v[l] > 1)) throw DomainError("<c_" + std::to_string(l + 1) + ", sigma> = " + std::to_string(v[l]) + " must exceed 1");
        continue;
      }
      for (std::size_t j = 0; j < primes_.size(); ++j)
        for (int k = 0; k < spec_.eta; ++k)
          if (!(std::abs(alpha(j, l, k)) * std::exp(-v[l] * logp_[j]) < 1))
            throw DomainError("a factor at p = " + std::to_string(primes_[j]) + " has modulus >= 1 at this sigma");
    }
    return v;
  }

  std::complex<double> product(const EvalPoint& s) const {
    const auto v = check_domain(s.sigma);
    const auto w = tdots(s);
    struct Partial {
      std::complex<double> denom{1.0, 0.0};
      bool singular = false;
    };
    auto parts = map_blocks<Partial>(primes_.size(), kBlock, [&](std::size_t b, std::size_t e) {
      Partial out;
      for (std::size_t j = b; j < e; ++j)
        for (int l = 0; l < spec_.phi; ++l) {
          const std::complex<double> z = std::polar(std::exp(-v[l] * logp_[j]), -w[l] * logp_[j]);
          for (int k = 0; k < spec_.eta; ++k) {
            const auto a = alpha(j, l, k);
            if (a == std::complex<double>(0, 0)) continue;
            const auto f = 1.0 - a * z;
            if (f == std::complex<double>(0, 0)) out.singular = true;
            out.denom *= f;
          }
        }
      return out;
    });
    std::complex<double> denom{1.0, 0.0};
    for (const auto& p : parts) {
      if (p.singular) throw DomainError("singular Euler factor");
      denom *= p.denom;
    }
    return 1.0 / denom;
  }

  std::complex<double> log_series(const EvalPoint& s, unsigned power_cutoff) const {
    const auto v = check_domain(s.sigma);
    const auto w = tdots(s);
    const int eta = spec_.eta;
    auto parts = map_blocks<std::complex<double>>(primes_.size(), kBlock, [&](std::size_t b, std::size_t e) {
      std::complex<double> acc{0.0, 0.0};
      std::vector<std::complex<double>> pw(eta), base(eta);
      for (std::size_t j = b; j < e; ++j)
        for (int l = 0; l < spec_.phi; ++l) {
          const std::complex<double> z = std::polar(std::exp(-v[l] * logp_[j]), -w[l] * logp_[j]);
          double rho = 0;
          int active = 0;
          for (int k = 0; k < eta; ++k) {
            base[k] = alpha(j, l, k) * z;
            pw[k] = 1.0;
            rho = std::max(rho, std::abs(base[k]));
            active += base[k] != std::complex<double>(0, 0);
          }
          if (!active) continue;
          double mag = 1;
          for (unsigned r = 1; r <= power_cutoff; ++r) {
            std::complex<double> ps{0.0, 0.0};
            for (int k = 0; k < eta; ++k) {
              pw[k] *= base[k];
              ps += pw[k];
            }
            acc += ps / static_cast<double>(r);
            mag *= rho;
            if (mag * active < 1e-30) break;
          }
        }
      return acc;
    });
    std::complex<double> total{0.0, 0.0};
    for (const auto& p : parts) total += p;
    return total;
  }

  // Bound on |log Z_truncated - log Z| at real part sigma.
  double tail_bound(const std::vector<double>& sigma, unsigned power_cutoff) const {
    const auto v = check_domain(sigma);
    double total = 0;
    const double R1 = power_cutoff + 1.0;
    for (int l = 0; l < spec_.phi; ++l) {
      if (finite_[l]) {
        for (std::size_t j = 0; j < primes_.size(); ++j)
          for (int k = 0; k < spec_.eta; ++k) {
            const double rho = std::abs(alpha(j, l, k)) * std::exp(-v[l] * logp_[j]);
            if (rho > 0) total += std::pow(rho, R1) / (R1 * (1 - rho));
          }
        continue;
      }
      const double P = static_cast<double>(cutoff_);
      double r_tail = 0;
      for (std::size_t j = 0; j < primes_.size() && primes_[j] <= cutoff_; ++j) {
        const double x = std::exp(-v[l] * logp_[j]);
        const double term = std::exp(-R1 * v[l] * logp_[j]) / (1 - x);
        if (term < 1e-300) break;
        r_tail += term;
      }
      total += spec_.eta * (2 * std::pow(P, 1 - v[l]) / (v[l] - 1) + r_tail);
    }
    return total;
  }

 private:
  std::vector<double> tdots(const EvalPoint& s) const {
    if (static_cast<int>(s.t.size()) != spec_.dimension) throw ParameterError("t has the wrong dimension");
    std::vector<double> w(spec_.phi);
    for (int l = 0; l < spec_.phi; ++l) w[l] = dot(spec_.direction(l), s.t);
    return w;
  }

  EulerProductSpec spec_;
  std::uint64_t cutoff_;
  std::vector<bool> finite_;
  std::vector<std::uint64_t> primes_;
  std::vector<double> logp_;
  std::vector<std::complex<double>> alpha_;
};

inline std::complex<double> eval_product(const EulerProductSpec& s, const EvalPoint& pt, const TruncationBounds& b = {}) {
  b.check();
  return PreparedProduct(s, b.prime_cutoff).product(pt);
}

inline std::complex<double> eval_log(const EulerProductSpec& s, const EvalPoint& pt, const TruncationBounds& b = {}) {
  b.check();
  return PreparedProduct(s, b.prime_cutoff).log_series(pt, b.power_cutoff);
}

inline double truncation_tail_bound(const EulerProductSpec& s, const std::vector<double>& sigma,
                                    const TruncationBounds& b = {}) {
  b.check();
  return PreparedProduct(s, b.prime_cutoff).tail_bound(sigma, b.power_cutoff);
}

inline std::complex<double> normalized_cf(const EulerProductSpec& s, const std::vector<double>& sigma,
                                          const std::vector<double>& t, const TruncationBounds& b = {}) {
  b.check();
  PreparedProduct prep(s, b.prime_cutoff);
  return prep.product({sigma, t}) / prep.product(make_point(sigma));
}

namespace detail {

inline std::vector<double> series_ranks_check(const EulerProductSpec& s, const std::vector<double>& sigma) {
  if (static_cast<int>(sigma.size()) != s.dimension) throw ParameterError("sigma has the wrong dimension");
  std::vector<double> v(s.phi);
  for (int l = 0; l < s.phi; ++l) {
    v[l] = dot(s.direction(l), sigma);
    if (!(v[l] > 1)) throw DomainError("the Dirichlet series needs <c_l, sigma> > 1 for every rank");
  }
  return v;
}

}  // namespace detail

// prod_l sum_{n <= N} a_l(n) n^{-<c_l, s>}
inline std::complex<double> eval_series(const EulerProductSpec& s, const EvalPoint& pt, std::uint64_t n_max) {
  if (n_max < 1) throw ParameterError("coefficient cutoff must be at least 1");
  const auto v = detail::series_ranks_check(s, pt.sigma);
  if (static_cast<int>(pt.t.size()) != s.dimension) throw ParameterError("t has the wrong dimension");
  std::complex<double> out{1.0, 0.0};
  for (int l = 0; l < s.phi; ++l) {
    const double w = dot(s.direction(l), pt.t);
    const auto a = dirichlet_coefficients_numeric(s, l, n_max);
    std::complex<double> acc{0.0, 0.0};
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      if (a[n] == std::complex<double>(0, 0)) continue;
      const double ln = std::log(static_cast<double>(n));
      acc += a[n] * std::polar(std::exp(-v[l] * ln), -w * ln);
    }
    out *= acc;
  }
  return out;
}

// Bound on |eval_series(N) - Z| using |a_l(n)| <= d_eta(n).
inline double series_tail_bound(const EulerProductSpec& s, const std::vector<double>& sigma, std::uint64_t n_max) {
  const auto v = detail::series_ranks_check(s, sigma);
  const auto spf = smallest_prime_factors(static_cast<std::uint32_t>(n_max));
  double with_tail = 1, partial_only = 1;
  for (int l = 0; l < s.phi; ++l) {
    // d_eta(n) via multiplicativity, d_eta(p^e) = C(e + eta - 1, eta - 1)
    std::vector<double> d(n_max + 1, 0.0);
    double partial = 0;
    if (n_max >= 1) {
      d[1] = 1;
      partial = 1;
    }
    for (std::uint64_t n = 2; n <= n_max; ++n) {
      std::uint64_t m = n, p = spf[n];
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      double c = 1;
      for (unsigned j = 1; j <= e; ++j) c = c * (j + s.eta - 1) / j;
      d[n] = d[m] * c;
      partial += d[n] * std::pow(static_cast<double>(n), -v[l]);
    }
    const double full = std::pow(zeta_upper_bound(v[l], std::max<std::uint64_t>(100000, n_max)), s.eta);
    const double tail = std::max(0.0, full - partial) + 1e-15 * full;
    with_tail *= partial + tail;
    partial_only *= partial;
  }
  return with_tail - partial_only;
}

}  // namespace ezeta
