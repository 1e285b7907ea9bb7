#pragma once
// Characteristic-function inequalities, the shifted log-difference profile, and
// grid searches for almost periods and shifted pairs along a line.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evaluator.hpp"
#include "parallel.hpp"

namespace ezeta {

enum class GapKind { Plain, Scaled, Log };

inline std::string to_string(GapKind k) {
  switch (k) {
    case GapKind::Plain: return "plain";
    case GapKind::Scaled: return "scaled";
    case GapKind::Log: return "log";
  }
  return "?";
}

inline GapKind parse_gap_kind(const std::string& s) {
  if (s == "plain") return GapKind::Plain;
  if (s == "scaled") return GapKind::Scaled;
  if (s == "log") return GapKind::Log;
  throw ParameterError("unknown gap kind \"" + s + "\"");
}

// 4|F(a)| |F(a) - F(b)| - |F(c) - F(d)|^2 for one of three choices of F.
struct GapReport {
  GapKind kind = GapKind::Scaled;
  std::vector<double> sigma, t1, t2;
  double value = 0;
  double tail = 0;  // bound on the error from truncating the product
};

namespace detail {

inline std::vector<double> axpy(const std::vector<double>& x, double a, const std::vector<double>& y) {
  std::vector<double> out(x);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += a * y[j];
  return out;
}

// F at sigma + it for the chosen kind, with an error bound per value.
class GapFunction {
 public:
  GapFunction(const EulerProductSpec& s, std::vector<double> sigma, GapKind kind, const TruncationBounds& b)
      : prep_(s, b.prime_cutoff), sigma_(std::move(sigma)), kind_(kind), R_(b.power_cutoff) {
    prep_.check_domain(sigma_);
    // The product is exact in r; only the log series pays for the r cutoff.
    log_tail_ = prep_.tail_bound(sigma_, kind == GapKind::Log ? R_ : 400);
    z0_ = prep_.product(make_point(sigma_));
  }

  std::complex<double> operator()(const std::vector<double>& t) const {
    const EvalPoint pt{sigma_, t};
    switch (kind_) {
      case GapKind::Log: return prep_.log_series(pt, R_);
      case GapKind::Scaled: return prep_.product(pt);
      case GapKind::Plain: return prep_.product(pt) / z0_;
    }
    return {};
  }

  double error(std::complex<double> value) const {
    switch (kind_) {
      case GapKind::Log: return log_tail_;
      case GapKind::Scaled: return std::abs(value) * std::expm1(log_tail_);
      case GapKind::Plain: return std::abs(value) * std::expm1(2 * log_tail_);
    }
    return 0;
  }

 private:
  PreparedProduct prep_;
  std::vector<double> sigma_;
  GapKind kind_;
  unsigned R_;
  double log_tail_ = 0;
  std::complex<double> z0_;
};

// Value of 4|A||A - B| - |C - D|^2 and a first-order bound on its error.
inline std::pair<double, double> gap_value(const GapFunction& F, std::complex<double> A, std::complex<double> B,
                                           std::complex<double> C, std::complex<double> D) {
  const double dA = F.error(A), dB = F.error(B), dC = F.error(C), dD = F.error(D);
  const double value = 4 * std::abs(A) * std::abs(A - B) - std::norm(C - D);
  const double cd = dC + dD;
  const double err = 4 * (dA * std::abs(A - B) + (std::abs(A) + dA) * (dA + dB)) + 2 * std::abs(C - D) * cd + cd * cd;
  return {value, err};
}

}  // namespace detail

inline GapReport gap(GapKind kind, const EulerProductSpec& s, const std::vector<double>& sigma,
                     const std::vector<double>& t1, const std::vector<double>& t2, const TruncationBounds& b = {}) {
  b.check();
  if (t1.size() != sigma.size() || t2.size() != sigma.size()) throw ParameterError("t has the wrong dimension");
  const detail::GapFunction F(s, sigma, kind, b);
  const std::vector<double> zero(sigma.size(), 0.0);
  const auto diff = detail::axpy(t1, -1.0, t2);
  const auto [value, err] = detail::gap_value(F, F(zero), F(diff), F(t1), F(t2));
  return {kind, sigma, t1, t2, value, err};
}

inline GapReport plain_gap(const EulerProductSpec& s, const std::vector<double>& sigma, const std::vector<double>& t1,
                           const std::vector<double>& t2, const TruncationBounds& b = {}) {
  return gap(GapKind::Plain, s, sigma, t1, t2, b);
}
inline GapReport scaled_gap(const EulerProductSpec& s, const std::vector<double>& sigma, const std::vector<double>& t1,
                            const std::vector<double>& t2, const TruncationBounds& b = {}) {
  return gap(GapKind::Scaled, s, sigma, t1, t2, b);
}
inline GapReport log_gap(const EulerProductSpec& s, const std::vector<double>& sigma, const std::vector<double>& t1,
                         const std::vector<double>& t2, const TruncationBounds& b = {}) {
  return gap(GapKind::Log, s, sigma, t1, t2, b);
}

struct QPoint {
  double t;
  double q;
};

struct QProfile {
  GapKind kind = GapKind::Log;
  double shift = 0;
  std::vector<QPoint> points;
  double tail = 0;  // largest per-point error bound

  double minimum() const {
    double m = INFINITY;
    for (const auto& p : points) m = std::min(m, p.q);
    return m;
  }
};

// Grid t = t_min + k step, k = 0, 1, ... while t <= t_max (with a small allowance for rounding).
inline std::vector<double> make_grid(double t_min, double t_max, double step) {
  if (!(step > 0)) throw ParameterError("grid step must be positive");
  if (t_max < t_min) throw ParameterError("grid end lies before its start");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) out.push_back(t_min + k * step);
  return out;
}

// Q(t) = 4|F(0)| |F(0) - F(shift)| - |F(t) - F(t + shift)|^2 along the direction u (default e_1).
inline QProfile q_profile(const EulerProductSpec& s, const std::vector<double>& sigma, double shift,
                          const std::vector<double>& grid, GapKind kind = GapKind::Log, const TruncationBounds& b = {},
                          std::vector<double> u = {}) {
  b.check();
  if (u.empty()) {
    u.assign(sigma.size(), 0.0);
    u[0] = 1;
  }
  if (u.size() != sigma.size()) throw ParameterError("direction has the wrong dimension");
  const detail::GapFunction F(s, sigma, kind, b);
  const std::vector<double> zero(sigma.size(), 0.0);
  const auto A = F(zero), B = F(detail::axpy(zero, shift, u));
  QProfile out;
  out.kind = kind;
  out.shift = shift;
  out.points.resize(grid.size());
  auto errs = map_blocks<double>(grid.size(), 256, [&](std::size_t lo, std::size_t hi) {
    double e = 0;
    for (std::size_t j = lo; j < hi; ++j) {
      const double t = grid[j];
      const auto [q, err] = detail::gap_value(F, A, B, F(detail::axpy(zero, t, u)), F(detail::axpy(zero, t + shift, u)));
      out.points[j] = {t, q};
      e = std::max(e, err);
    }
    return e;
  });
  for (double e : errs) out.tail = std::max(out.tail, e);
  return out;
}

// ---------------------------------------------------------------------------
// Searches along sigma + i(offset + t u)

namespace detail {

// Truncated product (or its log) on an arithmetic grid of t, computed by
// rotating each p^{-it} instead of calling sin and cos per point.
class LineProduct {
 public:
  LineProduct(const EulerProductSpec& s, const std::vector<double>& sigma, const std::vector<double>& offset,
              const std::vector<double>& u, std::uint64_t P)
      : prep_(s, P) {
    const auto v = prep_.check_domain(sigma);
    const auto& primes = prep_.primes();
    for (std::size_t j = 0; j < primes.size(); ++j) {
      const double logp = std::log(static_cast<double>(primes[j]));
      for (int l = 0; l < s.phi; ++l) {
        const auto c = s.direction(l);
        for (int k = 0; k < s.eta; ++k) {
          const auto a = prep_.alpha(j, l, k);
          if (a == std::complex<double>(0, 0)) continue;
          factors_.push_back({a, std::exp(-v[l] * logp), dot(c, offset) * logp, dot(c, u) * logp});
        }
      }
    }
    log_tail_ = prep_.tail_bound(sigma, 400);
  }

  // Bound on |log Z_P - log Z| anywhere on the line.
  double log_tail() const { return log_tail_; }

  // out[k] = F(t0 + k step), k < n, where F is Z or log Z.
  void block(double t0, double step, std::size_t n, bool log, std::complex<double>* out) const {
    std::vector<std::complex<double>> z(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = log ? std::complex<double>(0, 0) : std::complex<double>(1, 0);
    for (const auto& f : factors_) {
      std::complex<double> w = std::polar(f.modulus, -(f.phase + t0 * f.freq));
      const std::complex<double> rot = std::polar(1.0, -step * f.freq);
      for (std::size_t k = 0; k < n; ++k) {
        const auto g = 1.0 - f.alpha * w;
        if (log) out[k] -= std::log(g);
        else out[k] *= g;
        w *= rot;
      }
    }
    if (!log)
      for (std::size_t k = 0; k < n; ++k) out[k] = 1.0 / out[k];
  }

  std::complex<double> at(double t, bool log) const {
    std::complex<double> v;
    block(t, 0.0, 1, log, &v);
    return v;
  }

  // Error of a single value of F from the prime cutoff.
  double error(std::complex<double> value, bool log) const {
    return log ? log_tail_ : std::abs(value) * std::expm1(log_tail_);
  }

 private:
  struct Factor {
    std::complex<double> alpha;
    double modulus, phase, freq;
  };
  PreparedProduct prep_;
  std::vector<Factor> factors_;
  double log_tail_ = 0;
};

constexpr std::size_t kSearchBlock = 1024;
constexpr std::size_t kSearchChunk = 1 << 17;
constexpr std::uint64_t kPrefilterPrimes = 200;

}  // namespace detail

struct SearchResult {
  double t = 0;               // the returned tau or t
  std::uint64_t index = 0;    // grid index: t = index * step
  double difference = 0;      // at the search cutoff P
  double verified_difference = 0;  // re-evaluated with 4P
  double tail = 0;            // error bound of the re-evaluated difference
  bool verified = false;      // verified_difference < epsilon + 2 tail
};

struct SearchOptions {
  double epsilon = 0.05;
  double t_max = 10000;
  double step = 0.01;
  double t_min = 0;         // grid points below t_min are skipped
  bool log = false;         // compare log Z instead of Z
  bool allow_zero = false;  // include the grid point t = 0
  std::uint64_t prime_cutoff = 100000;
};

namespace detail {

// Smallest grid index k in [k_lo, k_hi] with |F(a(k)) - F(b(k))| < epsilon at cutoff P,
// where the two points are offset_a + beta_a t u and offset_b + beta_b t u.
inline std::optional<SearchResult> pair_search(const EulerProductSpec& s, const std::vector<double>& sigma,
                                               const std::vector<double>& offset_a, double beta_a,
                                               const std::vector<double>& offset_b, double beta_b,
                                               const std::vector<double>& u, const SearchOptions& o) {
  if (!(o.epsilon > 0)) throw ParameterError("epsilon must be positive");
  if (!(o.step > 0)) throw ParameterError("step must be positive");
  if (!(o.t_max >= 0)) throw ParameterError("t_max must be nonnegative");
  const std::uint64_t P0 = std::min(o.prime_cutoff, kPrefilterPrimes);
  auto scaled = [](const std::vector<double>& x, double a) {
    std::vector<double> y(x);
    for (auto& e : y) e *= a;
    return y;
  };
  const LineProduct fa0(s, sigma, offset_a, scaled(u, beta_a), P0), fb0(s, sigma, offset_b, scaled(u, beta_b), P0);
  const LineProduct fa(s, sigma, offset_a, scaled(u, beta_a), o.prime_cutoff),
      fb(s, sigma, offset_b, scaled(u, beta_b), o.prime_cutoff);
  const auto k_hi = static_cast<std::uint64_t>(std::floor(o.t_max / o.step + 1e-9));
  std::uint64_t k_lo = o.allow_zero ? 0 : 1;
  k_lo = std::max<std::uint64_t>(k_lo, static_cast<std::uint64_t>(std::ceil(o.t_min / o.step - 1e-9)));

  for (std::uint64_t c0 = k_lo; c0 <= k_hi; c0 += detail::kSearchChunk) {
    const std::uint64_t c1 = std::min<std::uint64_t>(k_hi + 1, c0 + detail::kSearchChunk);
    // Cheap cutoff first; a point survives unless a rigorous lower bound already exceeds epsilon.
    auto cands = map_blocks<std::vector<std::uint64_t>>(c1 - c0, kSearchBlock, [&](std::size_t lo, std::size_t hi) {
      const std::size_t n = hi - lo;
      std::vector<std::complex<double>> va(n), vb(n);
      const double t0 = static_cast<double>(c0 + lo) * o.step;
      fa0.block(t0, o.step, n, o.log, va.data());
      fb0.block(t0, o.step, n, o.log, vb.data());
      std::vector<std::uint64_t> keep;
      for (std::size_t k = 0; k < n; ++k) {
        const double lower = std::abs(va[k] - vb[k]) - fa0.error(va[k], o.log) - fb0.error(vb[k], o.log);
        if (lower < o.epsilon) keep.push_back(c0 + lo + k);
      }
      return keep;
    });
    for (const auto& block : cands)
      for (std::uint64_t k : block) {
        const double t = static_cast<double>(k) * o.step;
        const double d = std::abs(fa.at(t, o.log) - fb.at(t, o.log));
        if (!(d < o.epsilon)) continue;
        SearchResult r;
        r.t = t;
        r.index = k;
        r.difference = d;
        const LineProduct va(s, sigma, offset_a, scaled(u, beta_a), 4 * o.prime_cutoff),
            vb(s, sigma, offset_b, scaled(u, beta_b), 4 * o.prime_cutoff);
        const auto A = va.at(t, o.log), B = vb.at(t, o.log);
        r.verified_difference = std::abs(A - B);
        r.tail = std::max(va.error(A, o.log), vb.error(B, o.log));
        r.verified = r.verified_difference < o.epsilon + 2 * r.tail;
        return r;
      }
  }
  return std::nullopt;
}

}  // namespace detail

// Smallest grid tau > 0 (or >= t_min) with |F(sigma + i tau u) - F(sigma)| < epsilon.
inline std::optional<SearchResult> almost_period_search(const EulerProductSpec& s, const std::vector<double>& sigma,
                                                        const SearchOptions& o, std::vector<double> u = {}) {
  if (u.empty()) {
    u.assign(sigma.size(), 0.0);
    u[0] = 1;
  }
  if (u.size() != sigma.size()) throw ParameterError("direction has the wrong dimension");
  const std::vector<double> zero(sigma.size(), 0.0);
  return detail::pair_search(s, sigma, zero, 1.0, zero, 0.0, u, o);
}

// Smallest grid t with |F(sigma + i lambda + i beta t u) - F(sigma + i t u)| < epsilon.
inline std::optional<SearchResult> shifted_pair_search(const EulerProductSpec& s, const std::vector<double>& sigma,
                                                       const std::vector<double>& lambda, double beta,
                                                       const SearchOptions& o, std::vector<double> u = {}) {
  if (beta == 1) throw ParameterError("beta must differ from 1");
  if (u.empty()) {
    u.assign(sigma.size(), 0.0);
    u[0] = 1;
  }
  if (u.size() != sigma.size() || lambda.size() != sigma.size()) throw ParameterError("vector has the wrong dimension");
  const std::vector<double> zero(sigma.size(), 0.0);
  return detail::pair_search(s, sigma, lambda, beta, zero, 1.0, u, o);
}

}  // namespace ezeta
