#pragma once
// Quasi-Levy measure of the normalized function f(t) = Z(sigma + it) / Z(sigma):
// atoms at r log(p) c_l with weight (1/r) sum_k a_lk(p)^r p^{-r <c_l, sigma>},
// so that log f(t) = sum_a w_a (exp(-i <t, x_a>) - 1).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "coefficients.hpp"
#include "evaluator.hpp"

namespace ezeta {

struct LevyAtom {
  std::uint64_t p = 0;
  unsigned r = 0;
  int rank = 0;  // 0-based
  std::vector<double> x;
  std::complex<double> weight;
  bool exact = false;        // the power sum behind the weight is exact
  bool nonnegative = false;  // the weight is provably a nonnegative real
};

struct QuasiLevyMeasure {
  std::vector<LevyAtom> atoms;
  std::vector<double> sigma;
  TruncationBounds bounds;
  double dropped_mass = 0;      // sum of |w| over atoms below the drop threshold
  double tail_margin = 0;       // dropped mass plus the truncation tail
  double variation_bound = 0;   // certified bound on the total variation of the full measure
};

struct VariationReport {
  double value = 0;
  double bound = 0;
  bool within_bound = true;
};

namespace detail {

constexpr double kDropWeight = 1e-18;
constexpr double kSeparation = 1e-12;

// Distinct (p, r, l) must give locations at least kSeparation apart in max norm.
inline void check_injective(const std::vector<LevyAtom>& atoms) {
  std::vector<const LevyAtom*> order;
  for (const auto& a : atoms) order.push_back(&a);
  std::sort(order.begin(), order.end(), [](const LevyAtom* a, const LevyAtom* b) { return a->x < b->x; });
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (order[j]->x[0] - order[i]->x[0] > kSeparation) break;
      double d = 0;
      for (std::size_t c = 0; c < order[i]->x.size(); ++c) d = std::max(d, std::abs(order[j]->x[c] - order[i]->x[c]));
      if (d <= kSeparation)
        throw ConstraintError("atom locations collide: (p=" + std::to_string(order[i]->p) + ", r=" +
                              std::to_string(order[i]->r) + ") and (p=" + std::to_string(order[j]->p) +
                              ", r=" + std::to_string(order[j]->r) + ")");
    }
}

}  // namespace detail

inline QuasiLevyMeasure build_quasi_levy(const EulerProductSpec& s, const std::vector<double>& sigma,
                                         const TruncationBounds& b = {}) {
  b.check();
  if (s.mode == DependenceMode::IntegerDependent)
    throw ModeError("integer-dependent directions give colliding atoms; reduce the spec first");
  PreparedProduct prep(s, b.prime_cutoff);
  const auto v = prep.check_domain(sigma);
  QuasiLevyMeasure m;
  m.sigma = sigma;
  m.bounds = b;
  const auto& primes = prep.primes();
  const unsigned R = b.power_cutoff;

  for (int l = 0; l < s.phi; ++l) {
    const auto c = s.direction(l);
    std::map<std::vector<std::int64_t>, std::vector<CoefficientValue>> cache;
    double finite_log = 0;
    for (std::size_t j = 0; j < primes.size(); ++j) {
      const std::uint64_t p = primes[j];
      if (!prep.rank_finite(l) && p > b.prime_cutoff) continue;
      const double logp = std::log(static_cast<double>(p));
      const double x1 = std::exp(-v[l] * logp);
      double rho = 0;
      std::vector<std::complex<double>> base(s.eta);
      for (int k = 0; k < s.eta; ++k) {
        base[k] = prep.alpha(j, l, k);
        rho = std::max(rho, std::abs(base[k]));
      }
      if (rho == 0) continue;
      if (prep.rank_finite(l))
        for (int k = 0; k < s.eta; ++k) finite_log -= std::log1p(-std::abs(base[k]) * x1);

      // Exact power sums where the prime class allows it.
      const PrimeContext ctx{p, prime_index(p)};
      const auto sig = prime_signature(s, l, ctx);
      const std::vector<CoefficientValue>* exact_ps = nullptr;
      std::vector<CoefficientValue> local;
      auto fill = [&](std::vector<CoefficientValue>& out) {
        const auto terms = local_terms(s, l, ctx);
        if (!terms_exact(terms)) return;
        for (unsigned r = 1; r <= R; ++r) out.push_back(power_sum(terms, r));
      };
      if (!sig.aperiodic && !sig.p_dependent) {
        auto it = cache.find(sig.key);
        if (it == cache.end()) {
          it = cache.emplace(sig.key, std::vector<CoefficientValue>{}).first;
          fill(it->second);
        }
        if (!it->second.empty()) exact_ps = &it->second;
      }
      bool positive = true;
      for (const auto& rr : s.rules[l]) {
        const auto val = rule_value(rr, ctx);
        positive &= val.is_exact() ? val.exact_value().is_nonnegative_real() : val.positive_real();
      }

      std::vector<std::complex<double>> pw(s.eta, {1.0, 0.0});
      double mag = 1;
      for (unsigned r = 1; r <= R; ++r) {
        std::complex<double> ps{0.0, 0.0};
        for (int k = 0; k < s.eta; ++k) {
          pw[k] *= base[k];
          ps += pw[k];
        }
        mag *= rho * x1;
        LevyAtom a;
        a.p = p;
        a.r = r;
        a.rank = l;
        if (exact_ps) {
          const auto& e = (*exact_ps)[r - 1];
          ps = e.value();
          a.exact = true;
          a.nonnegative = e.exact_value().is_nonnegative_real();
        } else {
          a.nonnegative = positive;
        }
        const double scale = std::pow(x1, r) / r;
        a.weight = ps * scale;
        if (std::abs(a.weight) < detail::kDropWeight) {
          m.dropped_mass += std::abs(a.weight);
          // The remaining powers are bounded by a geometric series.
          if (s.eta * mag < detail::kDropWeight) {
            const double q = rho * x1;
            m.dropped_mass += s.eta * mag * q / ((r + 1) * (1 - q));
            break;
          }
          continue;
        }
        a.x.resize(c.size());
        for (std::size_t d = 0; d < c.size(); ++d) a.x[d] = r * logp * c[d];
        m.atoms.push_back(std::move(a));
      }
    }
    m.variation_bound += prep.rank_finite(l) ? finite_log : 2.0 * s.eta * zeta_upper_bound(v[l]);
  }
  m.tail_margin = m.dropped_mass + prep.tail_bound(sigma, R);
  m.variation_bound += m.tail_margin;
  detail::check_injective(m.atoms);
  return m;
}

inline VariationReport total_variation(const QuasiLevyMeasure& m) {
  VariationReport out;
  for (const auto& a : m.atoms) out.value += std::abs(a.weight);
  out.bound = m.variation_bound;
  out.within_bound = out.value <= out.bound;
  return out;
}

inline std::complex<double> cf_from_measure(const QuasiLevyMeasure& m, const std::vector<double>& t) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& a : m.atoms) {
    if (a.x.size() != t.size()) throw ParameterError("t has the wrong dimension");
    const double phase = dot(t, a.x);
    acc += a.weight * (std::polar(1.0, -phase) - 1.0);
  }
  return std::exp(acc);
}

inline double reconstruction_gap(const EulerProductSpec& s, const std::vector<double>& sigma,
                                 const std::vector<double>& t, const TruncationBounds& b = {}) {
  const auto m = build_quasi_levy(s, sigma, b);
  return std::abs(cf_from_measure(m, t) - normalized_cf(s, sigma, t, b));
}

}  // namespace ezeta
