#pragma once
// The distribution whose characteristic function is Z(sigma + it) / Z(sigma):
// mass prod_l a_l(n_l) n_l^{-<c_l, sigma>} / Z(sigma) at x = -sum_l log(n_l) c_l.
// Ranks are independent, so the table is stored as one marginal per rank.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "classifier.hpp"
#include "coefficients.hpp"
#include "evaluator.hpp"

namespace ezeta {

struct RankMarginal {
  int rank = 0;
  std::vector<double> direction;
  std::vector<std::uint64_t> n;  // sorted by descending mass
  std::vector<double> mass;
  std::vector<double> cdf;       // running sums of mass
  double normalizer = 1;         // Z_l at sigma
  double captured = 0;           // sum of mass
};

struct SupportAtomTable {
  struct Entry {
    std::vector<std::uint64_t> n;
    std::vector<double> x;
    double mass = 0;
  };

  int dimension = 1;
  std::vector<double> sigma;
  std::uint64_t cutoff = 0;
  std::vector<RankMarginal> marginals;
  double deficit = 1;        // 1 - total listed mass
  double deficit_bound = 1;  // majorant on the mass beyond the cutoff

  std::size_t size() const {
    std::size_t s = 1;
    for (const auto& m : marginals) s *= m.n.size();
    return s;
  }

  std::vector<double> point(const std::vector<std::uint64_t>& n) const {
    std::vector<double> x(dimension, 0.0);
    for (std::size_t l = 0; l < marginals.size(); ++l) {
      const double lg = std::log(static_cast<double>(n[l]));
      for (int d = 0; d < dimension; ++d) x[d] -= lg * marginals[l].direction[d];
    }
    return x;
  }

  // Entry i in mixed radix over the marginals, first rank fastest.
  Entry entry(std::size_t i) const {
    Entry e;
    e.mass = 1;
    for (const auto& m : marginals) {
      const std::size_t j = i % m.n.size();
      i /= m.n.size();
      e.n.push_back(m.n[j]);
      e.mass *= m.mass[j];
    }
    e.x = point(e.n);
    return e;
  }
};

namespace detail {

inline EulerProductSpec rank_spec(const EulerProductSpec& s, int l) {
  EulerProductSpec r;
  r.name = s.name;
  r.dimension = s.dimension;
  r.eta = s.eta;
  r.directions = {s.directions[l]};
  r.rules = {s.rules[l]};
  return r;
}

}  // namespace detail

inline SupportAtomTable build_pmf(const EulerProductSpec& s, const std::vector<double>& sigma, std::uint64_t N,
                                  std::uint64_t prime_cutoff = 100000) {
  if (N < 1) throw ParameterError("coefficient cutoff must be at least 1");
  if (static_cast<int>(sigma.size()) != s.dimension) throw ParameterError("sigma has the wrong dimension");
  SupportAtomTable t;
  t.dimension = s.dimension;
  t.sigma = sigma;
  t.cutoff = N;
  const std::uint64_t P = std::max(prime_cutoff, N);
  double listed = 1, beyond = 1;
  for (int l = 0; l < s.phi; ++l) {
    const auto rs = detail::rank_spec(s, l);
    PreparedProduct prep(rs, P);
    const double v = prep.check_domain(sigma)[0];
    const auto scan = scan_coefficients(rs, N);
    if (scan.kind != CoefficientScan::Kind::Clean) {
      const auto& w = *scan.witness;
      const std::string what = scan.kind == CoefficientScan::Kind::Witness ? "is negative or non-real" : "has undecided sign";
      throw NegativeMassError("a_" + std::to_string(l + 1) + "(" + std::to_string(w.n) + ") = " + w.value.str() + " " + what,
                              l, w.n);
    }
    RankMarginal m;
    m.rank = l;
    m.direction = s.direction(l);
    m.normalizer = prep.product(make_point(sigma)).real();
    const auto a = dirichlet_coefficients_numeric(rs, 0, N);
    std::vector<std::pair<double, std::uint64_t>> entries;
    for (std::uint64_t n = 1; n <= N; ++n) {
      const double an = a[n].real();
      if (an <= 0) continue;
      entries.push_back({an * std::pow(static_cast<double>(n), -v) / m.normalizer, n});
    }
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    double acc = 0;
    for (const auto& [mass, n] : entries) {
      m.n.push_back(n);
      m.mass.push_back(mass);
      acc += mass;
      m.cdf.push_back(acc);
    }
    m.captured = acc;
    listed *= acc;
    // Mass beyond N: the d_eta majorant for ranks with v > 1, the listed deficit otherwise.
    double b = std::max(0.0, 1 - acc);
    if (v > 1) b = std::max(b, series_tail_bound(rs, sigma, N) / m.normalizer);
    beyond *= 1 - std::min(1.0, b);
    t.marginals.push_back(std::move(m));
  }
  t.deficit = 1 - listed;
  t.deficit_bound = 1 - beyond;
  return t;
}

// Inverse-CDF draws, one uniform per rank, from a 64-bit Mersenne Twister.
// Uniforms are (x >> 11) * 2^-53 so the stream is identical on every platform.
inline std::vector<std::vector<double>> draw(const SupportAtomTable& pmf, std::uint64_t seed, std::size_t count) {
  if (count == 0) return {};
  if (!(pmf.deficit < 1e-6)) throw ParameterError("pmf deficit " + std::to_string(pmf.deficit) + " is too large to sample");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> out;
  out.reserve(count);
  std::vector<std::uint64_t> n(pmf.marginals.size());
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t l = 0; l < pmf.marginals.size(); ++l) {
      const auto& m = pmf.marginals[l];
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * m.captured;
      auto it = std::upper_bound(m.cdf.begin(), m.cdf.end(), u);
      if (it == m.cdf.end()) --it;
      n[l] = m.n[static_cast<std::size_t>(it - m.cdf.begin())];
    }
    out.push_back(pmf.point(n));
  }
  return out;
}

inline std::complex<double> empirical_cf(const std::vector<std::vector<double>>& samples, const std::vector<double>& t) {
  if (samples.empty()) throw ParameterError("empirical characteristic function of an empty sample");
  std::complex<double> acc{0.0, 0.0};
  for (const auto& x : samples) {
    if (x.size() != t.size()) throw ParameterError("t has the wrong dimension");
    acc += std::polar(1.0, dot(t, x));
  }
  return acc / static_cast<double>(samples.size());
}

// sum over entries of mass * exp(i <t, x>), computed rank by rank.
inline std::complex<double> pmf_cf(const SupportAtomTable& pmf, const std::vector<double>& t) {
  std::complex<double> out{1.0, 0.0};
  for (const auto& m : pmf.marginals) {
    const double w = dot(m.direction, t);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < m.n.size(); ++j) acc += m.mass[j] * std::polar(1.0, -w * std::log(static_cast<double>(m.n[j])));
    out *= acc;
  }
  return out;
}

}  // namespace ezeta
