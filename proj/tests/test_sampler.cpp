#include <gtest/gtest.h>

#include <ezeta/sampler.hpp>

#include "oracles.hpp"

using namespace ezeta;

namespace {

const SupportAtomTable& riemann_pmf() {
  static const SupportAtomTable t = build_pmf(builtin_spec("riemann"), {2.0}, 1000000);
  return t;
}

const std::vector<std::vector<double>>& riemann_sample() {
  static const auto s = draw(riemann_pmf(), 42, 100000);
  return s;
}

EulerProductSpec two_rank() {
  EulerProductSpec s = builtin_spec("dedekind-qi");
  s.dimension = 2;
  s.phi = 2;
  s.directions = {{SpecNumber::from_rational(1), SpecNumber::from_rational(0)},
                  {SpecNumber::from_rational(0), SpecNumber::from_rational(1)}};
  s.rules = {{rule::constant(1), rule::constant(0)}, {rule::constant(1), rule::chi4()}};
  validate_spec(s);
  return s;
}

}  // namespace

TEST(BuildPmf, RiemannMasses) {
  const auto& t = riemann_pmf();
  const double z2 = oracle::zeta_real(2.0);
  ASSERT_EQ(t.marginals.size(), 1u);
  const auto& m = t.marginals[0];
  EXPECT_EQ(m.n[0], 1u);
  EXPECT_NEAR(m.mass[0], 1 / z2, 1e-7);
  EXPECT_NEAR(m.mass[0], 0.6079, 1e-4);
  EXPECT_EQ(m.n[1], 2u);
  EXPECT_NEAR(m.mass[1], 0.25 / z2, 1e-7);
  EXPECT_EQ(t.entry(0).x, std::vector<double>{0.0});
  EXPECT_DOUBLE_EQ(t.entry(1).x[0], -std::log(2.0));
  EXPECT_LT(t.deficit, 1e-6);
  EXPECT_GT(t.deficit, 0.0);
  // mass beyond 10^6 is about 1/(N zeta(2))
  EXPECT_NEAR(t.deficit, 1e-6 / z2, 2e-7);
  EXPECT_LE(t.deficit, t.deficit_bound);
}

TEST(BuildPmf, MassesSortedAndNormalized) {
  for (const auto* name : {"riemann", "dedekind-qi", "zeta-k:2"}) {
    const auto t = build_pmf(builtin_spec(name), {2.5}, 20000);
    double sum = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto e = t.entry(i);
      EXPECT_GE(e.mass, 0.0);
      sum += e.mass;
    }
    EXPECT_NEAR(sum + t.deficit, 1.0, 1e-12) << name;
    const auto& m = t.marginals[0].mass;
    EXPECT_TRUE(std::is_sorted(m.begin(), m.end(), std::greater<>())) << name;
  }
}

TEST(BuildPmf, NegativeMassError) {
  try {
    build_pmf(builtin_spec("dirichlet-chi4"), {2.0}, 1000);
    FAIL() << "expected an error";
  } catch (const NegativeMassError& e) {
    EXPECT_EQ(e.n(), 3u);
    EXPECT_EQ(e.rank(), 0);
  }
  EXPECT_THROW(build_pmf(builtin_spec("riemann"), {1.0}, 1000), DomainError);
}

TEST(BuildPmf, CharacteristicSpecsGiveProbabilities) {
  for (const auto& name : builtin_gallery()) {
    auto s = builtin_spec(name);
    if (s.mode == DependenceMode::IntegerDependent) s = reduce_integer_dependent(s);
    const auto v = classify(s, {2000, 40, 5000});
    if (v.verdict != Verdict::InfinitelyDivisible && v.verdict != Verdict::QuasiInfinitelyDivisibleOnly) continue;
    const auto t = build_pmf(s, {2.0}, 5000);
    double sum = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_GE(t.entry(i).mass, 0.0) << name;
      sum += t.entry(i).mass;
    }
    EXPECT_NEAR(sum + t.deficit, 1.0, 1e-12) << name;
    EXPECT_GT(t.deficit, -1e-6) << name;
  }
}

TEST(BuildPmf, CharacteristicFunctionOfTheTable) {
  const TruncationBounds b{1000000, 60, 1};
  const auto& t = riemann_pmf();
  const double tail = truncation_tail_bound(builtin_spec("riemann"), {2.0}, b);
  for (double x : {0.0, 0.5, 1.0, 3.0, 14.1, 40.0}) {
    const auto want = normalized_cf(builtin_spec("riemann"), {2.0}, {x}, b);
    EXPECT_LE(std::abs(pmf_cf(t, {x}) - want), 2 * t.deficit + 4 * tail) << x;
  }
}

TEST(Draw, Determinism) {
  EXPECT_TRUE(draw(riemann_pmf(), 1, 0).empty());
  const auto a = draw(riemann_pmf(), 7, 1000), b = draw(riemann_pmf(), 7, 1000), c = draw(riemann_pmf(), 8, 1000);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_THROW(draw(build_pmf(builtin_spec("riemann"), {2.0}, 1000), 1, 10), ParameterError);
}

TEST(Draw, FrequencyOfTheOrigin) {
  const auto& s = riemann_sample();
  const double p = 1 / oracle::zeta_real(2.0);
  std::size_t zero = 0;
  for (const auto& x : s) zero += x[0] == 0.0;
  const double M = static_cast<double>(s.size());
  EXPECT_LE(std::abs(zero / M - p), 3 * std::sqrt(p * (1 - p) / M));
}

TEST(EmpiricalCf, Basics) {
  EXPECT_EQ(empirical_cf({{0.0}}, {3.7}), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(empirical_cf({{-1.0}, {-2.5}}, {0.0}), std::complex<double>(1.0, 0.0));
  EXPECT_THROW(empirical_cf({}, {1.0}), ParameterError);
}

TEST(EmpiricalCf, MatchesNormalizedCf) {
  const auto& s = riemann_sample();
  const double M = static_cast<double>(s.size());
  for (double t : {0.5, 1.0, 3.0})
    EXPECT_LT(std::abs(empirical_cf(s, {t}) - normalized_cf(builtin_spec("riemann"), {2.0}, {t})), 5 / std::sqrt(M)) << t;
}

TEST(EmpiricalCf, IndependentRanksFactor) {
  const auto s = two_rank();
  const auto pmf = build_pmf(s, {3.0, 3.0}, 10000);
  ASSERT_LT(pmf.deficit, 1e-6);
  const auto sample = draw(pmf, 5, 100000);
  const double band = 5 / std::sqrt(static_cast<double>(sample.size()));
  const auto zeta = builtin_spec("riemann"), dedekind = builtin_spec("dedekind-qi");
  for (double t : {0.7, 2.0}) {
    const auto f1 = normalized_cf(zeta, {3.0}, {t});
    const auto f2 = normalized_cf(dedekind, {3.0}, {t});
    EXPECT_LT(std::abs(empirical_cf(sample, {t, 0.0}) - f1), band);
    EXPECT_LT(std::abs(empirical_cf(sample, {0.0, t}) - f2), band);
    EXPECT_LT(std::abs(empirical_cf(sample, {t, t}) - f1 * f2), band);
  }
}
