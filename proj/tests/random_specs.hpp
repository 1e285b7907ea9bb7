#pragma once
// Spec builders shared by the tests and the acceptance run.

#include <random>
#include <string>
#include <vector>

#include <ezeta/coefficients.hpp>
#include <ezeta/spec.hpp>

#include "oracles.hpp"

namespace testspec {

using namespace ezeta;

inline EulerProductSpec constants(const std::vector<GaussianRational>& values) {
  EulerProductSpec s;
  s.name = "constants";
  s.eta = static_cast<int>(values.size());
  s.directions = {{SpecNumber::from_rational(1)}};
  s.rules.emplace_back();
  for (const auto& v : values) s.rules[0].push_back(rule::constant(v));
  validate_spec(s);
  return s;
}

// Exact local values of rank 0 at p, one entry per factor.
inline std::vector<GaussianRational> values_at(const EulerProductSpec& s, std::uint64_t p) {
  std::vector<GaussianRational> out;
  for (const auto& r : s.rules[0]) out.push_back(rule_value(r, prime_context(p)).exact_value());
  return out;
}

// Random eta = 2 spec with exact periodic values.
inline EulerProductSpec random_degree2(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 4);
  auto unit4 = [&] { return detail::i_power(std::uniform_int_distribution<int>(0, 3)(rng)); };
  auto s = constants({GaussianRational(1), GaussianRational(1)});
  switch (kind(rng)) {
    case 0: s.rules[0] = {rule::constant(oracle::random_disc(rng)), rule::constant(oracle::random_disc(rng))}; break;
    case 1: {
      const auto a = std::uniform_int_distribution<int>(0, 1)(rng) ? oracle::random_unit_special(rng) : oracle::random_disc(rng);
      s.rules[0] = {rule::constant(a), rule::constant(a.conj())};
      break;
    }
    case 2: {
      // character mod 5 generated by 2 -> i^k
      const auto g = unit4();
      s.rules[0] = {rule::constant(oracle::random_disc(rng)),
                    rule::character(5, {{1, GaussianRational(1)}, {2, g}, {4, g * g}, {3, g * g * g}})};
      break;
    }
    case 3: s.rules[0] = {rule::unit_power(unit4()), rule::unit_power(unit4())}; break;
    default: s.rules[0] = {rule::chi4(), rule::finite_support({{3, oracle::random_disc(rng)}}, rule::constant(oracle::random_disc(rng)))}; break;
  }
  validate_spec(s);
  return s;
}

}  // namespace testspec
