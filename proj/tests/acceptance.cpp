// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance            run every criterion
//   acceptance <id>...    run the named criteria
// Exit status is 0 iff every selected criterion passed.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <ezeta/ezeta.hpp>

#include "oracles.hpp"
#include "random_specs.hpp"

using namespace ezeta;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Report {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failures_.push_back(what);
    }
  }
  void note(const std::string& kv) { notes_ += (notes_.empty() ? "" : " ") + kv; }
  Outcome done() const {
    std::string d = notes_;
    for (const auto& f : failures_) d += (d.empty() ? "" : " ") + std::string("failed:") + f;
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  std::string notes_;
  std::vector<std::string> failures_;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(9);
  os << x;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

EulerProductSpec usable(const std::string& name) {
  auto s = builtin_spec(name);
  return s.mode == DependenceMode::IntegerDependent ? reduce_integer_dependent(s) : s;
}

// ---------------------------------------------------------------------------

Outcome scaled_gap_constant() {
  Report r;
  setenv("EULER_ZETA_THREADS", "1", 1);
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = scaled_gap(builtin_spec("dirichlet-chi4"), {1.5}, {19.3}, {82.9}, {2000000, 60, 1});
  const double secs = seconds_since(t0);
  unsetenv("EULER_ZETA_THREADS");
  r.note("value=" + num(g.value) + " expected=-0.205831 tol=5e-3 P=2e6 seconds=" + num(secs));
  r.check(std::abs(g.value - -0.205831) <= 5e-3, "value");
  r.check(secs < 60, "runtime");
  return r.done();
}

Outcome log_gap_constant() {
  Report r;
  const auto g = log_gap(builtin_spec("dirichlet-chi4"), {1.5}, {19.3}, {82.9}, {2000000, 60, 1});
  r.note("value=" + num(g.value) + " tail=" + num(g.tail) + " expected=-0.16818 tol=1e-3");
  r.check(std::abs(g.value - -0.16818) <= 1e-3, "value");
  return r.done();
}

// Closed forms for zq: Z = 1 / ((1 - x)(1 - ix)(1 + ix)) with x = 2^{-s}.
std::complex<double> zq_log(std::complex<double> s) {
  const auto x = std::exp(-s * std::log(2.0));
  const std::complex<double> i{0.0, 1.0};
  return -std::log(1.0 - x) - std::log(1.0 - i * x) - std::log(1.0 + i * x);
}

Outcome q_profile_sign() {
  Report r;
  const auto s = builtin_spec("zq");
  const double sigma = 1.0 / 3;
  const auto grid = make_grid(0, 47, 0.01);
  const TruncationBounds b{1000, 300, 1};
  const auto t0 = std::chrono::steady_clock::now();
  const auto q = q_profile(s, {sigma}, 7, grid, GapKind::Log, b);
  const auto plain = q_profile(s, {sigma}, 7, grid, GapKind::Plain, b);
  const double secs = seconds_since(t0);

  std::size_t arg = 0;
  for (std::size_t j = 0; j < q.points.size(); ++j)
    if (q.points[j].q < q.points[arg].q) arg = j;
  // independent value at the minimizing grid point
  const std::complex<double> i{0.0, 1.0};
  const double t = q.points[arg].t;
  const auto L = [&](double u) { return zq_log(sigma + i * u); };
  const double want = 4 * std::abs(L(0)) * std::abs(L(0) - L(7)) - std::norm(L(t) - L(t + 7));

  r.note("min_q=" + num(q.minimum()) + " at_t=" + num(t) + " closed_form=" + num(want) + " min_plain=" +
         num(plain.minimum()) + " points=" + std::to_string(grid.size()) + " seconds=" + num(secs));
  r.check(q.minimum() < 0, "q negative");
  r.check(std::abs(q.minimum() - want) < 1e-9, "closed form");
  r.check(plain.minimum() >= -1e-9, "plain analogue");
  r.check(secs < 5, "runtime");
  return r.done();
}

Outcome classification_gallery() {
  Report r;
  struct Want {
    const char* name;
    Verdict verdict;
    std::uint64_t n = 0;  // coefficient witness
    std::uint64_t p = 0;  // power-sum witness
    unsigned pr = 0;
  };
  const std::vector<Want> want = {
      {"riemann", Verdict::InfinitelyDivisible},
      {"dirichlet-chi4", Verdict::NotCharacteristic, 3},
      {"zq", Verdict::QuasiInfinitelyDivisibleOnly, 0, 2, 2},
      {"fn:0", Verdict::NotCharacteristic},
      {"fn:1", Verdict::QuasiInfinitelyDivisibleOnly},
      {"fn:2", Verdict::InfinitelyDivisible},
      {"fn:3", Verdict::InfinitelyDivisible},
      {"zeta-l2s", Verdict::QuasiInfinitelyDivisibleOnly},
      {"zeta2-l2s", Verdict::InfinitelyDivisible},
      {"l-zeta2s", Verdict::NotCharacteristic, 3},
  };
  int matched = 0;
  for (const auto& w : want) {
    const auto v = classify(usable(w.name));
    bool ok = v.verdict == w.verdict;
    if (w.n) ok &= v.coefficient_witness && v.coefficient_witness->n == w.n;
    if (w.p) ok &= v.power_witness && v.power_witness->p == w.p && v.power_witness->r == w.pr;
    matched += ok;
    r.check(ok, std::string(w.name) + "=" + to_string(v.verdict));
  }
  r.note("gallery=" + std::to_string(matched) + "/" + std::to_string(want.size()));

  // eta = 2: every verdict is ID or ND, checked against direct expansion
  std::mt19937_64 rng(17);
  int id = 0, nd = 0, other = 0, mismatch = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = testspec::random_degree2(rng);
    const auto v = classify(s, {1000, 40, 2000});
    if (v.verdict == Verdict::NotCharacteristic) {
      ++nd;
      const auto& w = *v.coefficient_witness;
      const auto h = oracle::expand_product(testspec::values_at(s, w.p), w.exponent);
      mismatch += !(h[w.exponent] == w.value.exact_value()) || h[w.exponent].is_nonnegative_real();
    } else if (v.verdict == Verdict::InfinitelyDivisible) {
      ++id;
      for (std::uint64_t p : primes_up_to(60)) {
        const auto a = testspec::values_at(s, p);
        GaussianRational x(1), y(1);
        for (unsigned k = 1; k <= 40; ++k) {
          x *= a[0];
          y *= a[1];
          mismatch += !(x + y).is_nonnegative_real();
        }
      }
    } else {
      ++other;
    }
  }
  r.note("random_eta2: id=" + std::to_string(id) + " nd=" + std::to_string(nd) + " other=" + std::to_string(other));
  r.check(other == 0, "dichotomy");
  r.check(mismatch == 0, "oracle mismatch");
  return r.done();
}

Outcome newton_oracle() {
  Report r;
  std::mt19937_64 rng(2024);
  int equal = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int eta = 1 + trial % 4;
    std::vector<GaussianRational> values;
    for (int k = 0; k < eta; ++k)
      values.push_back(trial % 5 == 0 ? oracle::random_unit_special(rng) : oracle::random_disc(rng));
    const auto h = local_coefficients(testspec::constants(values), 0, 2, 12);
    const auto want = oracle::expand_product(values, 12);
    bool same = h.exact;
    for (unsigned k = 0; k <= 12 && same; ++k) same = h.exact_values[k] == want[k];
    equal += same;
  }
  r.note("tuples=" + std::to_string(equal) + "/50 eta<=4 r<=12");
  r.check(equal == 50, "exact equality");
  return r.done();
}

Outcome levy_reconstruction() {
  Report r;
  double rz = 0, zq = 0;
  for (double t : {0.0, 1.0, 5.0, 12.0}) {
    rz = std::max(rz, reconstruction_gap(builtin_spec("riemann"), {2.0}, {t}, {10000, 40, 1}));
    zq = std::max(zq, reconstruction_gap(builtin_spec("zq"), {1.0 / 3}, {t}, {10000, 300, 1}));
  }
  r.note("riemann_gap=" + num(rz) + " zq_gap=" + num(zq));
  r.check(rz < 1e-6, "riemann");
  r.check(zq < 1e-10, "zq");
  int within = 0, total = 0;
  for (const auto& name : builtin_gallery()) {
    const auto s = usable(name);
    const auto m = build_quasi_levy(s, {2.0}, {10000, 60, 1});
    double v = INFINITY;
    for (int l = 0; l < s.phi; ++l) v = std::min(v, dot(s.direction(l), {2.0}));
    const double bound = 2.0 * s.phi * s.eta * oracle::zeta_real(v);
    const double tv = total_variation(m).value;
    ++total;
    within += tv <= bound;
    r.check(tv <= bound, name);
  }
  r.note("variation_within_bound=" + std::to_string(within) + "/" + std::to_string(total));
  return r.done();
}

Outcome sampling() {
  Report r;
  const auto pmf = build_pmf(builtin_spec("riemann"), {2.0}, 1000000);
  const auto sample = draw(pmf, 42, 100000);
  const double M = static_cast<double>(sample.size());
  const double z2 = oracle::zeta_real(2.0);
  double worst = 0;
  for (double t : {0.5, 1.0, 3.0}) {
    const auto want = oracle::zeta_complex({2.0, t}) / z2;
    worst = std::max(worst, std::abs(empirical_cf(sample, {t}) - want));
  }
  std::size_t zero = 0;
  for (const auto& x : sample) zero += x[0] == 0.0;
  const double p = 1 / z2, band = 3 * std::sqrt(p * (1 - p) / M);
  r.note("max_cf_error=" + num(worst) + " limit=" + num(5 / std::sqrt(M)) + " origin_freq=" + num(zero / M) +
         " expected=" + num(p) + " band=" + num(band));
  r.check(worst < 5 / std::sqrt(M), "cf");
  r.check(std::abs(zero / M - p) <= band, "origin");
  return r.done();
}

Outcome inequality_properties() {
  Report r;
  const TruncationBounds b{2000, 60, 1};
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> tt(-50.0, 50.0);
  double plain_min = INFINITY, log_min = INFINITY;
  int plain_specs = 0, log_specs = 0;
  for (const auto& name : builtin_gallery()) {
    const auto s = usable(name);
    const auto v = classify(s, {2000, 40, 5000});
    const bool characteristic = v.verdict == Verdict::InfinitelyDivisible || v.verdict == Verdict::QuasiInfinitelyDivisibleOnly;
    const auto cert = certify_power_sums(s, {2000, 60, 1});
    const bool complete_id = cert.kind == PowerSumCertificate::Kind::AllNonnegative && cert.complete;
    plain_specs += characteristic;
    log_specs += complete_id;
    for (int k = 0; k < 200; ++k) {
      const double t1 = tt(rng), t2 = tt(rng);
      if (characteristic) plain_min = std::min(plain_min, plain_gap(s, {2.0}, {t1}, {t2}, b).value);
      if (complete_id) log_min = std::min(log_min, log_gap(s, {2.0}, {t1}, {t2}, b).value);
    }
  }
  r.note("plain_specs=" + std::to_string(plain_specs) + " min_plain=" + num(plain_min) + " log_specs=" +
         std::to_string(log_specs) + " min_log=" + num(log_min));
  r.check(plain_specs > 0 && plain_min >= -1e-9, "plain");
  r.check(log_specs > 0 && log_min >= -1e-9, "log");
  return r.done();
}

Outcome almost_periodicity() {
  Report r;
  const auto s = builtin_spec("riemann");
  const std::complex<double> z2 = oracle::zeta_complex(2.0);
  SearchOptions o;
  o.t_max = 100000;
  const auto first = almost_period_search(s, {2.0}, o);
  r.check(first.has_value() && first->verified, "default search");
  if (first) r.note("first_tau=" + num(first->t));
  // away from the trivial recurrence next to 0
  o.t_min = 1;
  const auto ap = almost_period_search(s, {2.0}, o);
  r.check(ap.has_value(), "search tau >= 1");
  if (ap) {
    const double d = std::abs(oracle::zeta_complex({2.0, ap->t}) - z2);
    r.note("tau=" + num(ap->t) + " search_diff=" + num(ap->verified_difference) + " oracle_diff=" + num(d));
    r.check(ap->verified && ap->t <= 1e5, "verified");
    r.check(d < 0.05, "oracle");
  }
  SearchOptions p;
  p.t_max = 100000;
  const auto sp = shifted_pair_search(s, {2.0}, {0.3}, 2.0, p);
  r.check(sp.has_value(), "shifted pair");
  if (sp) {
    const double d = std::abs(oracle::zeta_complex({2.0, 0.3 + 2 * sp->t}) - oracle::zeta_complex({2.0, sp->t}));
    r.note("pair_t=" + num(sp->t) + " oracle_diff=" + num(d));
    r.check(sp->verified && d < 0.05, "pair verified");
  }
  return r.done();
}

Outcome structural_invariants() {
  Report r;
  std::size_t pairs = 0, broken = 0;
  for (const auto& name : builtin_gallery()) {
    const auto s = builtin_spec(name);
    for (int l = 0; l < s.phi; ++l) {
      const auto t = dirichlet_coefficients(s, l, 10000);
      for (std::uint64_t m = 1; m <= 100; ++m)
        for (std::uint64_t n = m; m * n <= 10000; ++n) {
          if (gcd_u64(m, n) != 1) continue;
          ++pairs;
          if (t.exact)
            broken += !(t.exact_values[m * n] == t.exact_values[m] * t.exact_values[n]);
          else
            broken += std::abs(t.values[m * n] - t.values[m] * t.values[n]) > 1e-12;
        }
    }
  }
  r.note("coprime_pairs=" + std::to_string(pairs) + " broken=" + std::to_string(broken));
  r.check(broken == 0, "multiplicativity");

  double herm = 0;
  int real_specs = 0;
  for (const auto& name : builtin_gallery()) {
    const auto s = builtin_spec(name);
    bool real = true;
    for (int l = 0; l < s.phi; ++l)
      for (const auto& v : dirichlet_coefficients(s, l, 2000).values) real &= v.imag() == 0;
    if (!real) continue;
    ++real_specs;
    const std::vector<double> sigma{spec_is_finite_support(s) ? 0.6 : 2.0};
    for (double t : {0.3, 2.0, 11.0, 40.0})
      herm = std::max(herm, std::abs(normalized_cf(s, sigma, {t}, {5000, 60, 1}) -
                                     std::conj(normalized_cf(s, sigma, {-t}, {5000, 60, 1}))));
  }
  r.note("hermitian_specs=" + std::to_string(real_specs) + " max_asymmetry=" + num(herm));
  r.check(herm < 1e-12, "hermitian");

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> sig(1.05, 4.0), tt(-100.0, 100.0), fin(0.2, 3.0);
  const auto gallery = builtin_gallery();
  double smallest = INFINITY;
  for (int k = 0; k < 100; ++k) {
    const auto s = builtin_spec(gallery[k % gallery.size()]);
    const double sigma = spec_is_finite_support(s) ? fin(rng) : sig(rng);
    smallest = std::min(smallest, std::abs(eval_product(s, {{sigma}, {tt(rng)}}, {3000, 60, 1})));
  }
  r.note("min_abs_Z=" + num(smallest));
  r.check(smallest > 0, "zero free");

  int clean = 0;
  bool real_sums = true;
  for (const auto& name : builtin_gallery()) {
    const auto s = usable(name);
    if (scan_coefficients(s, 10000).kind != CoefficientScan::Kind::Clean) continue;
    ++clean;
    for (int l = 0; l < s.phi; ++l)
      for (std::uint64_t p : primes_up_to(100))
        for (unsigned k = 1; k <= 20; ++k) {
          const auto v = power_sum(s, l, p, k);
          real_sums &= v.is_exact() ? v.exact_value().is_real() : std::abs(v.value().imag()) <= 1e-9;
        }
  }
  r.note("clean_scans=" + std::to_string(clean));
  r.check(real_sums, "clean scan implies real power sums");
  return r.done();
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
      {"scaled-gap-constant", scaled_gap_constant},
      {"log-gap-constant", log_gap_constant},
      {"q-profile-sign", q_profile_sign},
      {"classification-gallery", classification_gallery},
      {"newton-oracle", newton_oracle},
      {"levy-reconstruction", levy_reconstruction},
      {"sampling", sampling},
      {"inequality-properties", inequality_properties},
      {"almost-periodicity", almost_periodicity},
      {"structural-invariants", structural_invariants},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool all_pass = true;
  for (const auto& w : wanted) {
    bool known = false;
    for (const auto& c : criteria()) known |= c.first == w;
    if (!known) {
      std::cerr << "unknown criterion " << w << '\n';
      return 2;
    }
  }
  for (const auto& [id, fn] : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << id << ' ' << o.detail << std::endl;
    all_pass &= o.pass;
  }
  return all_pass ? 0 : 1;
}
