// Classifies every builtin spec and prints the verdict with its witness,
// then evaluates the normalized function at a few points.
//
//   classify_gallery [spec.json ...]

#include <cstdio>
#include <fstream>
#include <sstream>

#include <ezeta/ezeta.hpp>

using namespace ezeta;

namespace {

void show(const EulerProductSpec& input) {
  const auto s = input.mode == DependenceMode::IntegerDependent ? reduce_integer_dependent(input) : input;
  const auto v = classify(s, {10000, 60, 10000});
  std::printf("%-16s %-30s", input.name.c_str(), to_string(v.verdict).c_str());
  if (v.coefficient_witness)
    std::printf(" a(%llu) = %s", static_cast<unsigned long long>(v.coefficient_witness->n),
                v.coefficient_witness->value.str().c_str());
  else if (v.power_witness)
    std::printf(" s(p=%llu, r=%u) = %s", static_cast<unsigned long long>(v.power_witness->p), v.power_witness->r,
                v.power_witness->value.str().c_str());
  std::printf("%s\n", v.complete ? "" : "  (bounded check)");

  const std::vector<double> sigma(s.dimension, spec_is_finite_support(s) ? 0.5 : 2.0);
  for (double t : {1.0, 10.0}) {
    std::vector<double> tv(s.dimension, 0.0);
    tv[0] = t;
    const auto f = normalized_cf(s, sigma, tv, {20000, 60, 1});
    std::printf("%16s f(%g) = %+.6f %+.6fi\n", "", t, f.real(), f.imag());
  }
}

}  // namespace

int main(int argc, char** argv) {
  try {
    if (argc > 1) {
      for (int k = 1; k < argc; ++k) {
        std::ifstream in(argv[k]);
        std::stringstream text;
        text << in.rdbuf();
        auto s = parse_spec(text.str());
        if (s.name.empty()) s.name = argv[k];
        show(s);
      }
      return 0;
    }
    for (const auto& name : builtin_gallery()) show(builtin_spec(name));
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
