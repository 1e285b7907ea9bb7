#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ezeta::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, sep);) out.push_back(f);
  return out;
}

std::string reprint(const std::string& field) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  EXPECT_EQ(*end, '\0') << field;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

TEST(Cli, ClassifyZq) {
  const auto r = run({"classify", "--spec", "builtin:zq"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("verdict=QuasiInfinitelyDivisibleOnly witness=p:2,r:2", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("complete=true"), std::string::npos);
}

TEST(Cli, ClassifyGallery) {
  const std::vector<std::pair<std::string, std::string>> want = {
      {"riemann", "InfinitelyDivisible"},   {"dirichlet-chi4", "NotCharacteristic"},
      {"fn:0", "NotCharacteristic"},        {"fn:1", "QuasiInfinitelyDivisibleOnly"},
      {"fn:2", "InfinitelyDivisible"},      {"zeta-l2s", "QuasiInfinitelyDivisibleOnly"},
      {"zeta2-l2s", "InfinitelyDivisible"}, {"l-zeta2s", "NotCharacteristic"}};
  for (const auto& [name, verdict] : want) {
    const auto r = run({"classify", "--spec", "builtin:" + name, "--nmax", "2000", "--pmax", "2000"});
    EXPECT_EQ(r.code, 0) << name;
    EXPECT_EQ(r.out.rfind("verdict=" + verdict + " ", 0), 0u) << name << ": " << r.out;
  }
  EXPECT_NE(run({"classify", "--spec", "builtin:zeta-l2s"}).err.find("reduced"), std::string::npos);
  EXPECT_NE(run({"classify", "--spec", "builtin:dirichlet-chi4"}).out.find("witness=n:3,"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"eval", "--spec", "builtin:riemann"}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"--format", "yaml", "specs"}).code, 1);
  EXPECT_EQ(run({"eval", "--spec", "builtin:riemann", "--sigma", "1/0"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"classify", "--spec", "builtin:nope"}).code, 2);
  EXPECT_EQ(run({"classify", "--spec", "/nonexistent/spec.json"}).code, 2);
  EXPECT_EQ(run({"eval", "--spec", "builtin:riemann", "--sigma", "1"}).code, 2);
  EXPECT_EQ(run({"sample", "--spec", "builtin:dirichlet-chi4", "--sigma", "2", "--n", "100"}).code, 2);
  EXPECT_EQ(run({"shift-pair", "--spec", "builtin:riemann", "--sigma", "2", "--beta", "1"}).code, 2);
  const auto none = run({"almost-period", "--spec", "builtin:riemann", "--sigma", "2", "--epsilon", "1e-9",
                         "--tau-max", "1", "--pmax", "1000"});
  EXPECT_EQ(none.code, 3);
  EXPECT_EQ(none.out.rfind("found=false", 0), 0u);
}

TEST(Cli, MalformedSpecFile) {
  const std::string path = ::testing::TempDir() + "bad_spec.json";
  std::ofstream(path) << "{\"dimension\": 1, \"phi\": ";
  const auto r = run({"classify", "--spec", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, SpecFileMatchesBuiltin) {
  const auto a = run({"classify", "--spec", std::string(EZETA_SPECS_DIR) + "/zq.json"});
  const auto b = run({"classify", "--spec", "builtin:zq"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  // a bare builtin name is accepted when no such file exists
  EXPECT_EQ(run({"classify", "--spec", "zq"}).out, b.out);
}

TEST(Cli, EvalRiemann) {
  const auto r = run({"eval", "--spec", "builtin:riemann", "--sigma", "2"});
  ASSERT_EQ(r.code, 0);
  const auto f = fields(lines(r.out).at(0), ' ');
  ASSERT_EQ(f.size(), 3u);
  const double re = std::stod(f[0]), tail = std::stod(f[2]);
  EXPECT_LE(std::abs(re - 1.6449340668482264), tail);
  EXPECT_EQ(std::stod(f[1]), 0.0);

  const auto s = run({"eval", "--spec", "builtin:riemann", "--sigma", "2", "--method", "series", "--nmax", "100000"});
  const auto g = fields(lines(s.out).at(0), ' ');
  EXPECT_LE(std::abs(std::stod(g[0]) - 1.6449340668482264), std::stod(g[2]));

  const auto grid = run({"eval", "--spec", "builtin:riemann", "--sigma", "2", "--t-grid", "0:1:0.25"});
  ASSERT_EQ(grid.code, 0);
  const auto gl = lines(grid.out);
  ASSERT_EQ(gl.size(), 6u);
  EXPECT_EQ(gl[0], "t,re,im,tail_bound");
  EXPECT_EQ(fields(gl[1])[1], f[0]);
}

TEST(Cli, FractionsInNumericLists) {
  const auto a = run({"eval", "--spec", "builtin:zq", "--sigma", "1/3", "--t", "7"});
  const auto b = run({"eval", "--spec", "builtin:zq", "--sigma", "0.33333333333333333", "--t", "7"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CsvRoundTrip) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--format", "csv", "levy", "--spec", "builtin:zq", "--sigma", "1/3", "--rmax", "40"},
           {"--format", "csv", "coeffs", "--spec", "builtin:dedekind-qi", "--nmax", "200"},
           {"--format", "csv", "qprofile", "--spec", "builtin:zq", "--sigma", "1/3", "--tmax", "3", "--step", "0.1"},
           {"--format", "csv", "eval", "--spec", "builtin:riemann", "--sigma", "1.5", "--t", "14.1"},
           {"--format", "csv", "sample", "--spec", "builtin:riemann", "--sigma", "2", "--count", "50"}}) {
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_GE(ls.size(), 2u);
    const std::size_t width = fields(ls[0]).size();
    for (std::size_t i = 1; i < ls.size(); ++i) {
      const auto f = fields(ls[i]);
      ASSERT_EQ(f.size(), width) << ls[i];
      for (const auto& x : f) EXPECT_EQ(reprint(x), x);
    }
  }
}

TEST(Cli, StructuredOutput) {
  const auto r = run({"--format", "structured", "classify", "--spec", "builtin:dirichlet-chi4"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "NotCharacteristic");
  EXPECT_EQ(j.at("complete"), true);
  EXPECT_TRUE(j.contains("witness") && j.contains("certified_bounds"));

  const auto g = run({"--format", "structured", "gap", "--spec", "builtin:riemann", "--sigma", "2", "--t1", "1",
                      "--t2", "2", "--kind", "plain"});
  const auto gj = nlohmann::json::parse(g.out);
  EXPECT_GE(gj.at("value").get<double>(), 0.0);

  const auto sp = nlohmann::json::parse(run({"--format", "structured", "specs"}).out);
  EXPECT_EQ(sp.size(), ezeta::builtin_names().size());
}

TEST(Cli, Determinism) {
  const std::vector<std::string> args = {"sample", "--spec", "builtin:riemann", "--sigma", "2", "--count", "200",
                                         "--seed", "9"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  auto other = args;
  other.back() = "10";
  EXPECT_NE(run(other).out, a.out);
  const std::vector<std::string> ecf = {"ecf", "--spec", "builtin:riemann", "--sigma", "2", "--count", "500",
                                        "--tmax", "2", "--step", "0.5"};
  EXPECT_EQ(run(ecf).out, run(ecf).out);
}

TEST(Cli, GlobalFlagsAfterTheSubcommand) {
  EXPECT_EQ(run({"classify", "--spec", "builtin:zq", "--format", "csv"}).out,
            run({"--format", "csv", "classify", "--spec", "builtin:zq"}).out);
}

TEST(Cli, Searches) {
  const auto r = run({"shift-pair", "--spec", "builtin:riemann", "--sigma", "2", "--lambda", "0.3", "--beta", "2",
                      "--t-max", "1000", "--pmax", "20000"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verified=true"), std::string::npos);
  const auto z = run({"shift-pair", "--spec", "builtin:riemann", "--sigma", "2", "--allow-zero", "--pmax", "1000"});
  EXPECT_EQ(z.out.rfind("found=true t=0 difference=0 ", 0), 0u) << z.out;
}

TEST(Cli, Specs) {
  const auto r = run({"specs"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), ezeta::builtin_names());
}

TEST(Cli, Repro) {
  const auto r = run({"repro"});
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  bool all = true;
  for (const auto& l : ls) {
    EXPECT_TRUE(l.rfind("PASS ", 0) == 0 || l.rfind("FAIL ", 0) == 0) << l;
    all &= l.rfind("PASS ", 0) == 0;
  }
  EXPECT_EQ(r.code, all ? 0 : 3);
  EXPECT_EQ(ls[0].rfind("PASS scaled-gap", 0), 0u);
  EXPECT_EQ(ls[2].rfind("PASS q-profile", 0), 0u);
}
