#pragma once
// Command-line front end. run() parses argv, dispatches one subcommand and
// writes to the given streams, so the tests drive it in-process.
//
// Exit codes: 0 success, 1 usage error, 2 invalid spec, domain or parameter,
// 3 search exhausted, verdict undecided or a failed repro check.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ezeta/ezeta.hpp>

namespace ezeta::cli {

enum class Format { Text, Csv, Structured };

inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string join(const std::vector<double>& v, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? std::string(1, sep) : "") + num(v[i]);
  return out;
}

// Rounded to the printed digits so every format carries the same numbers.
inline double rounded(double x) { return std::strtod(num(x).c_str(), nullptr); }

// "builtin:<name>" selects a builtin. Anything else is a file path; a bare
// builtin name is accepted when no file of that name exists.
inline EulerProductSpec load_spec(const std::string& ref) {
  if (ref.rfind("builtin:", 0) == 0) return builtin_spec(ref.substr(8));
  std::ifstream in(ref, std::ios::binary);
  if (!in) {
    try {
      return builtin_spec(ref);
    } catch (const ParameterError&) {
      throw ParameterError("cannot open spec file \"" + ref + "\"");
    }
  }
  std::ostringstream text;
  text << in.rdbuf();
  auto s = parse_spec(text.str());
  if (s.name.empty()) s.name = ref;
  return s;
}

// Ordered key/value output: "k=v ..." as text, a header plus one row as CSV,
// an object when structured.
class Record {
 public:
  Record& add(const std::string& key, double v) {
    items_.push_back({key, num(v), true});
    return *this;
  }
  Record& add(const std::string& key, const std::string& v) {
    items_.push_back({key, v, false});
    return *this;
  }
  Record& add(const std::string& key, bool v) { return add(key, std::string(v ? "true" : "false")); }

  void write(std::ostream& os, Format f) const {
    if (f == Format::Structured) {
      nlohmann::ordered_json j = nlohmann::ordered_json::object();
      for (const auto& it : items_) {
        if (it.numeric)
          j[it.key] = rounded(std::strtod(it.value.c_str(), nullptr));
        else if (it.value == "true" || it.value == "false")
          j[it.key] = it.value == "true";
        else
          j[it.key] = it.value;
      }
      os << j.dump() << '\n';
      return;
    }
    if (f == Format::Csv) {
      for (std::size_t i = 0; i < items_.size(); ++i) os << (i ? "," : "") << items_[i].key;
      os << '\n';
      for (std::size_t i = 0; i < items_.size(); ++i) os << (i ? "," : "") << items_[i].value;
      os << '\n';
      return;
    }
    for (std::size_t i = 0; i < items_.size(); ++i) os << (i ? " " : "") << items_[i].key << '=' << items_[i].value;
    os << '\n';
  }

 private:
  struct Item {
    std::string key, value;
    bool numeric;
  };
  std::vector<Item> items_;
};

// Rows of numbers. Text and CSV print the same comma-separated table.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write(std::ostream& os, Format f) const {
    if (f == Format::Structured) {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& r : rows) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = rounded(r[i]);
        j.push_back(o);
      }
      os << j.dump() << '\n';
      return;
    }
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : rows) os << join(r) << '\n';
  }
};

struct Options {
  std::string format = "text";
  std::uint64_t pmax = 100000;
  unsigned rmax = 60;
  std::uint64_t nmax = 10000;
  std::uint64_t seed = 1;

  std::string spec;
  std::vector<double> sigma, t, t1, t2, lambda, direction;
  std::string method = "product";
  std::string kind = "scaled";
  std::string tgrid;
  int rank = 1;
  std::uint64_t n = 0;
  std::size_t count = 1000;
  double tmin = 0, tmax = 47, step = 0.01, shift = 7;
  double epsilon = 0.05, tau_max = 10000, tau_min = 0, beta = 2;
  bool log = false, allow_zero = false;

  TruncationBounds bounds() const { return {pmax, rmax, nmax}; }
  Format fmt() const {
    return format == "csv" ? Format::Csv : format == "structured" ? Format::Structured : Format::Text;
  }
};

inline EulerProductSpec reduced_if_needed(const EulerProductSpec& s, std::ostream& err) {
  if (s.mode != DependenceMode::IntegerDependent) return s;
  err << "note: integer-dependent spec " << s.name << " reduced to a single rank\n";
  return reduce_integer_dependent(s);
}

// Accepts "p/q" wherever a real is expected.
inline const CLI::Validator& fraction() {
  static const CLI::Validator v(
      [](std::string& in) {
        const auto slash = in.find('/');
        if (slash == std::string::npos) return std::string();
        try {
          std::size_t a = 0, b = 0;
          const double p = std::stod(in.substr(0, slash), &a), q = std::stod(in.substr(slash + 1), &b);
          if (a != slash || b != in.size() - slash - 1 || q == 0) return "invalid fraction " + in;
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.17g", p / q);
          in = buf;
        } catch (const std::exception&) {
          return "invalid fraction " + in;
        }
        return std::string();
      },
      "REAL or P/Q");
  return v;
}

inline std::vector<double> zeros_like(const std::vector<double>& v) { return std::vector<double>(v.size(), 0.0); }

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_eval(const Options& o, std::ostream& out) {
  const auto s = load_spec(o.spec);
  const auto b = o.bounds();
  const PreparedProduct prep(s, b.prime_cutoff);
  auto value = [&](const std::vector<double>& t) -> std::pair<std::complex<double>, double> {
    const EvalPoint pt{o.sigma, t};
    if (o.method == "series") return {eval_series(s, pt, b.coefficient_cutoff), series_tail_bound(s, o.sigma, b.coefficient_cutoff)};
    if (o.method == "log") return {prep.log_series(pt, b.power_cutoff), prep.tail_bound(o.sigma, b.power_cutoff)};
    const auto z = prep.product(pt);
    return {z, std::abs(z) * std::expm1(prep.tail_bound(o.sigma, 400))};
  };
  if (o.method != "product" && o.method != "series" && o.method != "log")
    throw ParameterError("unknown method \"" + o.method + "\"");

  if (!o.tgrid.empty()) {
    double lo = 0, hi = 0, st = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(o.tgrid);
    if (!(in >> lo >> c1 >> hi >> c2 >> st) || c1 != ':' || c2 != ':')
      throw ParameterError("t grid must be written tmin:tmax:step");
    Table tab{{"t", "re", "im", "tail_bound"}, {}};
    for (double t : make_grid(lo, hi, st)) {
      auto tv = zeros_like(o.sigma);
      tv[0] = t;
      const auto [z, tail] = value(tv);
      tab.rows.push_back({t, z.real(), z.imag(), tail});
    }
    tab.write(out, o.fmt() == Format::Structured ? Format::Structured : Format::Csv);
    return 0;
  }
  const auto t = o.t.empty() ? zeros_like(o.sigma) : o.t;
  const auto [z, tail] = value(t);
  if (o.fmt() == Format::Text)
    out << num(z.real()) << ' ' << num(z.imag()) << ' ' << num(tail) << '\n';
  else
    Record().add("re", z.real()).add("im", z.imag()).add("tail_bound", tail).write(out, o.fmt());
  return 0;
}

inline int cmd_coeffs(const Options& o, std::ostream& out) {
  const auto s = load_spec(o.spec);
  if (o.rank < 1 || o.rank > s.phi) throw ParameterError("rank must lie in 1.." + std::to_string(s.phi));
  const auto tab = dirichlet_coefficients(s, o.rank - 1, o.nmax);
  if (o.fmt() == Format::Structured) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (std::uint64_t n = 1; n <= o.nmax; ++n) {
      nlohmann::ordered_json e = {{"n", n}, {"re", rounded(tab.values[n].real())}, {"im", rounded(tab.values[n].imag())},
                                  {"exact", tab.exact}};
      if (tab.exact) e["value"] = tab.exact_values[n].str();
      j.push_back(e);
    }
    out << j.dump() << '\n';
    return 0;
  }
  out << "n,re,im,exact\n";
  for (std::uint64_t n = 1; n <= o.nmax; ++n)
    out << n << ',' << num(tab.values[n].real()) << ',' << num(tab.values[n].imag()) << ',' << (tab.exact ? 1 : 0) << '\n';
  return 0;
}

inline std::string witness_text(const ClassificationVerdict& v, int phi) {
  const auto rank = [&](int l) { return phi > 1 ? ",l:" + std::to_string(l + 1) : std::string(); };
  if (v.coefficient_witness) {
    const auto& w = *v.coefficient_witness;
    const std::string n = w.n ? std::to_string(w.n) : std::to_string(w.p) + "^" + std::to_string(w.exponent);
    return "n:" + n + rank(w.rank) + ",a:" + w.value.str();
  }
  if (v.power_witness) {
    const auto& w = *v.power_witness;
    return "p:" + std::to_string(w.p) + ",r:" + std::to_string(w.r) + rank(w.rank) + ",s:" + w.value.str();
  }
  return "none";
}

inline int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
  const auto s = reduced_if_needed(load_spec(o.spec), err);
  const auto v = classify(s, o.bounds());
  const std::string bounds = "P:" + std::to_string(v.certified.prime_cutoff) + ",R:" +
                             std::to_string(v.certified.power_cutoff) + ",N:" +
                             std::to_string(v.certified.coefficient_cutoff);
  Record r;
  r.add("verdict", to_string(v.verdict)).add("witness", witness_text(v, s.phi)).add("certified_bounds", bounds);
  r.add("complete", v.complete);
  if (!v.note.empty()) r.add("note", v.note);
  r.write(out, o.fmt());
  return v.verdict == Verdict::Undecided ? 3 : 0;
}

inline int cmd_levy(const Options& o, std::ostream& out, std::ostream& err) {
  const auto s = reduced_if_needed(load_spec(o.spec), err);
  const auto m = build_quasi_levy(s, o.sigma, o.bounds());
  Table tab;
  tab.columns = {"p", "r", "l"};
  for (int d = 1; d <= s.dimension; ++d) tab.columns.push_back("x_" + std::to_string(d));
  tab.columns.push_back("re_w");
  tab.columns.push_back("im_w");
  for (const auto& a : m.atoms) {
    std::vector<double> row{static_cast<double>(a.p), static_cast<double>(a.r), static_cast<double>(a.rank + 1)};
    row.insert(row.end(), a.x.begin(), a.x.end());
    row.push_back(a.weight.real());
    row.push_back(a.weight.imag());
    tab.rows.push_back(std::move(row));
  }
  tab.write(out, o.fmt());
  const auto tv = total_variation(m);
  err << "total_variation=" << num(tv.value) << " bound=" << num(tv.bound)
      << " within_bound=" << (tv.within_bound ? "true" : "false") << '\n';
  return 0;
}

inline SupportAtomTable sample_table(const Options& o, const EulerProductSpec& s) {
  return build_pmf(s, o.sigma, o.n ? o.n : 1000000, o.pmax);
}

inline int cmd_sample(const Options& o, std::ostream& out, std::ostream& err) {
  const auto s = reduced_if_needed(load_spec(o.spec), err);
  const auto pts = draw(sample_table(o, s), o.seed, o.count);
  Table tab;
  for (int d = 1; d <= s.dimension; ++d) tab.columns.push_back("x_" + std::to_string(d));
  tab.rows = pts;
  tab.write(out, o.fmt());
  return 0;
}

inline int cmd_ecf(const Options& o, std::ostream& out, std::ostream& err) {
  const auto s = reduced_if_needed(load_spec(o.spec), err);
  const auto pts = draw(sample_table(o, s), o.seed, o.count);
  const PreparedProduct prep(s, o.pmax);
  const auto z0 = prep.product(make_point(o.sigma));
  Table tab{{"t", "re_empirical", "im_empirical", "re_exact", "im_exact", "abs_diff"}, {}};
  for (double t : make_grid(o.tmin, o.tmax, o.step)) {
    auto tv = zeros_like(o.sigma);
    tv[0] = t;
    const auto e = empirical_cf(pts, tv);
    const auto f = prep.product({o.sigma, tv}) / z0;
    tab.rows.push_back({t, e.real(), e.imag(), f.real(), f.imag(), std::abs(e - f)});
  }
  tab.write(out, o.fmt());
  return 0;
}

inline int cmd_gap(const Options& o, std::ostream& out) {
  const auto s = load_spec(o.spec);
  const auto g = gap(parse_gap_kind(o.kind), s, o.sigma, o.t1, o.t2, o.bounds());
  Record().add("kind", to_string(g.kind)).add("value", g.value).add("tail", g.tail).write(out, o.fmt());
  return 0;
}

inline int cmd_qprofile(const Options& o, std::ostream& out) {
  const auto s = load_spec(o.spec);
  const auto q = q_profile(s, o.sigma, o.shift, make_grid(o.tmin, o.tmax, o.step), parse_gap_kind(o.kind), o.bounds(),
                           o.direction);
  Table tab{{"t", "Q"}, {}};
  for (const auto& p : q.points) tab.rows.push_back({p.t, p.q});
  tab.write(out, o.fmt());
  return 0;
}

inline SearchOptions search_options(const Options& o) {
  SearchOptions so;
  so.epsilon = o.epsilon;
  so.t_max = o.tau_max;
  so.t_min = o.tau_min;
  so.step = o.step;
  so.log = o.log;
  so.allow_zero = o.allow_zero;
  so.prime_cutoff = o.pmax;
  return so;
}

inline int write_search(const std::optional<SearchResult>& r, const std::string& name, const Options& o,
                        std::ostream& out) {
  if (!r) {
    Record().add("found", false).add("t_max", o.tau_max).write(out, o.fmt());
    return 3;
  }
  Record()
      .add("found", true)
      .add(name, r->t)
      .add("difference", r->difference)
      .add("verified_difference", r->verified_difference)
      .add("tail", r->tail)
      .add("verified", r->verified)
      .write(out, o.fmt());
  return r->verified ? 0 : 3;
}

inline int cmd_almost_period(const Options& o, std::ostream& out) {
  const auto s = load_spec(o.spec);
  return write_search(almost_period_search(s, o.sigma, search_options(o), o.direction), "tau", o, out);
}

inline int cmd_shift_pair(const Options& o, std::ostream& out) {
  const auto s = load_spec(o.spec);
  const auto lambda = o.lambda.empty() ? zeros_like(o.sigma) : o.lambda;
  return write_search(shifted_pair_search(s, o.sigma, lambda, o.beta, search_options(o), o.direction), "t", o, out);
}

struct ReproCheck {
  std::string name;
  bool pass;
  std::string detail;
};

inline std::vector<ReproCheck> repro_checks() {
  std::vector<ReproCheck> out;
  const auto chi = builtin_spec("dirichlet-chi4");
  const TruncationBounds b{2000000, 60, 1};
  const auto g1 = scaled_gap(chi, {1.5}, {19.3}, {82.9}, b);
  out.push_back({"scaled-gap", std::abs(g1.value - -0.205831) <= 5e-3,
                 "value=" + num(g1.value) + " expected=-0.205831 tolerance=0.005"});
  const auto g2 = log_gap(chi, {1.5}, {19.3}, {82.9}, b);
  out.push_back({"log-gap", std::abs(g2.value - -0.16818) <= 1e-3,
                 "value=" + num(g2.value) + " expected=-0.16818 tolerance=0.001"});
  const auto grid = make_grid(0, 47, 0.01);
  const auto zq = builtin_spec("zq");
  const TruncationBounds bz{1000, 300, 1};
  const double qmin = q_profile(zq, {1.0 / 3}, 7, grid, GapKind::Log, bz).minimum();
  const double pmin = q_profile(zq, {1.0 / 3}, 7, grid, GapKind::Plain, bz).minimum();
  out.push_back({"q-profile", qmin < 0 && pmin >= -1e-9,
                 "min_log=" + num(qmin) + " min_plain=" + num(pmin) + " expected=min_log<0,min_plain>=-1e-09"});
  return out;
}

inline int cmd_repro(const Options&, std::ostream& out) {
  bool all = true;
  for (const auto& c : repro_checks()) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ' ' << c.detail << '\n';
    all &= c.pass;
  }
  return all ? 0 : 3;
}

inline int cmd_specs(const Options& o, std::ostream& out) {
  if (o.fmt() == Format::Structured) {
    out << nlohmann::json(builtin_names()).dump() << '\n';
    return 0;
  }
  for (const auto& n : builtin_names()) out << n << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial Euler products: evaluation, classification, measures and searches", "ezeta"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "csv", "structured"}));
  app.add_option("--pmax", o.pmax, "Prime cutoff P");
  app.add_option("--rmax", o.rmax, "Power cutoff R");
  app.add_option("--nmax", o.nmax, "Coefficient cutoff N");
  app.add_option("--seed", o.seed, "Random seed");

  auto spec = [&](CLI::App* c) { c->add_option("--spec", o.spec, "builtin:<name> or a spec file")->required(); };
  auto sigma = [&](CLI::App* c) { c->add_option("--sigma", o.sigma, "Real part, comma list")->delimiter(',')->transform(fraction())->required(); };
  auto direction = [&](CLI::App* c) {
    c->add_option("--direction", o.direction, "Unit direction for the t axis, comma list")->delimiter(',')->transform(fraction());
  };

  auto* eval = app.add_subcommand("eval", "Evaluate Z at sigma + i t");
  spec(eval);
  sigma(eval);
  eval->add_option("--t", o.t, "Imaginary part, comma list")->delimiter(',')->transform(fraction());
  eval->add_option("--t-grid", o.tgrid, "tmin:tmax:step along the first coordinate (CSV output)");
  eval->add_option("--method", o.method, "product, series or log")->check(CLI::IsMember({"product", "series", "log"}));

  auto* coeffs = app.add_subcommand("coeffs", "Dirichlet coefficients a_l(1..N) as CSV");
  spec(coeffs);
  coeffs->add_option("--rank", o.rank, "1-based rank l");

  auto* cls = app.add_subcommand("classify", "Classify the normalized function");
  spec(cls);

  auto* levy = app.add_subcommand("levy", "Atoms of the quasi-Levy measure as CSV");
  spec(levy);
  sigma(levy);

  auto* sample = app.add_subcommand("sample", "Draw points from the induced distribution");
  spec(sample);
  sigma(sample);
  sample->add_option("--n", o.n, "Coefficient cutoff of the table (default 10^6)");
  sample->add_option("--count", o.count, "Number of draws");

  auto* ecf = app.add_subcommand("ecf", "Empirical against exact characteristic function on a t grid");
  spec(ecf);
  sigma(ecf);
  ecf->add_option("--n", o.n, "Coefficient cutoff of the table (default 10^6)");
  ecf->add_option("--count", o.count, "Number of draws");
  ecf->add_option("--tmin", o.tmin);
  ecf->add_option("--tmax", o.tmax);
  ecf->add_option("--step", o.step);

  auto* gp = app.add_subcommand("gap", "Gap of the value-distribution inequalities");
  spec(gp);
  sigma(gp);
  gp->add_option("--kind", o.kind, "plain, scaled or log")->check(CLI::IsMember({"plain", "scaled", "log"}));
  gp->add_option("--t1", o.t1)->delimiter(',')->transform(fraction())->required();
  gp->add_option("--t2", o.t2)->delimiter(',')->transform(fraction())->required();

  auto* qp = app.add_subcommand("qprofile", "Q(t) on a grid as CSV");
  spec(qp);
  sigma(qp);
  qp->add_option("--shift", o.shift)->transform(fraction());
  qp->add_option("--tmin", o.tmin);
  qp->add_option("--tmax", o.tmax);
  qp->add_option("--step", o.step);
  qp->add_option("--kind", o.kind, "log or plain")->check(CLI::IsMember({"plain", "log"}));
  direction(qp);

  auto search_flags = [&](CLI::App* c, const char* tmax_name, const char* tmin_name) {
    spec(c);
    sigma(c);
    direction(c);
    c->add_option("--epsilon", o.epsilon);
    c->add_option(tmax_name, o.tau_max);
    c->add_option(tmin_name, o.tau_min);
    c->add_option("--step", o.step);
    c->add_flag("--log", o.log, "Compare log Z");
    c->add_flag("--allow-zero", o.allow_zero, "Include the grid point 0");
  };
  auto* ap = app.add_subcommand("almost-period", "Search tau with |Z(s + i tau) - Z(s)| < epsilon");
  search_flags(ap, "--tau-max", "--tau-min");
  auto* sp = app.add_subcommand("shift-pair", "Search t with |Z(s + i lambda + i beta t) - Z(s + i t)| < epsilon");
  search_flags(sp, "--t-max", "--t-min");
  sp->add_option("--lambda", o.lambda)->delimiter(',')->transform(fraction());
  sp->add_option("--beta", o.beta);

  auto* repro = app.add_subcommand("repro", "Recompute the reference gap constants and the Q-profile sign");
  auto* specs = app.add_subcommand("specs", "List builtin specs");

  if (o.kind.empty()) o.kind = "scaled";
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  if (qp->parsed() && qp->count("--kind") == 0) o.kind = "log";

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (coeffs->parsed()) return cmd_coeffs(o, out);
    if (cls->parsed()) return cmd_classify(o, out, err);
    if (levy->parsed()) return cmd_levy(o, out, err);
    if (sample->parsed()) return cmd_sample(o, out, err);
    if (ecf->parsed()) return cmd_ecf(o, out, err);
    if (gp->parsed()) return cmd_gap(o, out);
    if (qp->parsed()) return cmd_qprofile(o, out);
    if (ap->parsed()) return cmd_almost_period(o, out);
    if (sp->parsed()) return cmd_shift_pair(o, out);
    if (repro->parsed()) return cmd_repro(o, out);
    if (specs->parsed()) return cmd_specs(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace ezeta::cli
