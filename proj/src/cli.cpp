#include "irr/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "irr/asymptotics.hpp"
#include "irr/classfile.hpp"
#include "irr/gallery.hpp"

namespace irr {
namespace {

enum class Format { Table, Csv };

struct Options {
  std::string gallery, file;
  std::string tiles, alpha, beta, gamma;
  std::vector<std::string> params;
  std::string out;
  std::string format = "table";
  double tol = 1e-12;
  double sample_window = 8;
  bool force = false;

  std::string window, x, xs, variant = "corrected";
  std::string family, betas, gammas;
  unsigned threads = 0;
  std::string x0 = "30";
  int samples = 64;
  double t0 = 0, t1 = 20, mu = 0;
  int points = 201;
  bool mu_given = false;
};

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<std::string>> rows;

  void print(std::ostream& os, Format f) const {
    if (f == Format::Csv) {
      auto line = [&](const std::vector<std::string>& r) {
        for (size_t i = 0; i < r.size(); ++i) {
          if (i) os << ',';
          if (r[i].find_first_of(",\"") != std::string::npos) {
            os << '"';
            for (char c : r[i]) os << (c == '"' ? "\"\"" : std::string(1, c));
            os << '"';
          } else {
            os << r[i];
          }
        }
        os << '\n';
      };
      line(cols);
      for (auto& r : rows) line(r);
      return;
    }
    std::vector<size_t> w(cols.size());
    for (size_t i = 0; i < cols.size(); ++i) w[i] = cols[i].size();
    for (auto& r : rows)
      for (size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
      for (size_t i = 0; i < r.size(); ++i) {
        if (i) os << "  ";
        os << r[i];
        if (i + 1 < r.size()) os << std::string(w[i] - r[i].size(), ' ');
      }
      os << '\n';
    };
    line(cols);
    for (auto& r : rows) line(r);
  }
};

std::string num(double v, int digits = 12) {
  std::ostringstream ss;
  ss << std::setprecision(digits) << v;
  return ss.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text + ",") {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      size_t a = cur.find_first_not_of(' '), b = cur.find_last_not_of(' ');
      if (a == std::string::npos) fail(Errc::ParseError, "empty entry in list '" + text + "'");
      out.push_back(cur.substr(a, b - a + 1));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  return out;
}

double real_hi(const std::string& text) { return parse_real(text).eval(64).hi_d(); }

GalleryClass load(const Options& o, double max_size) {
  if (o.gallery.empty() == o.file.empty()) fail(Errc::InvalidArgument, "give exactly one of --gallery and --file");
  max_size = std::max(max_size + 1e-6, 1.0);
  if (!o.gallery.empty()) {
    GalleryParams p;
    p.max_size = max_size;
    if (!o.tiles.empty()) p.set("tiles", o.tiles);
    if (!o.alpha.empty()) p.set("alpha", o.alpha);
    if (!o.beta.empty()) p.set("beta", o.beta);
    if (!o.gamma.empty()) p.set("gamma", o.gamma);
    for (auto& kv : o.params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) fail(Errc::InvalidArgument, "--param expects key=value, got '" + kv + "'");
      p.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return gallery(o.gallery, p);
  }
  ClassFile cf = parse_class_file(o.file, max_size);
  GalleryClass g;
  g.name = o.file;
  g.description = "class file " + o.file;
  g.basis = cf.basis;
  g.cls = cf.cls;
  g.max_size = max_size;
  g.form = derive_form(cf.cls);
  return g;
}

// Primitivity gate for commands that apply the asymptotic law.
PrimitivityVerdict gate(const GalleryClass& g, const Options& o) {
  PrimitivityVerdict v = primitivity(g, o.sample_window);
  if (o.force) return v;
  if (v.kind == VerdictKind::NotPrimitive)
    fail(Errc::NotPrimitive, g.name + ": dominant factor " + v.witness + " has evenly spaced poles (use --force to override)");
  if (v.kind == VerdictKind::Unknown)
    fail(Errc::UnknownPrimitivity, g.name + ": " + v.reason + " (use --force to override)");
  return v;
}

Table cmd_expand(const Options& o) {
  if (o.window.empty()) fail(Errc::InvalidArgument, "expand needs --window");
  GalleryClass g = load(o, real_hi(o.window));
  Bound w = Bound::parse(g.basis, o.window);
  IntSeries f = expand(g.cls, g.basis, w);
  Table t{{"exponent", "value_lo", "value_hi", "count"}, {}};
  for (auto& term : f.terms()) {
    Interval v = value(term.e, 128);
    t.rows.push_back({term.e.is_zero() ? "0" : term.e.str(), v.lo_str(), v.hi_str(), term.c.get_str()});
  }
  return t;
}

Table cmd_count(const Options& o) {
  if (o.x.empty()) fail(Errc::InvalidArgument, "count needs --x");
  std::string wtext = o.window.empty() ? o.x : o.window;
  GalleryClass g = load(o, real_hi(wtext));
  Bound x = Bound::parse(g.basis, o.x);
  Bound w = Bound::parse(g.basis, wtext);
  IntSeries f = expand(g.cls, g.basis, w);
  mpz_class cum = cumulative(f, x);
  mpz_class below = cumulative_strict(f, x);
  return Table{{"x", "exact", "cumulative"}, {{o.x, mpz_class(cum - below).get_str(), cum.get_str()}}};
}

Table cmd_asymptote(const Options& o) {
  GalleryClass g = load(o, o.sample_window);
  PrimitivityVerdict v = gate(g, o);
  if (!g.form) fail(Errc::UnknownPrimitivity, g.name + ": no symbolic form for singularity analysis");
  SingularityModel m = analyze(*g.form, o.tol);
  Table t{{"quantity", "lo", "hi"}, {}};
  auto row = [&](const std::string& k, const std::string& a, const std::string& b = "") { t.rows.push_back({k, a, b}); };
  auto iv = [&](const std::string& k, const Interval& x) { row(k, x.lo_str(), x.hi_str()); };
  row("class", g.name);
  row("verdict", verdict_name(v.kind), v.rule.empty() ? v.witness : v.rule);
  row("singularity", m.label, m.branch ? "branch" : "pole");
  iv("rho", m.rho);
  iv("growth", m.growth);
  row("alpha", rat_str(m.alpha), rat_str(m.alpha));
  iv("h", m.h);
  iv("C", m.C);
  if (v.kind == VerdictKind::RationalPeriodic) {
    iv("omega", value(*v.omega, 128));
    if (v.delta)
      iv("delta", value(*v.delta, 128));
    else
      row("delta", "0", "0");
  }
  for (auto& [name, mk] : g.markers) {
    try {
      iv("slope[" + name + "]", expectation_slope(*g.form, mk, m));
    } catch (const Error& e) {
      row("slope[" + name + "]", errc_name(e.code()));
    }
  }
  return t;
}

Table cmd_compare(const Options& o) {
  if (o.xs.empty()) fail(Errc::InvalidArgument, "compare needs --x");
  std::vector<std::string> xs = split_list(o.xs);
  double top = 0;
  for (auto& s : xs) top = std::max(top, real_hi(s));
  GalleryClass g = load(o, top);
  PrimitivityVerdict v = gate(g, o);
  if (!g.form) fail(Errc::UnknownPrimitivity, g.name + ": no symbolic form for singularity analysis");
  SingularityModel m = analyze(*g.form, o.tol);
  RationalVariant var;
  if (o.variant == "corrected")
    var = RationalVariant::Corrected;
  else if (o.variant == "printed")
    var = RationalVariant::Printed;
  else
    fail(Errc::InvalidArgument, "--variant is corrected or printed");
  std::vector<Bound> bounds;
  for (auto& s : xs) bounds.push_back(Bound::parse(g.basis, s));
  Bound w = bounds.front();
  for (auto& b : bounds)
    if (b.hi() > w.hi()) w = b;
  IntSeries f = expand(g.cls, g.basis, w);
  Table t{{"x", "count", "predict_lo", "predict_hi", "ratio"}, {}};
  for (size_t i = 0; i < xs.size(); ++i) {
    mpz_class c = cumulative(f, bounds[i]);
    Interval p = v.kind == VerdictKind::RationalPeriodic ? rational_predict(*v.omega, v.delta, m, bounds[i], var)
                                                         : predict(m, bounds[i].eval(m.bits));
    double ratio = (Interval::from_z(c, m.bits) / p).mid_d();
    t.rows.push_back({xs[i], c.get_str(), p.lo_str(), p.hi_str(), num(ratio)});
  }
  return t;
}

Table cmd_sweep(const Options& o) {
  if (o.family.empty() || o.betas.empty() || o.gammas.empty()) fail(Errc::InvalidArgument, "sweep needs --family, --betas and --gammas");
  std::vector<std::pair<std::string, std::string>> grid;
  for (auto& b : split_list(o.betas))
    for (auto& c : split_list(o.gammas)) grid.emplace_back(b, c);
  auto rows = phase_sweep(o.family, grid, o.tol, o.threads);
  Table t{{"beta", "gamma", "phase", "rho_lo", "rho_hi", "alpha", "C_lo", "C_hi"}, {}};
  for (auto& r : rows)
    t.rows.push_back({r.beta, r.gamma, r.phase, r.model.rho.lo_str(), r.model.rho.hi_str(), rat_str(r.model.alpha), r.model.C.lo_str(),
                      r.model.C.hi_str()});
  return t;
}

Table cmd_oscillate(const Options& o, Format fmt) {
  RealExpr x0e = parse_real(o.x0);
  if (!x0e.is_rational()) fail(Errc::BadParameter, "--x0 must be rational");
  mpq_class x0 = x0e.rational_part();
  GalleryClass g = load(o, x0.get_d() + 1);
  auto rows = oscillation_profile(g, x0, o.samples, std::min(o.tol, 1e-6));
  Table t;
  if (fmt == Format::Csv)
    t.cols = {"x", "c_empirical", "c_closed"};
  else
    t.cols = {"x", "c_empirical_lo", "c_empirical_hi", "c_closed_lo", "c_closed_hi", "tail_bound"};
  for (auto& r : rows) {
    if (fmt == Format::Csv)
      t.rows.push_back({rat_str(r.x), num(r.empirical.mid_d(), 17), num(r.closed.mid_d(), 17)});
    else
      t.rows.push_back({rat_str(r.x), r.empirical.lo_str(), r.empirical.hi_str(), r.closed.lo_str(), r.closed.hi_str(), num(r.tail, 6)});
  }
  return t;
}

Table cmd_dgf(const Options& o) {
  if (o.window.empty()) fail(Errc::InvalidArgument, "dgf-scan needs --window");
  GalleryClass g = load(o, real_hi(o.window));
  double mu = o.mu;
  if (!o.mu_given) {
    if (!g.form) fail(Errc::UnknownPrimitivity, "no symbolic form; give --mu");
    mu = (-log(analyze(*g.form, o.tol).rho)).mid_d();
  }
  IntSeries f = expand(g.cls, g.basis, Bound::parse(g.basis, o.window));
  Table t{{"t", "magnitude"}, {}};
  for (auto& s : dgf_scan(f, mu, o.t0, o.t1, o.points)) t.rows.push_back({num(s.t), num(s.magnitude)});
  return t;
}

Table cmd_list() {
  Table t{{"name", "parameters"}, {}};
  for (auto& e : gallery_table()) t.rows.push_back({e.name, e.params});
  return t;
}

void add_source(CLI::App* s, Options& o) {
  s->add_option("--gallery", o.gallery, "gallery class name");
  s->add_option("--file", o.file, "class definition file");
  s->add_option("--tiles", o.tiles, "tile lengths, comma separated");
  s->add_option("--alpha", o.alpha, "parameter alpha");
  s->add_option("--beta", o.beta, "parameter beta");
  s->add_option("--gamma", o.gamma, "parameter gamma");
  s->add_option("--param", o.params, "other gallery parameter key=value");
}

void add_output(CLI::App* s, Options& o) {
  s->add_option("--out", o.out, "write the result to this file");
  s->add_option("--format", o.format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"irr: counting and asymptotics for classes with irrational sizes", "irr"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto* expand_c = app.add_subcommand("expand", "list the terms of the generating function up to a window");
  add_source(expand_c, o);
  add_output(expand_c, o);
  expand_c->add_option("--window", o.window, "window (constant expression)");

  auto* count_c = app.add_subcommand("count", "exact and cumulative counts at x");
  add_source(count_c, o);
  add_output(count_c, o);
  count_c->add_option("--x", o.x, "size (constant expression)");
  count_c->add_option("--window", o.window, "expansion window (default: x)");

  auto* asym_c = app.add_subcommand("asymptote", "dominant singularity and asymptotic law");
  add_source(asym_c, o);
  add_output(asym_c, o);
  asym_c->add_option("--tol", o.tol, "root tolerance");
  asym_c->add_option("--sample-window", o.sample_window, "window used to sample the size set");
  asym_c->add_flag("--force", o.force, "report even without a primitivity certificate");

  auto* cmp_c = app.add_subcommand("compare", "oracle counts against the asymptotic law");
  add_source(cmp_c, o);
  add_output(cmp_c, o);
  cmp_c->add_option("--x", o.xs, "sizes, comma separated");
  cmp_c->add_option("--tol", o.tol, "root tolerance");
  cmp_c->add_option("--variant", o.variant, "periodic law variant: corrected or printed");
  cmp_c->add_option("--sample-window", o.sample_window, "window used to sample the size set");
  cmp_c->add_flag("--force", o.force, "compare even without a primitivity certificate");

  auto* sweep_c = app.add_subcommand("sweep", "phase classification over a (beta, gamma) grid");
  add_output(sweep_c, o);
  sweep_c->add_option("--family", o.family, "y-tilings, forests-f or grounded-dyck");
  sweep_c->add_option("--betas", o.betas, "beta values, comma separated");
  sweep_c->add_option("--gammas", o.gammas, "gamma values, comma separated");
  sweep_c->add_option("--tol", o.tol, "root tolerance");
  sweep_c->add_option("--threads", o.threads, "worker threads (0: hardware)");

  auto* osc_c = app.add_subcommand("oscillate", "empirical and closed-form oscillation profile c(x)");
  add_source(osc_c, o);
  add_output(osc_c, o);
  osc_c->add_option("--x0", o.x0, "start of the sampled unit interval (rational)");
  osc_c->add_option("--samples", o.samples, "grid points");
  osc_c->add_option("--tol", o.tol, "truncation tolerance of the closed form");

  auto* dgf_c = app.add_subcommand("dgf-scan", "|truncated Dirichlet series| along Re s = mu");
  add_source(dgf_c, o);
  add_output(dgf_c, o);
  dgf_c->add_option("--window", o.window, "truncation window");
  auto* mu_opt = dgf_c->add_option("--mu", o.mu, "abscissa (default: log(1/rho))");
  dgf_c->add_option("--t0", o.t0, "first t");
  dgf_c->add_option("--t1", o.t1, "last t");
  dgf_c->add_option("--n", o.points, "number of points");
  dgf_c->add_option("--tol", o.tol, "root tolerance");

  auto* list_c = app.add_subcommand("gallery-list", "list gallery classes");
  add_output(list_c, o);

  try {
    if (const char* cap = std::getenv("IRR_PRECISION_CAP")) {
      char* end = nullptr;
      long bits = std::strtol(cap, &end, 10);
      if (end == cap || *end != '\0' || bits < 64) fail(Errc::BadParameter, "IRR_PRECISION_CAP must be an integer >= 64");
      set_precision_cap(bits);
    } else {
      set_precision_cap(kDefaultPrecisionCap);
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      fail(Errc::InvalidArgument, e.what());
    }
    o.mu_given = mu_opt->count() > 0;
    if (!(o.tol > 0)) fail(Errc::InvalidArgument, "--tol must be positive");
    Format fmt = o.format == "csv" ? Format::Csv : Format::Table;

    Table t;
    if (expand_c->parsed())
      t = cmd_expand(o);
    else if (count_c->parsed())
      t = cmd_count(o);
    else if (asym_c->parsed())
      t = cmd_asymptote(o);
    else if (cmp_c->parsed())
      t = cmd_compare(o);
    else if (sweep_c->parsed())
      t = cmd_sweep(o);
    else if (osc_c->parsed())
      t = cmd_oscillate(o, fmt);
    else if (dgf_c->parsed())
      t = cmd_dgf(o);
    else
      t = cmd_list();

    if (!o.out.empty()) {
      std::ofstream f(o.out);
      if (!f) fail(Errc::IoError, "cannot write " + o.out);
      t.print(f, fmt);
      if (!f) fail(Errc::IoError, "write failed: " + o.out);
    } else {
      t.print(out, fmt);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return errc_exit_code(e.code());
  } catch (const std::bad_alloc&) {
    err << "error: " << errc_name(Errc::Internal) << ": out of memory\n";
    return errc_exit_code(Errc::Internal);
  } catch (const std::exception& e) {
    err << "error: " << errc_name(Errc::Internal) << ": " << e.what() << '\n';
    return errc_exit_code(Errc::Internal);
  }
}

}  // namespace irr
