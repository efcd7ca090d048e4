#pragma once

// Singularity analysis: dominant singularity location and type, the
// asymptotic law |C_{<=x}| ~ C rho^{-x} x^{alpha-1}, primitivity verdicts,
// expectations, and the periodic/oscillating variants.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "irr/classes.hpp"
#include "irr/error.hpp"
#include "irr/exponents.hpp"
#include "irr/forms.hpp"
#include "irr/gallery.hpp"
#include "irr/interval.hpp"
#include "irr/numeric.hpp"
#include "irr/series.hpp"

namespace irr {

// ---------------------------------------------------------------------------
// Special values

// Gamma at integers and half-integers outside -N.
inline Interval gamma_eval(const mpq_class& a, long bits = 128) {
  mpq_class twice = a * 2;
  if (twice.get_den() != 1) fail(Errc::UnsupportedAlpha, "Gamma(" + rat_str(a) + "): only integers and half-integers");
  if (a.get_den() == 1 && a <= 0) fail(Errc::UnsupportedAlpha, "Gamma has a pole at " + rat_str(a));
  if (abs(a) > 400) fail(Errc::UnsupportedAlpha, "Gamma argument too large: " + rat_str(a));
  bool half = a.get_den() != 1;
  mpq_class base = half ? mpq_class(1, 2) : mpq_class(1);
  Interval g = half ? square_root_pi(bits) : Interval::from_si(1, bits);
  mpq_class cur = base;
  while (cur < a) {
    g = g * Interval::from_q(cur, bits);
    cur += 1;
  }
  while (cur > a) {
    cur -= 1;
    g = g / Interval::from_q(cur, bits);
  }
  return g;
}

// (log(1/(1-rho)) + log log(1/rho)) / log(1/rho)
inline Interval delta_rho(const Interval& rho) {
  long bits = std::max<long>(rho.prec(), 64);
  Interval one = Interval::from_si(1, bits);
  if (!rho.pos() || !(one - rho).pos()) fail(Errc::BadParameter, "delta_rho needs 0 < rho < 1");
  Interval L = -log(rho);
  return (-log(one - rho) + log(L)) / L;
}

// Riemann zeta for real s > 1 with certified tails.
inline Interval zeta(const Interval& s, double tol = 1e-15) {
  long bits = std::max<long>(s.prec(), 64 + static_cast<long>(-std::log2(tol)));
  EvalCtx ctx{bits, tol / 4};
  Interval z = exp(-s.with_prec(bits));
  return Interval::from_si(1, bits) + ffamily(FamilyKind::LogIntegers, 2)->value(z, ctx);
}
inline Interval zeta_deriv(const Interval& s, double tol = 1e-15) {
  long bits = std::max<long>(s.prec(), 64 + static_cast<long>(-std::log2(tol)));
  EvalCtx ctx{bits, tol / 4};
  Interval z = exp(-s.with_prec(bits));
  return -ffamily(FamilyKind::LogIntegers, 2)->eval(z, ctx).t;
}
// Real root s > 1 of zeta(s) = target.
inline Interval zeta_solve(const mpq_class& target, double tol) {
  if (target <= 1) fail(Errc::BadParameter, "zeta(s) = target needs target > 1");
  FuncPtr F = fconst(target - 1) - ffamily(FamilyKind::LogIntegers, 2);
  RootResult r = find_root(*F, tol / 8);
  return -log(r.rho);
}

// ---------------------------------------------------------------------------
// Singularity model

struct SingularityModel {
  Interval rho;
  mpq_class alpha = 1;
  Interval h;
  Interval C;
  Interval growth;
  bool branch = false;
  std::vector<int> dominant;  // indices into SingularForm::poles
  std::string label;
  long bits = 128;
};

inline RootResult find_rho(const Func& F, double tol) { return find_root(F, tol); }

namespace detail {

inline bool same_terms(const PoleFactor& a, const PoleFactor& b) {
  if (a.terms.empty() || a.terms.size() != b.terms.size()) return false;
  for (auto& [c, e] : a.terms) {
    bool hit = false;
    for (auto& [c2, e2] : b.terms)
      if (c == c2 && e == e2) hit = true;
    if (!hit) return false;
  }
  return true;
}

struct Candidate {
  bool branch = false;
  std::vector<int> poles;  // merged, exactly equal factors
  FuncPtr locator;         // root of this function
  RootResult root;
};

}  // namespace detail

inline SingularityModel analyze(const SingularForm& form, double tol) {
  if (!(tol > 0)) fail(Errc::InvalidArgument, "tolerance must be positive");
  std::vector<detail::Candidate> cands;
  std::vector<bool> taken(form.poles.size(), false);
  for (size_t i = 0; i < form.poles.size(); ++i) {
    if (taken[i]) continue;
    detail::Candidate c;
    c.poles.push_back(static_cast<int>(i));
    for (size_t j = i + 1; j < form.poles.size(); ++j)
      if (!taken[j] && detail::same_terms(form.poles[i], form.poles[j])) {
        taken[j] = true;
        c.poles.push_back(static_cast<int>(j));
      }
    c.locator = fconst(1) - form.poles[i].g;
    try {
      c.root = find_rho(*c.locator, tol);
    } catch (const Error& e) {
      if (e.code() == Errc::NoSignChange) continue;  // no root in (0, 1)
      throw;
    }
    cands.push_back(std::move(c));
  }
  if (form.branch) {
    detail::Candidate c;
    c.branch = true;
    c.locator = form.branch->D;
    c.root = find_rho(*c.locator, tol);
    cands.push_back(std::move(c));
  }
  if (cands.empty()) fail(Errc::NoSignChange, "no singularity located in (0, 1)");

  // Pick the least root; overlapping distinct candidates are refined first.
  auto refine = [&](detail::Candidate& c, double t) { c.root = find_rho(*c.locator, t); };
  size_t best = 0;
  for (size_t i = 1; i < cands.size(); ++i) {
    double t = tol;
    while (cands[i].root.rho.overlaps(cands[best].root.rho)) {
      t *= 1e-8;
      if (t < 1e-60)
        fail(Errc::DegeneratePhase, "competing singularities cannot be separated at maximum precision");
      refine(cands[i], t);
      refine(cands[best], t);
    }
    if (cands[i].root.rho.certainly_less(cands[best].root.rho)) best = i;
  }
  const detail::Candidate& d = cands[best];

  SingularityModel m;
  m.rho = d.root.rho;
  m.bits = d.root.bits;
  m.branch = d.branch;
  m.dominant = d.poles;
  EvalCtx ctx{m.bits, std::min(tol * 1e-6, 1e-20)};
  Interval one = Interval::from_si(1, m.bits);
  if (d.branch) {
    const BranchPart& b = *form.branch;
    m.label = b.label;
    m.alpha = mpq_class(-b.power2, 2);
    Dual D = b.D->eval(m.rho, ctx);
    if (!D.t.neg()) fail(Errc::DegenerateSingularity, "D'(rho) is not certifiably negative for " + b.label);
    Interval base = -D.t;
    Interval p = b.power2 > 0 ? sqrt(base) : one / sqrt(base);
    m.h = b.N->value(m.rho, ctx) * p;
  } else {
    int mult = 0;
    Interval denom = one;
    for (int i : d.poles) {
      const PoleFactor& pf = form.poles[static_cast<size_t>(i)];
      mult += pf.mult;
      Interval tg = pf.g->eval(m.rho, ctx).t;
      if (!tg.pos()) fail(Errc::DegenerateSingularity, "theta g(rho) is not certifiably positive for " + pf.label);
      denom = denom * pow_q(tg, mpq_class(pf.mult));
      if (!m.label.empty()) m.label += " = ";
      m.label += pf.label;
    }
    for (size_t j = 0; j < form.poles.size(); ++j) {
      if (std::find(d.poles.begin(), d.poles.end(), static_cast<int>(j)) != d.poles.end()) continue;
      Interval v = one - form.poles[j].g->value(m.rho, ctx);
      Interval pw = one;
      for (int k = 0; k < form.poles[j].mult; ++k) pw = pw * v;
      denom = denom * pw;
    }
    m.alpha = mult;
    m.h = form.numerator->value(m.rho, ctx) / denom;
  }
  m.C = m.h / (-log(m.rho) * gamma_eval(m.alpha, m.bits));
  m.growth = one / m.rho;
  return m;
}

// C rho^{-x} x^{alpha - 1}
inline Interval predict(const SingularityModel& m, const Interval& x) {
  if (!x.pos()) fail(Errc::BadParameter, "predict needs x > 0");
  long bits = m.bits;
  Interval xx = x.with_prec(bits);
  Interval v = m.C * exp(-xx * log(m.rho));
  if (m.alpha != 1) v = v * exp(Interval::from_q(m.alpha - 1, bits) * log(xx));
  return v;
}

// ---------------------------------------------------------------------------
// Rational and shifted-rational classes

enum class RationalVariant { Corrected, Printed };

inline const char* variant_name(RationalVariant v) { return v == RationalVariant::Corrected ? "corrected" : "printed"; }

// omega h / ((1 - rho^omega) Gamma(alpha)) rho^{-(floor((x-delta)/omega) omega + delta)} x^{alpha-1};
// the printed variant carries an extra rho^{-delta}.
inline Interval rational_predict(const Exponent& omega, const std::optional<Exponent>& delta, const SingularityModel& m,
                                 const Bound& x, RationalVariant variant = RationalVariant::Corrected) {
  long bits = m.bits;
  Interval w = value(omega, bits);
  Interval dl = delta ? value(*delta, bits) : Interval(bits);
  Interval X = x.eval(bits);
  if (!X.pos()) fail(Errc::BadParameter, "rational_predict needs x > 0");
  mpz_class n;
  bool exact = false;
  if (x.coords()) {
    Coords diff = delta ? coords_add(*x.coords(), delta->coords(), -1) : *x.coords();
    if (auto t = detail::ratio_along(diff, omega.coords())) {
      mpz_fdiv_q(n.get_mpz_t(), t->get_num_mpz_t(), t->get_den_mpz_t());
      exact = true;
    }
  }
  if (!exact) {
    for (long b = bits;; b *= 2) {
      Interval q = (x.eval(b) - (delta ? value(*delta, b) : Interval(b))) / value(omega, b);
      if (floor_exact(q, n)) break;
      if (b > precision_cap()) fail(Errc::TieUnresolved, "floor((x - delta)/omega) is not resolved");
    }
  }
  Interval one = Interval::from_si(1, bits);
  Interval lr = log(m.rho);
  Interval pref = w * m.h / ((one - exp(w * lr)) * gamma_eval(m.alpha, bits));
  Interval expo = Interval::from_z(n, bits) * w + dl;
  Interval v = pref * exp(-expo * lr);
  if (m.alpha != 1) v = v * exp(Interval::from_q(m.alpha - 1, bits) * log(X));
  if (variant == RationalVariant::Printed) v = v * exp(-dl * lr);
  return v;
}

// ---------------------------------------------------------------------------
// Primitivity

enum class VerdictKind { Primitive, NotPrimitive, RationalPeriodic, Unknown };

inline const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Primitive: return "primitive";
    case VerdictKind::NotPrimitive: return "not-primitive";
    case VerdictKind::RationalPeriodic: return "rational-periodic";
    case VerdictKind::Unknown: return "unknown";
  }
  return "?";
}

struct PrimitivityVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::string rule;     // Prop1 | Prop2 | Prop3
  std::string witness;  // NotPrimitive: the factor
  std::optional<Exponent> omega, delta;
  std::string reason;
};

namespace detail {
inline bool irrational_set(const std::vector<Exponent>& es, bool allow_shift = false) {
  if (es.empty()) return false;
  auto r = rationality(es, allow_shift);
  return r.kind == RationalityKind::Irrational || (allow_shift && r.kind == RationalityKind::ShiftedRational);
}
inline bool all_positive(const std::vector<mpq_class>& cs) {
  for (auto& c : cs)
    if (c <= 0) return false;
  return !cs.empty();
}
}  // namespace detail

namespace detail {
inline bool has_infinite_family(const ClassPtr& c) {
  if (c->kind == NodeKind::Family && c->family.kind != TileFamilyKind::ExplicitList) return true;
  for (auto& k : c->kids)
    if (has_infinite_family(k)) return true;
  for (auto& t : c->fix)
    if (has_infinite_family(t.a)) return true;
  return false;
}
}  // namespace detail

// Sets v to RationalPeriodic when the sampled sizes lie in omega N + delta.
// Returns true to continue with the analytic criteria.
inline bool periodic_sample(const GalleryClass& g, double sample_window, PrimitivityVerdict& v) {
  double w = std::min(sample_window, g.max_size);
  mpq_class wq(static_cast<long>(std::floor(w * 64)), 64);
  IntSeries f = expand(g.cls, g.basis, Bound::rational(g.basis, wq));
  std::vector<Exponent> sizes;
  for (auto& t : f.terms())
    if (t.c != 0) sizes.push_back(t.e);
  if (sizes.empty()) return true;
  auto r = rationality(sizes, true);
  if (r.kind == RationalityKind::Irrational) return true;
  v.kind = VerdictKind::RationalPeriodic;
  v.omega = r.omega;
  v.delta = r.delta;
  v.reason = "all " + std::to_string(sizes.size()) + " sizes up to " + rat_str(wq) + " lie in omega N + delta";
  return false;
}

inline PrimitivityVerdict primitivity(const GalleryClass& g, double sample_window = 10) {
  PrimitivityVerdict v;
  // Size set: an infinite family already makes it irrational (log primes,
  // unbounded denominators, or independent square roots). Otherwise
  // the sizes below the sample window are tested.
  if (!detail::has_infinite_family(g.cls) && !periodic_sample(g, sample_window, v)) return v;
  if (v.kind == VerdictKind::RationalPeriodic) return v;

  if (!g.form) {
    v.reason = "no symbolic form available";
    return v;
  }
  const SingularForm& F = *g.form;
  SingularityModel m;
  try {
    m = analyze(F, 1e-12);
  } catch (const Error& e) {
    v.reason = std::string("analysis failed: ") + e.what();
    return v;
  }
  std::optional<LinearCert> cert;
  std::string label;
  if (m.branch) {
    cert = F.branch->cert;
    label = F.branch->label;
  } else if (m.dominant.size() >= 1) {
    cert = F.poles[static_cast<size_t>(m.dominant.front())].cert;
    label = F.poles[static_cast<size_t>(m.dominant.front())].label;
  }
  if (cert && detail::all_positive(cert->coefs)) {
    if (cert->unbounded_denominators || detail::irrational_set(cert->support)) {
      v.kind = VerdictKind::Primitive;
      v.rule = "Prop1";
      v.reason = "dominant singularity solves " + cert->text + " with positive coefficients and irrational support";
      return v;
    }
    v.kind = VerdictKind::NotPrimitive;
    v.witness = label;
    v.reason = "dominant factor " + label + " has support in a single ray omega Z: evenly spaced poles";
    return v;
  }
  if (F.prop2 && !m.branch) {
    const Prop2Cert& p = *F.prop2;
    long bits = 128;
    EvalCtx ctx{bits, 1e-20};
    Interval r = Interval::from_q(p.point, bits);
    Interval span = Interval::hull(Interval::from_si(0, bits), r);
    bool guard_ok = p.guard->value(span, ctx).pos();
    bool super = (p.G->value(r, ctx) - Interval::from_si(1, bits)).pos();
    if (guard_ok && super && detail::irrational_set(p.support, true)) {
      v.kind = VerdictKind::Primitive;
      v.rule = "Prop2";
      v.reason = p.text + "; G(" + rat_str(p.point) + ") > 1 inside its disc of analyticity";
      return v;
    }
  }
  if (F.prop3) {
    const Prop3Cert& p = *F.prop3;
    if (p.k >= 2 && detail::all_positive(p.coefs) && detail::irrational_set(p.support)) {
      v.kind = VerdictKind::Primitive;
      v.rule = "Prop3";
      v.reason = p.text + " with k = " + std::to_string(p.k) + " and irrational exponent set";
      return v;
    }
  }
  v.reason = "no sufficient criterion applies";
  return v;
}

// ---------------------------------------------------------------------------
// Expectations

// [z^{<=x}] f_u / [z^{<=x}] f
inline Interval expectation_ratio(const MarkedExpansion& m, const Bound& x, long bits = 128) {
  LinForm num = cumulative(m.f_u, x);
  mpz_class den = cumulative(m.f, x);
  if (den == 0) fail(Errc::BadParameter, "no objects of size at most x");
  return num.eval(*m.f.basis(), bits) / Interval::from_z(den, bits);
}

// Slope s with E_{<=x}[marker] ~ s x.
inline Interval expectation_slope(const SingularForm& F, const MarkerForm& mk, const SingularityModel& m) {
  EvalCtx ctx{m.bits, 1e-25};
  if (m.branch) {
    if (!mk.branch_du) fail(Errc::UnknownMarker, "marker has no branch derivative");
    Interval tD = F.branch->D->eval(m.rho, ctx).t;
    return mk.branch_du->value(m.rho, ctx) / tD;
  }
  if (!mk.pole_du) fail(Errc::UnknownMarker, "marker has no pole derivative");
  if (m.dominant.size() != 1 || F.poles[static_cast<size_t>(m.dominant.front())].mult != 1)
    fail(Errc::UnsupportedAlpha, "closed-form slope needs a simple dominant pole");
  Interval tg = F.poles[static_cast<size_t>(m.dominant.front())].g->eval(m.rho, ctx).t;
  return mk.pole_du->value(m.rho, ctx) / tg;
}

// ---------------------------------------------------------------------------
// Oscillation of the W pattern 1/((1-2z)(1-2z^beta))

struct OscillationRow {
  mpq_class x;
  Interval empirical;
  Interval closed;
  double tail = 0;  // certified bound on |empirical - closed|
};

inline std::vector<OscillationRow> oscillation_profile(const GalleryClass& w, const mpq_class& x0, int n_samples, double tol = 1e-12,
                                                       long bits = 128) {
  auto it = w.params.find("beta");
  if (it == w.params.end()) fail(Errc::BadParameter, "oscillation profile needs the W pattern with parameter beta");
  const Exponent& beta = it->second;
  Interval B = value(beta, bits);
  Interval one = Interval::from_si(1, bits);
  if (!(B - one).pos()) fail(Errc::TailTooFat, "beta must exceed 1 for the series in l to converge");
  if (n_samples < 1) fail(Errc::BadParameter, "need at least one sample");
  double bm1 = (B - one).lo_d();
  // sum_{l > L} 2^{1-(b-1)l} = 2^{1-(b-1)(L+1)} / (1 - 2^{-(b-1)})
  auto geo_tail = [&](long L) { return std::pow(2.0, 1 - bm1 * double(L + 1)) / (1 - std::pow(2.0, -bm1)) * (1 + 1e-12); };
  long lmax = 0;
  while (geo_tail(lmax) > tol) ++lmax;
  mpq_class xend = x0 + 1;
  IntSeries f = expand(w.cls, w.basis, Bound::rational(w.basis, xend));
  std::vector<OscillationRow> rows;
  Interval two = Interval::from_si(2, bits), ln2 = log(two);
  for (int j = 0; j < n_samples; ++j) {
    mpq_class x = x0 + mpq_class(j, n_samples);
    x.canonicalize();
    Interval X = Interval::from_q(x, bits);
    OscillationRow r;
    r.x = x;
    r.empirical = Interval::from_z(cumulative(f, Bound::rational(w.basis, x)), bits) * exp(-X * ln2);
    Interval c(bits);
    for (long l = 0; l <= lmax; ++l) {
      mpz_class fl;
      Interval arg(bits);
      for (long b = bits;; b *= 2) {
        arg = Interval::from_q(x, b) - Interval::from_si(l, b) * value(beta, b);
        if (floor_exact(arg, fl)) break;
        if (b > precision_cap()) fail(Errc::TieUnresolved, "fractional part of x - l beta unresolved");
      }
      Interval frac = (Interval::from_q(x, bits) - Interval::from_si(l, bits) * B) - Interval::from_z(fl, bits);
      Interval e = one - (B - one) * Interval::from_si(l, bits) - frac;
      c = c + exp(e * ln2);
    }
    r.closed = c;
    mpz_class L;
    Interval q = X / B;
    long Lv = floor_exact(q, L) ? L.get_si() : static_cast<long>(std::floor(q.hi_d()));
    r.tail = geo_tail(std::min(Lv, lmax)) + std::pow(2.0, double(Lv + 1) - x.get_d()) * (1 + 1e-12);
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Truncated Dirichlet series magnitude |sum a_l e^{-l (mu + i t)}| (diagnostic only).

struct DgfSample {
  double t;
  double magnitude;
};

inline std::vector<DgfSample> dgf_scan(const IntSeries& f, double mu, double t0, double t1, int n) {
  if (n < 1) fail(Errc::BadParameter, "need at least one point");
  std::vector<std::pair<double, double>> terms;  // (lambda, a e^{-lambda mu})
  for (auto& t : f.terms()) {
    double lam = t.e.approx();
    long ex = 0;
    double mant = mpz_get_d_2exp(&ex, t.c.get_mpz_t());
    terms.emplace_back(lam, mant * std::exp(double(ex) * std::log(2.0) - lam * mu));
  }
  std::vector<DgfSample> out;
  for (int k = 0; k < n; ++k) {
    double t = n == 1 ? t0 : t0 + (t1 - t0) * double(k) / double(n - 1);
    std::complex<double> acc = 0;
    for (auto& [lam, a] : terms) acc += a * std::polar(1.0, -lam * t);
    out.push_back({t, std::abs(acc)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Phase sweeps over (beta, gamma)

struct SweepRow {
  std::string beta, gamma;
  std::string phase;
  SingularityModel model;
};

inline std::string phase_label(const std::string& fam, const GalleryClass& g, const SingularityModel& m) {
  if (fam == "y-tilings") {
    if (m.dominant.size() == 2) return "beta=gamma";
    return m.dominant.front() == 0 ? "beta<gamma" : "beta>gamma";
  }
  if (fam == "forests-f") {
    Exponent one = exponent_of(g.basis, RealExpr::rational(1));
    switch (compare(g.params.at("gamma"), one)) {
      case Ordering::LT: return "gamma<1";
      case Ordering::EQ: return "gamma=1";
      case Ordering::GT: return "gamma>1";
    }
  }
  if (fam == "grounded-dyck") return m.branch ? "rho_gamma<rho_beta" : "rho_beta<rho_gamma";
  fail(Errc::UnknownName, "no phase sweep for '" + fam + "'");
}

inline std::vector<SweepRow> phase_sweep(const std::string& fam, const std::vector<std::pair<std::string, std::string>>& grid,
                                         double tol, unsigned threads = 0) {
  if (fam != "y-tilings" && fam != "forests-f" && fam != "grounded-dyck")
    fail(Errc::UnknownName, "no phase sweep for '" + fam + "'");
  std::vector<SweepRow> rows(grid.size());
  std::vector<std::optional<Error>> errs(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(grid.size(), 1)));
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i; (i = next.fetch_add(1)) < grid.size();) {
      try {
        GalleryParams p;
        p.set("beta", grid[i].first).set("gamma", grid[i].second);
        GalleryClass g = gallery(fam, p);
        SweepRow r;
        r.beta = grid[i].first;
        r.gamma = grid[i].second;
        r.model = analyze(*g.form, tol);
        r.phase = phase_label(fam, g, r.model);
        rows[i] = std::move(r);
      } catch (const Error& e) {
        errs[i] = e;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (size_t i = 0; i < grid.size(); ++i)
    if (errs[i]) fail(errs[i]->code(), "(" + grid[i].first + ", " + grid[i].second + "): " + errs[i]->what());
  return rows;
}

// ---------------------------------------------------------------------------
// Classes from definition files: Seq of a positive union of atoms and
// families gets a linear pole form.

inline std::optional<SingularForm> derive_form(const ClassPtr& c) {
  if (c->kind != NodeKind::Seq) return std::nullopt;
  const ClassPtr& x = c->kids[0];
  std::vector<ClassPtr> parts;
  if (x->kind == NodeKind::Union)
    parts = x->kids;
  else
    parts = {x};
  std::vector<std::pair<mpq_class, Exponent>> terms;
  LinearCert cert;
  bool finite = true;
  for (auto p : parts) {
    while (p->kind == NodeKind::Marked) p = p->kids[0];
    if (p->kind == NodeKind::Atom) {
      if (p->atom->is_zero()) return std::nullopt;
      bool merged = false;
      for (auto& [k, e] : terms)
        if (e == *p->atom) {
          k += 1;
          merged = true;
        }
      if (!merged) terms.emplace_back(1, *p->atom);
    } else if (p->kind == NodeKind::Family) {
      finite = false;
      if (p->family.kind == TileFamilyKind::KPlusHalfPowers) cert.unbounded_denominators = true;
    } else {
      return std::nullopt;
    }
  }
  SingularForm f;
  PoleFactor pf;
  pf.label = "1 - g(z)";
  pf.g = to_func(x);
  if (finite) pf.terms = terms;
  for (auto& [k, e] : terms) {
    cert.coefs.push_back(k);
    cert.support.push_back(e);
  }
  cert.text = "g(z) = 1";
  if (!cert.support.empty() || cert.unbounded_denominators) {
    if (cert.coefs.empty()) cert.coefs.push_back(1);
    pf.cert = cert;
  }
  f.poles.push_back(pf);
  f.numerator = fconst(1);
  f.equation = "f = 1/(1 - g)";
  return f;
}

}  // namespace irr
