#pragma once

// Window-truncated Ribenboim series: finite sorted lists of (exponent, coefficient)
// with exponents bounded by an inclusive window.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "irr/error.hpp"
#include "irr/exponents.hpp"
#include "irr/interval.hpp"
#include "irr/realexpr.hpp"

namespace irr {

// ---------------------------------------------------------------------------
// LinForm: r + sum c_i K_i, the value space of weights and first moments.

struct LinForm {
  mpq_class r = 0;
  Coords c;

  LinForm() = default;
  LinForm(const mpq_class& q) : r(q) {}  // NOLINT(google-explicit-constructor)
  static LinForm of_coords(Coords cs) {
    LinForm f;
    f.c = std::move(cs);
    return f;
  }
  static LinForm of_exponent(const Exponent& e) { return of_coords(e.coords()); }

  bool is_zero() const { return r == 0 && c.empty(); }
  LinForm operator+(const LinForm& o) const {
    LinForm f;
    f.r = r + o.r;
    f.c = coords_add(c, o.c);
    return f;
  }
  LinForm operator-(const LinForm& o) const {
    LinForm f;
    f.r = r - o.r;
    f.c = coords_add(c, o.c, -1);
    return f;
  }
  LinForm operator-() const { return LinForm() - *this; }
  LinForm& operator+=(const LinForm& o) { return *this = *this + o; }
  LinForm scaled(const mpq_class& k) const {
    LinForm f;
    f.r = r * k;
    f.c = coords_scale(c, k);
    return f;
  }
  bool operator==(const LinForm& o) const { return r == o.r && coords_equal(c, o.c); }
  bool operator!=(const LinForm& o) const { return !(*this == o); }

  Interval eval(const Basis& b, long bits) const {
    Interval v = Interval::from_q(r, bits + 8);
    if (!c.empty()) v = v + eval_coords(b, c, bits);
    return v;
  }
  std::string str() const {
    std::string s = rat_str(r);
    for (auto& [i, q] : c) s += ";" + std::to_string(i) + "=" + rat_str(q);
    return s;
  }
  static LinForm parse(const std::string& s) {
    LinForm f;
    std::stringstream ss(s);
    std::string part;
    bool first = true;
    while (std::getline(ss, part, ';')) {
      if (first) {
        f.r = mpq_class(part);
        f.r.canonicalize();
        first = false;
        continue;
      }
      auto eq = part.find('=');
      if (eq == std::string::npos) fail(Errc::ParseError, "bad linear form: " + s);
      mpq_class q(part.substr(eq + 1));
      q.canonicalize();
      f.c.emplace_back(static_cast<std::uint32_t>(std::stoul(part.substr(0, eq))), q);
    }
    std::sort(f.c.begin(), f.c.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return f;
  }
  // Human-readable over a basis, e.g. "2*sqrt(2)".
  std::string pretty(const Basis& b) const {
    std::string s;
    if (r != 0 || c.empty()) s = rat_str(r);
    for (auto& [i, q] : c) {
      std::string t = (q == 1 ? "" : rat_str(q) + "*") + b.at(i).descriptor();
      if (!s.empty() && q > 0) s += "+";
      s += t;
    }
    return s;
  }
};

inline LinForm operator*(const mpq_class& k, const LinForm& f) { return f.scaled(k); }

// ---------------------------------------------------------------------------
// Jet: a + b*eps with eps^2 = 0; a counts objects, b carries the marker moment.

struct Jet {
  mpq_class a = 0;
  LinForm b;

  Jet() = default;
  Jet(const mpq_class& v) : a(v) {}  // NOLINT(google-explicit-constructor)
  Jet(mpq_class v, LinForm e) : a(std::move(v)), b(std::move(e)) {}

  bool is_zero() const { return a == 0 && b.is_zero(); }
  Jet operator+(const Jet& o) const { return Jet(a + o.a, b + o.b); }
  Jet operator-(const Jet& o) const { return Jet(a - o.a, b - o.b); }
  Jet operator-() const { return Jet(-a, -b); }
  Jet operator*(const Jet& o) const { return Jet(a * o.a, o.b.scaled(a) + b.scaled(o.a)); }
  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  bool operator==(const Jet& o) const { return a == o.a && b == o.b; }
  bool operator!=(const Jet& o) const { return !(*this == o); }
  std::string str() const { return rat_str(a) + "|" + b.str(); }
  static Jet parse(const std::string& s) {
    auto bar = s.find('|');
    if (bar == std::string::npos) fail(Errc::ParseError, "bad jet: " + s);
    mpq_class a(s.substr(0, bar));
    a.canonicalize();
    return Jet(a, LinForm::parse(s.substr(bar + 1)));
  }
};

// ---------------------------------------------------------------------------
// Coefficient traits

template <class C>
struct CoefTraits;

template <>
struct CoefTraits<mpz_class> {
  static constexpr const char* name = "int";
  static bool is_zero(const mpz_class& c) { return c == 0; }
  static std::string str(const mpz_class& c) { return c.get_str(); }
  static mpz_class parse(const std::string& s) { return mpz_class(s); }
  static Interval eval(const mpz_class& c, const Basis&, long bits) { return Interval::from_z(c, bits); }
};
template <>
struct CoefTraits<mpq_class> {
  static constexpr const char* name = "rat";
  static bool is_zero(const mpq_class& c) { return c == 0; }
  static std::string str(const mpq_class& c) { return c.get_str(); }
  static mpq_class parse(const std::string& s) {
    mpq_class q(s);
    q.canonicalize();
    return q;
  }
  static Interval eval(const mpq_class& c, const Basis&, long bits) { return Interval::from_q(c, bits); }
};
template <>
struct CoefTraits<Jet> {
  static constexpr const char* name = "jet";
  static bool is_zero(const Jet& c) { return c.is_zero(); }
  static std::string str(const Jet& c) { return c.str(); }
  static Jet parse(const std::string& s) { return Jet::parse(s); }
  static Interval eval(const Jet& c, const Basis&, long bits) { return Interval::from_q(c.a, bits); }
};
template <>
struct CoefTraits<LinForm> {
  static constexpr const char* name = "linform";
  static bool is_zero(const LinForm& c) { return c.is_zero(); }
  static std::string str(const LinForm& c) { return c.str(); }
  static LinForm parse(const std::string& s) { return LinForm::parse(s); }
  static Interval eval(const LinForm& c, const Basis& b, long bits) { return c.eval(b, bits); }
};

// ---------------------------------------------------------------------------
// Bound helpers

inline bool same_bound(const Bound& a, const Bound& b) {
  if (a.coords() && b.coords()) return coords_equal(*a.coords(), *b.coords());
  return a.expr().str() == b.expr().str();
}

inline Ordering compare_bounds(const Bound& a, const Bound& b) {
  if (same_bound(a, b)) return Ordering::EQ;
  if (a.coords() && b.coords()) {
    Coords d = coords_add(*a.coords(), *b.coords(), -1);
    if (d.empty()) return Ordering::EQ;
    int s = certified_sign(*a.basis(), d, a.lo() - b.hi(), a.hi() - b.lo());
    return s < 0 ? Ordering::LT : Ordering::GT;
  }
  if (a.hi() < b.lo()) return Ordering::LT;
  if (a.lo() > b.hi()) return Ordering::GT;
  long cap = precision_cap();
  for (long bits = kStartPrecision; bits <= cap; bits *= 2) {
    Interval d = a.eval(bits) - b.eval(bits);
    if (d.pos()) return Ordering::GT;
    if (d.neg()) return Ordering::LT;
  }
  fail(Errc::TieUnresolved, "cannot order bounds " + a.str() + " and " + b.str());
}

// ---------------------------------------------------------------------------
// RibenboimPoly

template <class C>
class RibenboimPoly {
 public:
  struct Term {
    Exponent e;
    C c;
  };
  using Traits = CoefTraits<C>;

  RibenboimPoly() = default;
  RibenboimPoly(BasisPtr basis, Bound window) : basis_(std::move(basis)), window_(std::move(window)) {}

  static RibenboimPoly zero(BasisPtr basis, Bound window) { return RibenboimPoly(std::move(basis), std::move(window)); }
  static RibenboimPoly one(BasisPtr basis, Bound window) {
    RibenboimPoly p(basis, std::move(window));
    p.terms_.push_back({Exponent(basis), C(1)});
    return p;
  }
  static RibenboimPoly monomial(const Exponent& e, const C& c, Bound window) {
    RibenboimPoly p(e.basis(), std::move(window));
    if (!Traits::is_zero(c) && within(e, p.window_)) p.terms_.push_back({e, c});
    return p;
  }
  // Builds from unsorted, possibly repeated terms; drops zeros and out-of-window terms.
  static RibenboimPoly from_terms(BasisPtr basis, Bound window, std::vector<Term> ts) {
    std::unordered_map<Coords, size_t, CoordsHash, CoordsEq> idx;
    std::vector<Term> merged;
    RibenboimPoly p(std::move(basis), std::move(window));
    for (auto& t : ts) {
      require_same_basis(p.basis_, t.e.basis());
      auto it = idx.find(t.e.coords());
      if (it == idx.end()) {
        idx.emplace(t.e.coords(), merged.size());
        merged.push_back(std::move(t));
      } else {
        merged[it->second].c = merged[it->second].c + t.c;
      }
    }
    for (auto& t : merged)
      if (!Traits::is_zero(t.c) && within(t.e, p.window_)) p.terms_.push_back(std::move(t));
    std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& a, const Term& b) { return exp_less(a.e, b.e); });
    return p;
  }

  const BasisPtr& basis() const { return basis_; }
  const Bound& window() const { return window_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const Exponent& valuation() const {
    if (terms_.empty()) fail(Errc::InvalidArgument, "valuation of the zero series");
    return terms_.front().e;
  }
  C constant_term() const {
    if (!terms_.empty() && terms_.front().e.is_zero()) return terms_.front().c;
    return C(0);
  }
  C coefficient(const Exponent& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& x) { return exp_less(t.e, x); });
    if (it != terms_.end() && it->e == e) return it->c;
    return C(0);
  }

  bool operator==(const RibenboimPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].e != o.terms_[i].e || terms_[i].c != o.terms_[i].c) return false;
    return true;
  }
  bool operator!=(const RibenboimPoly& o) const { return !(*this == o); }

  RibenboimPoly operator+(const RibenboimPoly& o) const { return merge(o, 1); }
  RibenboimPoly operator-(const RibenboimPoly& o) const { return merge(o, -1); }
  RibenboimPoly operator-() const {
    RibenboimPoly r(basis_, window_);
    for (auto& t : terms_) r.terms_.push_back({t.e, C(0) - t.c});
    return r;
  }
  RibenboimPoly scaled(const C& k) const {
    RibenboimPoly r(basis_, window_);
    if (Traits::is_zero(k)) return r;
    for (auto& t : terms_) {
      C v = t.c * k;
      if (!Traits::is_zero(v)) r.terms_.push_back({t.e, std::move(v)});
    }
    return r;
  }

  RibenboimPoly operator*(const RibenboimPoly& o) const {
    check_compatible(o);
    RibenboimPoly r(basis_, window_);
    if (terms_.empty() || o.terms_.empty()) return r;
    const double whi = window_.hi(), wlo = window_.lo();
    std::unordered_map<Coords, C, CoordsHash, CoordsEq> acc;
    acc.reserve(terms_.size() + o.terms_.size());
    for (auto& ta : terms_) {
      if (lower_sum(ta.e.lo(), 0.0) > whi) break;
      for (auto& tb : o.terms_) {
        if (lower_sum(ta.e.lo(), tb.e.lo()) > whi) break;
        Coords s = coords_add(ta.e.coords(), tb.e.coords());
        if (upper_sum(ta.e.hi(), tb.e.hi()) >= wlo) {
          Exponent e = Exponent::raw(basis_, s);
          if (!within(e, window_)) continue;
        }
        auto it = acc.find(s);
        if (it == acc.end())
          acc.emplace(std::move(s), ta.c * tb.c);
        else
          it->second = it->second + ta.c * tb.c;
      }
    }
    r.terms_.reserve(acc.size());
    for (auto& [k, v] : acc)
      if (!Traits::is_zero(v)) r.terms_.push_back({Exponent::raw(basis_, k), std::move(v)});
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) { return exp_less(a.e, b.e); });
    return r;
  }

  // Same series with a smaller window.
  RibenboimPoly truncated(const Bound& w) const {
    RibenboimPoly r(basis_, w);
    for (auto& t : terms_) {
      if (!within(t.e, w)) break;
      r.terms_.push_back(t);
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& t : terms_) {
      if (!s.empty()) s += " + ";
      s += Traits::str(t.c) + "*z^(" + t.e.str() + ")";
    }
    return s;
  }

  // Internal: append a term known to be larger than all present.
  void push_back_unchecked(Term t) { terms_.push_back(std::move(t)); }

 private:
  static double lower_sum(double a, double b) {
    return std::nextafter(a + b, -std::numeric_limits<double>::infinity());
  }
  static double upper_sum(double a, double b) {
    return std::nextafter(a + b, std::numeric_limits<double>::infinity());
  }
  void check_compatible(const RibenboimPoly& o) const {
    require_same_basis(basis_, o.basis_);
    if (!same_bound(window_, o.window_)) fail(Errc::InvalidArgument, "series windows differ");
  }
  RibenboimPoly merge(const RibenboimPoly& o, int sign) const {
    check_compatible(o);
    RibenboimPoly r(basis_, window_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    auto neg = [&](const C& c) { return sign > 0 ? c : C(0) - c; };
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      if (i == terms_.size()) {
        r.terms_.push_back({o.terms_[j].e, neg(o.terms_[j].c)});
        ++j;
        continue;
      }
      Ordering ord = compare(terms_[i].e, o.terms_[j].e);
      if (ord == Ordering::LT) {
        r.terms_.push_back(terms_[i++]);
      } else if (ord == Ordering::GT) {
        r.terms_.push_back({o.terms_[j].e, neg(o.terms_[j].c)});
        ++j;
      } else {
        C v = terms_[i].c + neg(o.terms_[j].c);
        if (!Traits::is_zero(v)) r.terms_.push_back({terms_[i].e, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  BasisPtr basis_;
  Bound window_;
  std::vector<Term> terms_;
};

using IntSeries = RibenboimPoly<mpz_class>;
using RatSeries = RibenboimPoly<mpq_class>;
using JetSeries = RibenboimPoly<Jet>;
using FormSeries = RibenboimPoly<LinForm>;

// ---------------------------------------------------------------------------
// Operations

template <class C>
RibenboimPoly<C> monomial(const Exponent& e, const C& c, const Bound& window) {
  return RibenboimPoly<C>::monomial(e, c, window);
}

// f with f * (1 - g) = 1 inside the window; f is accumulated as the partial
// sums of f <- 1 + g f, adding g^k at step k.
template <class C>
RibenboimPoly<C> quasi_inverse(const RibenboimPoly<C>& g) {
  if (!g.is_zero() && g.terms().front().e.is_zero())
    fail(Errc::NonzeroConstantTerm, "quasi_inverse needs a series with zero constant term");
  auto one = RibenboimPoly<C>::one(g.basis(), g.window());
  if (g.is_zero()) return one;
  double nu = g.valuation().lo();
  long max_steps = static_cast<long>(std::ceil(g.window().hi() / std::max(nu, 1e-300))) + 2;
  RibenboimPoly<C> f = one, power = one;
  for (long k = 1;; ++k) {
    power = g * power;
    if (power.is_zero()) break;
    f = f + power;
    if (k > max_steps) fail(Errc::Internal, "quasi_inverse did not terminate");
  }
  RibenboimPoly<C> check = f - f * g;
  if (check != one) fail(Errc::Internal, "quasi_inverse identity check failed");
  return f;
}

// Solves f = sum_k a[k] f^k inside the window by iterating from f0 = a[0]
// until two successive iterates agree.
template <class C>
RibenboimPoly<C> fixpoint_solve(const std::vector<RibenboimPoly<C>>& a) {
  if (a.empty()) fail(Errc::InvalidArgument, "empty fixpoint equation");
  const auto& a0 = a[0];
  bool a0_val_positive = !a0.is_zero() && !a0.valuation().is_zero();
  double nu = std::numeric_limits<double>::infinity();
  for (size_t k = 1; k < a.size(); ++k) {
    if (a[k].is_zero()) continue;
    const Exponent& vk = a[k].valuation();
    bool contracts = !vk.is_zero() || (k >= 2 && a0_val_positive);
    if (!contracts) fail(Errc::NotContracting, "term f^" + std::to_string(k) + " has no positive z-prefactor");
    double step = vk.lo() + (k >= 2 && a0_val_positive ? static_cast<double>(k - 1) * a0.valuation().lo() : 0.0);
    if (step > 0) nu = std::min(nu, step);
  }
  auto phi = [&](const RibenboimPoly<C>& f) {
    RibenboimPoly<C> acc = a.back();
    for (size_t k = a.size() - 1; k-- > 0;) acc = a[k] + f * acc;
    return acc;
  };
  long max_iter = std::isfinite(nu) ? static_cast<long>(std::ceil(a0.window().hi() / nu)) + 3 : 3;
  RibenboimPoly<C> f = a0;
  for (long it = 0;; ++it) {
    RibenboimPoly<C> next = phi(f);
    if (next == f) return f;
    f = std::move(next);
    if (it > max_iter) fail(Errc::Internal, "fixpoint iteration did not stabilise");
  }
}

// Sum of coefficients with exponent <= x (strict: < x).
template <class C>
C cumulative(const RibenboimPoly<C>& f, const Bound& x, bool strict = false) {
  if (compare_bounds(x, f.window()) == Ordering::GT)
    fail(Errc::WindowExceeded, "x = " + x.str() + " exceeds the series window " + f.window().str());
  C acc(0);
  for (auto& t : f.terms()) {
    Ordering o = compare(t.e, x);
    if (o == Ordering::GT || (strict && o == Ordering::EQ)) break;
    acc = acc + t.c;
  }
  return acc;
}
template <class C>
C cumulative_strict(const RibenboimPoly<C>& f, const Bound& x) {
  return cumulative(f, x, true);
}

// z d/dz: sum c z^lambda -> sum lambda c z^lambda, coefficients as linear forms.
template <class C>
FormSeries derivative_weighted(const RibenboimPoly<C>& f);

template <>
inline FormSeries derivative_weighted(const RibenboimPoly<mpz_class>& f) {
  FormSeries r(f.basis(), f.window());
  for (auto& t : f.terms())
    if (!t.e.is_zero()) r.push_back_unchecked({t.e, LinForm::of_exponent(t.e).scaled(mpq_class(t.c))});
  return r;
}
template <>
inline FormSeries derivative_weighted(const RibenboimPoly<mpq_class>& f) {
  FormSeries r(f.basis(), f.window());
  for (auto& t : f.terms())
    if (!t.e.is_zero()) r.push_back_unchecked({t.e, LinForm::of_exponent(t.e).scaled(t.c)});
  return r;
}

// Interval value of the finite sum at z > 0.
template <class C>
Interval evaluate(const RibenboimPoly<C>& f, const Interval& z, long bits) {
  Interval acc(bits);
  Interval lz = log(z.with_prec(bits));
  for (auto& t : f.terms()) {
    Interval c = CoefTraits<C>::eval(t.c, *f.basis(), bits);
    Interval zp = t.e.is_zero() ? Interval::from_si(1, bits) : exp(value(t.e, bits) * lz);
    acc = acc + c * zp;
  }
  return acc;
}

template <class To, class From>
RibenboimPoly<To> convert(const RibenboimPoly<From>& f) {
  RibenboimPoly<To> r(f.basis(), f.window());
  for (auto& t : f.terms()) r.push_back_unchecked({t.e, To(t.c)});
  return r;
}

inline IntSeries jet_counts(const JetSeries& f) {
  IntSeries r(f.basis(), f.window());
  for (auto& t : f.terms()) {
    if (t.c.a == 0) continue;
    if (t.c.a.get_den() != 1) fail(Errc::Internal, "non-integral count");
    r.push_back_unchecked({t.e, t.c.a.get_num()});
  }
  return r;
}
inline FormSeries jet_moments(const JetSeries& f) {
  FormSeries r(f.basis(), f.window());
  for (auto& t : f.terms())
    if (!t.c.b.is_zero()) r.push_back_unchecked({t.e, t.c.b});
  return r;
}

// ---------------------------------------------------------------------------
// Text format:
//   # ribenboim-series
//   basis<TAB>c1, c2, ...
//   window<TAB>expr
//   ring<TAB>int|rat|jet|linform
//   c1,c2,...<TAB>coefficient     (one line per term)

template <class C>
std::string serialize(const RibenboimPoly<C>& f) {
  std::ostringstream os;
  os << "# ribenboim-series\n";
  os << "basis\t" << f.basis()->str() << "\n";
  os << "window\t" << f.window().str() << "\n";
  os << "ring\t" << CoefTraits<C>::name << "\n";
  for (auto& t : f.terms()) {
    std::string v;
    for (size_t i = 0; i < f.basis()->size(); ++i) {
      if (i) v += ",";
      v += rat_str(t.e.coord(static_cast<std::uint32_t>(i)));
    }
    os << v << "\t" << CoefTraits<C>::str(t.c) << "\n";
  }
  return os.str();
}

template <class C>
RibenboimPoly<C> deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  BasisPtr basis;
  std::optional<Bound> window;
  std::vector<typename RibenboimPoly<C>::Term> terms;
  int ln = 0;
  auto err = [&](const std::string& m) { fail(Errc::ParseError, "line " + std::to_string(ln) + ": " + m); };
  while (std::getline(is, line)) {
    ++ln;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) err("expected a tab-separated line");
    std::string key = line.substr(0, tab), val = line.substr(tab + 1);
    if (key == "basis") {
      basis = make_basis(parse_constant_list(val));
    } else if (key == "window") {
      if (!basis) err("window before basis");
      window = Bound::parse(basis, val);
    } else if (key == "ring") {
      if (val != CoefTraits<C>::name) err("ring mismatch: file has " + val);
    } else {
      if (!basis || !window) err("term before header");
      Coords c;
      std::stringstream ss(key);
      std::string part;
      std::uint32_t i = 0;
      while (std::getline(ss, part, ',')) {
        mpq_class q(part);
        q.canonicalize();
        if (q != 0) c.emplace_back(i, q);
        ++i;
      }
      if (i != basis->size()) err("coordinate vector length does not match the basis");
      terms.push_back({Exponent::from_coords(basis, c), CoefTraits<C>::parse(val)});
    }
  }
  if (!basis || !window) fail(Errc::ParseError, "missing series header");
  return RibenboimPoly<C>::from_terms(basis, *window, std::move(terms));
}

}  // namespace irr
