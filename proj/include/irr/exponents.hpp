#pragma once

// Nonnegative real exponents as exact rational coordinate vectors over a basis
// of positive real constants.

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "irr/error.hpp"
#include "irr/interval.hpp"

namespace irr {

// ---------------------------------------------------------------------------
// Precision policy

constexpr long kDefaultPrecisionCap = 16384;

inline std::atomic<long>& precision_cap_ref() {
  static std::atomic<long> cap{kDefaultPrecisionCap};
  return cap;
}
inline long precision_cap() { return precision_cap_ref().load(); }
inline void set_precision_cap(long bits) {
  if (bits < 64) fail(Errc::InvalidArgument, "precision cap must be at least 64 bits");
  precision_cap_ref().store(bits);
}
constexpr long kStartPrecision = 64;

// ---------------------------------------------------------------------------
// Small exact helpers

inline mpq_class rat_gcd(const mpq_class& a, const mpq_class& b) {
  mpz_class n, d;
  mpz_gcd(n.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  mpz_lcm(d.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const mpq_class& q) { return q.get_str(); }

// Trial-division factorization of a positive integer; returns false when a
// cofactor above the bound remains (it is then reported as one "prime").
inline bool factor_small(mpz_class n, std::vector<std::pair<mpz_class, long>>& out,
                         unsigned long bound = 1000000) {
  out.clear();
  if (n <= 1) return true;
  for (unsigned long p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      long e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      out.emplace_back(mpz_class(p), e);
    }
    if (mpz_class(p) * p > n) break;
  }
  if (n > 1) {
    bool prime = mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
    out.emplace_back(n, 1);
    return prime;
  }
  return true;
}

// ---------------------------------------------------------------------------
// BasisConstant

enum class ConstKind { Rational, SqrtRational, LogRational, PiMultiple, DecimalLiteral };

class BasisConstant {
 public:
  static BasisConstant rational(const mpq_class& q) { return make(ConstKind::Rational, q); }
  static BasisConstant sqrt_of(const mpq_class& q) { return make(ConstKind::SqrtRational, q); }
  static BasisConstant log_of(const mpq_class& q) {
    if (q <= 1) fail(Errc::BadParameter, "log constant needs an argument > 1, got " + rat_str(q));
    return make(ConstKind::LogRational, q);
  }
  static BasisConstant pi_times(const mpq_class& q) { return make(ConstKind::PiMultiple, q); }
  // Decimal literal known to +-10^-digits.
  static BasisConstant literal(const std::string& text, int digits) {
    BasisConstant c;
    c.kind_ = ConstKind::DecimalLiteral;
    c.text_ = text;
    c.digits_ = digits;
    c.q_ = parse_decimal(text);
    if (digits < 1) fail(Errc::BadParameter, "literal precision must be positive");
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    c.err_ = mpq_class(1, ten_pow);
    if (c.q_ - c.err_ <= 0) fail(Errc::BadParameter, "literal constant must be positive: " + text);
    return c;
  }

  ConstKind kind() const { return kind_; }
  const mpq_class& param() const { return q_; }
  int literal_digits() const { return digits_; }

  std::string descriptor() const {
    switch (kind_) {
      case ConstKind::Rational: return rat_str(q_);
      case ConstKind::SqrtRational: return "sqrt(" + rat_str(q_) + ")";
      case ConstKind::LogRational: return "log(" + rat_str(q_) + ")";
      case ConstKind::PiMultiple:
        if (q_ == 1) return "pi";
        if (q_.get_num() == 1) return "pi/" + q_.get_den().get_str();
        if (q_.get_den() == 1) return q_.get_num().get_str() + "*pi";
        return q_.get_num().get_str() + "*pi/" + q_.get_den().get_str();
      case ConstKind::DecimalLiteral: return "lit:" + text_ + ":" + std::to_string(digits_);
    }
    return "?";
  }

  Interval eval(long bits) const {
    switch (kind_) {
      case ConstKind::Rational: return Interval::from_q(q_, bits);
      case ConstKind::SqrtRational: return sqrt(Interval::from_q(q_, bits));
      case ConstKind::LogRational: return log(Interval::from_q(q_, bits));
      case ConstKind::PiMultiple: return Interval::pi(bits) * Interval::from_q(q_, bits);
      case ConstKind::DecimalLiteral: {
        Interval v = Interval::from_q(q_, bits);
        Interval e = Interval::from_q(err_, bits);
        Interval r(bits);
        mpfr_sub(r.lo_mut(), v.lo(), e.hi(), MPFR_RNDD);
        mpfr_add(r.hi_mut(), v.hi(), e.hi(), MPFR_RNDU);
        return r;
      }
    }
    fail(Errc::Internal, "bad constant kind");
  }

  bool operator==(const BasisConstant& o) const {
    return kind_ == o.kind_ && q_ == o.q_ && (kind_ != ConstKind::DecimalLiteral || digits_ == o.digits_);
  }
  bool operator!=(const BasisConstant& o) const { return !(*this == o); }

 private:
  static BasisConstant make(ConstKind k, const mpq_class& q) {
    if (q <= 0) fail(Errc::BadParameter, "basis constant parameter must be positive, got " + rat_str(q));
    BasisConstant c;
    c.kind_ = k;
    c.q_ = q;
    c.q_.canonicalize();
    return c;
  }
  static mpq_class parse_decimal(const std::string& s) {
    std::string digits;
    long frac = -1;
    for (char ch : s) {
      if (ch == '.') {
        if (frac >= 0) fail(Errc::ParseError, "bad decimal literal: " + s);
        frac = 0;
      } else if (ch >= '0' && ch <= '9') {
        digits.push_back(ch);
        if (frac >= 0) ++frac;
      } else {
        fail(Errc::ParseError, "bad decimal literal: " + s);
      }
    }
    if (digits.empty()) fail(Errc::ParseError, "bad decimal literal: " + s);
    mpz_class num(digits, 10), den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(std::max(frac, 0L)));
    mpq_class r(num, den);
    r.canonicalize();
    return r;
  }

  ConstKind kind_ = ConstKind::Rational;
  mpq_class q_ = 1;
  std::string text_;
  int digits_ = 0;
  mpq_class err_ = 0;
};

// ---------------------------------------------------------------------------
// Coordinate vectors: sparse, sorted by basis index, no zero entries.

using Coords = std::vector<std::pair<std::uint32_t, mpq_class>>;

inline Coords coords_add(const Coords& a, const Coords& b, int sign = 1) {
  Coords r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.emplace_back(b[j].first, sign > 0 ? b[j].second : mpq_class(-b[j].second));
      ++j;
    } else {
      mpq_class s = sign > 0 ? mpq_class(a[i].second + b[j].second) : mpq_class(a[i].second - b[j].second);
      if (s != 0) r.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return r;
}
inline Coords coords_scale(const Coords& a, const mpq_class& k) {
  Coords r;
  if (k == 0) return r;
  r.reserve(a.size());
  for (auto& [i, c] : a) r.emplace_back(i, c * k);
  return r;
}
inline bool coords_equal(const Coords& a, const Coords& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || a[i].second != b[i].second) return false;
  return true;
}
inline bool coords_lex_less(const Coords& a, const Coords& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i].first != b[i].first) return a[i].first < b[i].first;
    int c = cmp(a[i].second, b[i].second);
    if (c) return c < 0;
  }
  return a.size() < b.size();
}
inline std::size_t coords_hash(const Coords& a) {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (auto& [i, c] : a) {
    mix(i);
    mix(mpz_get_ui(c.get_num_mpz_t()) * (mpz_sgn(c.get_num_mpz_t()) < 0 ? 3 : 1));
    mix(mpz_get_ui(c.get_den_mpz_t()));
  }
  return h;
}
struct CoordsHash {
  std::size_t operator()(const Coords& a) const { return coords_hash(a); }
};
struct CoordsEq {
  bool operator()(const Coords& a, const Coords& b) const { return coords_equal(a, b); }
};
inline bool coords_nonneg(const Coords& a) {
  for (auto& [i, c] : a)
    if (c < 0) return false;
  return true;
}
inline mpq_class coords_get(const Coords& a, std::uint32_t idx) {
  for (auto& [i, c] : a)
    if (i == idx) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// Basis

class Basis {
 public:
  explicit Basis(std::vector<BasisConstant> constants, bool independence_asserted = true)
      : constants_(std::move(constants)), independent_(independence_asserted) {
    if (constants_.empty()) fail(Errc::BadParameter, "basis must be nonempty");
    for (size_t i = 0; i < constants_.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        if (constants_[i] == constants_[j])
          fail(Errc::BadParameter, "duplicate basis constant " + constants_[i].descriptor());
    cache_.resize(constants_.size());
    for (auto& c : constants_) {
      Interval v = c.eval(128);
      if (!v.pos()) fail(Errc::BadParameter, "basis constant is not positive: " + c.descriptor());
      dlo_.push_back(v.lo_d());
      dhi_.push_back(v.hi_d());
    }
  }

  size_t size() const { return constants_.size(); }
  const BasisConstant& at(size_t i) const { return constants_.at(i); }
  const std::vector<BasisConstant>& constants() const { return constants_; }
  bool independence_asserted() const { return independent_; }
  double dlo(size_t i) const { return dlo_[i]; }
  double dhi(size_t i) const { return dhi_[i]; }

  std::optional<std::uint32_t> index_of(const BasisConstant& c) const {
    for (size_t i = 0; i < constants_.size(); ++i)
      if (constants_[i] == c) return static_cast<std::uint32_t>(i);
    return std::nullopt;
  }

  // Enclosure of constant i; cached per precision, safe for concurrent use.
  Interval value(size_t i, long bits) const {
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto& m = cache_[i];
      auto it = m.lower_bound(bits);
      if (it != m.end()) return it->second.with_prec(bits);
    }
    Interval v = constants_[i].eval(bits);
    std::lock_guard<std::mutex> lk(mu_);
    cache_[i].emplace(bits, v);
    return v;
  }

  bool same_as(const Basis& o) const {
    if (this == &o) return true;
    if (constants_.size() != o.constants_.size()) return false;
    for (size_t i = 0; i < constants_.size(); ++i)
      if (constants_[i] != o.constants_[i]) return false;
    return true;
  }

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < constants_.size(); ++i) {
      if (i) s += ", ";
      s += constants_[i].descriptor();
    }
    return s;
  }

 private:
  std::vector<BasisConstant> constants_;
  bool independent_;
  std::vector<double> dlo_, dhi_;
  mutable std::mutex mu_;
  mutable std::vector<std::map<long, Interval>> cache_;
};

using BasisPtr = std::shared_ptr<const Basis>;

inline BasisPtr make_basis(std::vector<BasisConstant> cs, bool independent = true) {
  return std::make_shared<const Basis>(std::move(cs), independent);
}

inline void require_same_basis(const BasisPtr& a, const BasisPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->same_as(*b)) fail(Errc::BasisMismatch, "operands use different bases");
}

// Enclosure of sum c_i * K_i.
inline Interval eval_coords(const Basis& basis, const Coords& c, long bits) {
  long work = bits + 8 + 2 * static_cast<long>(std::log2(c.size() + 1));
  Interval acc(work);
  for (auto& [i, q] : c) acc = acc + Interval::from_q(q, work) * basis.value(i, work);
  return acc;
}

// Certified double enclosure of sum c_i * K_i.
inline std::pair<double, double> double_enclosure(const Basis& basis, const Coords& c) {
  if (c.empty()) return {0.0, 0.0};
  double mid = 0, mag = 0, rad = 0;
  for (auto& [i, q] : c) {
    double cd = q.get_d();
    double lo = basis.dlo(i), hi = basis.dhi(i);
    double v = 0.5 * (lo + hi);
    mid += cd * v;
    mag += std::fabs(cd * v);
    rad += std::fabs(cd) * (hi - lo);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  rad = rad * 1.0001 + mag * eps * (8.0 + 2.0 * static_cast<double>(c.size())) + 1e-300;
  return {mid - rad, mid + rad};
}

// ---------------------------------------------------------------------------
// Exponent

class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(BasisPtr b) : basis_(std::move(b)) {}

  static Exponent from_coords(BasisPtr b, Coords c) {
    for (auto& [i, q] : c) {
      if (i >= b->size()) fail(Errc::BasisMismatch, "coordinate index beyond basis");
      if (q < 0) fail(Errc::InvalidArgument, "exponent coordinates must be nonnegative");
    }
    return raw(std::move(b), std::move(c));
  }
  // Signed coordinates allowed; the numeric value must still be positive.
  static Exponent from_signed_coords(BasisPtr b, Coords c) {
    Exponent e = raw(std::move(b), std::move(c));
    if (!e.coords_.empty() && !(e.lo_ > 0)) {
      Interval v = eval_coords(*e.basis_, e.coords_, 256);
      if (!v.pos()) fail(Errc::InvalidArgument, "signed exponent is not certifiably positive");
    }
    return e;
  }
  static Exponent unit(BasisPtr b, std::uint32_t idx, const mpq_class& scale = 1) {
    Coords c;
    if (scale != 0) c.emplace_back(idx, scale);
    return from_coords(std::move(b), std::move(c));
  }
  // Internal constructor: trusts the caller on sortedness and signs.
  static Exponent raw(BasisPtr b, Coords c) {
    Exponent e(std::move(b));
    e.coords_ = std::move(c);
    auto [lo, hi] = double_enclosure(*e.basis_, e.coords_);
    e.lo_ = lo;
    e.hi_ = hi;
    return e;
  }

  const BasisPtr& basis() const { return basis_; }
  const Coords& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double approx() const { return 0.5 * (lo_ + hi_); }
  mpq_class coord(std::uint32_t i) const { return coords_get(coords_, i); }

  Exponent operator+(const Exponent& o) const {
    require_same_basis(basis_, o.basis_);
    Exponent e(basis_);
    e.coords_ = coords_add(coords_, o.coords_);
    e.lo_ = std::nextafter(lo_ + o.lo_, -std::numeric_limits<double>::infinity());
    e.hi_ = std::nextafter(hi_ + o.hi_, std::numeric_limits<double>::infinity());
    return e;
  }
  Exponent scaled(const mpq_class& k) const {
    if (k < 0) fail(Errc::InvalidArgument, "negative exponent scale");
    return raw(basis_, coords_scale(coords_, k));
  }
  bool operator==(const Exponent& o) const { return coords_equal(coords_, o.coords_); }
  bool operator!=(const Exponent& o) const { return !(*this == o); }

  // Human-readable form, e.g. "4+5*sqrt(2)".
  std::string str() const {
    if (coords_.empty()) return "0";
    std::string s;
    for (auto& [i, q] : coords_) {
      const BasisConstant& k = basis_->at(i);
      std::string term;
      bool unit_one = k.kind() == ConstKind::Rational && k.param() == 1;
      if (unit_one) {
        term = rat_str(q);
      } else if (q == 1) {
        term = k.descriptor();
      } else {
        term = rat_str(q) + "*" + k.descriptor();
      }
      if (!s.empty()) s += (q < 0 ? "" : "+");
      s += term;
    }
    return s;
  }
  // Tab-free coordinate vector text "(c0,c1,...)" over the full basis.
  std::string coord_str() const {
    std::string s = "(";
    for (size_t i = 0; i < basis_->size(); ++i) {
      if (i) s += ",";
      s += rat_str(coord(static_cast<std::uint32_t>(i)));
    }
    return s + ")";
  }

 private:
  BasisPtr basis_;
  Coords coords_;
  double lo_ = 0, hi_ = 0;
};

enum class Ordering { LT, EQ, GT };

inline const char* ordering_name(Ordering o) {
  return o == Ordering::LT ? "LT" : (o == Ordering::EQ ? "EQ" : "GT");
}

// Enclosure of e at the given precision.
inline Interval value(const Exponent& e, long bits) {
  if (bits < 16) fail(Errc::InvalidArgument, "precision must be at least 16 bits");
  if (e.is_zero()) return Interval(bits);
  return eval_coords(*e.basis(), e.coords(), bits);
}

// Sign of sum c_i K_i for a nonzero coordinate vector, by interval refinement.
inline int certified_sign(const Basis& basis, const Coords& diff, double dlo, double dhi,
                          const char* what = "comparison") {
  if (diff.empty()) return 0;
  if (dlo > 0) return 1;
  if (dhi < 0) return -1;
  long cap = precision_cap();
  double prev_width = std::numeric_limits<double>::infinity();
  for (long bits = kStartPrecision; bits <= cap; bits *= 2) {
    Interval v = eval_coords(basis, diff, bits);
    if (v.pos()) return 1;
    if (v.neg()) return -1;
    double w = v.width_d();
    // Stalled refinement means a finite-precision literal is the bottleneck.
    if (w > 0.75 * prev_width && std::isfinite(prev_width))
      fail(Errc::TieUnresolved, std::string(what) + ": enclosures stopped shrinking at " +
                                    std::to_string(bits) + " bits (literal precision exhausted)");
    prev_width = w;
  }
  fail(Errc::TieUnresolved, std::string(what) + ": enclosures still overlap at the precision cap of " +
                                std::to_string(cap) + " bits; the independence assertion may be violated");
}

inline Ordering compare(const Exponent& a, const Exponent& b) {
  require_same_basis(a.basis(), b.basis());
  if (coords_equal(a.coords(), b.coords())) return Ordering::EQ;
  if (a.hi() < b.lo()) return Ordering::LT;
  if (a.lo() > b.hi()) return Ordering::GT;
  Coords d = coords_add(a.coords(), b.coords(), -1);
  int s = certified_sign(*a.basis(), d, a.lo() - b.hi(), a.hi() - b.lo());
  return s < 0 ? Ordering::LT : Ordering::GT;
}

inline bool exp_less(const Exponent& a, const Exponent& b) { return compare(a, b) == Ordering::LT; }

// ---------------------------------------------------------------------------
// Rationality of a finite set of exponents

enum class RationalityKind { Irrational, Rational, ShiftedRational };

struct RationalityResult {
  RationalityKind kind = RationalityKind::Irrational;
  std::optional<Exponent> omega;           // period (Rational, ShiftedRational)
  std::vector<mpz_class> multipliers;      // Rational: e_i = m_i * omega
  std::optional<Exponent> delta;           // ShiftedRational offset, 0 < delta < omega
};

namespace detail {
// If v = t * base for a rational t, return t.
inline std::optional<mpq_class> ratio_along(const Coords& v, const Coords& base) {
  if (v.empty()) return mpq_class(0);
  if (v.size() != base.size()) return std::nullopt;
  mpq_class t;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].first != base[i].first) return std::nullopt;
    mpq_class r = v[i].second / base[i].second;
    if (i == 0)
      t = r;
    else if (r != t)
      return std::nullopt;
  }
  return t;
}
}  // namespace detail

// detect_shift: also test for the shifted-rational pattern (only meaningful
// when exps is the full size set of a class).
inline RationalityResult rationality(const std::vector<Exponent>& exps, bool detect_shift = false) {
  if (exps.empty()) fail(Errc::EmptySet, "rationality of an empty set");
  BasisPtr basis = exps.front().basis();
  for (auto& e : exps) require_same_basis(basis, e.basis());

  const Coords* base = nullptr;
  for (auto& e : exps)
    if (!e.is_zero()) {
      base = &e.coords();
      break;
    }
  if (!base) fail(Errc::EmptySet, "rationality of a set containing only size 0");

  std::vector<mpq_class> ts;
  bool proportional = true;
  for (auto& e : exps) {
    auto t = detail::ratio_along(e.coords(), *base);
    if (!t) {
      proportional = false;
      break;
    }
    ts.push_back(*t);
  }
  RationalityResult out;
  if (proportional) {
    mpq_class g = 0;
    for (auto& t : ts)
      if (t != 0) g = (g == 0) ? t : rat_gcd(g, t);
    out.kind = RationalityKind::Rational;
    out.omega = Exponent::from_coords(basis, coords_scale(*base, g));
    for (auto& t : ts) {
      mpq_class m = t / g;
      out.multipliers.push_back(m.get_num());
    }
    return out;
  }
  if (!detect_shift) return out;

  const Exponent* vmin = &exps.front();
  for (auto& e : exps)
    if (compare(e, *vmin) == Ordering::LT) vmin = &e;
  std::vector<Coords> diffs;
  const Coords* dbase = nullptr;
  for (auto& e : exps) {
    diffs.push_back(coords_add(e.coords(), vmin->coords(), -1));
  }
  for (auto& d : diffs)
    if (!d.empty()) {
      dbase = &d;
      break;
    }
  if (!dbase) return out;
  mpq_class g = 0;
  for (auto& d : diffs) {
    auto t = detail::ratio_along(d, *dbase);
    if (!t) return out;
    if (*t != 0) g = (g == 0) ? mpq_class(abs(*t)) : rat_gcd(g, abs(*t));
  }
  Coords om = coords_scale(*dbase, g);
  // Orient omega positively.
  auto [olo, ohi] = double_enclosure(*basis, om);
  if (certified_sign(*basis, om, olo, ohi, "rationality") < 0) om = coords_scale(om, -1);
  Exponent omega = Exponent::from_signed_coords(basis, om);
  // delta = vmin - floor(vmin / omega) * omega; vmin/omega is irrational here.
  mpz_class n;
  long cap = precision_cap();
  bool ok = false;
  for (long bits = kStartPrecision; bits <= cap && !ok; bits *= 2) {
    Interval q = value(*vmin, bits) / value(omega, bits);
    ok = floor_exact(q, n);
  }
  if (!ok) fail(Errc::TieUnresolved, "rationality: cannot resolve floor(v_min / omega)");
  Coords dc = coords_add(vmin->coords(), coords_scale(om, mpq_class(n)), -1);
  out.kind = RationalityKind::ShiftedRational;
  out.omega = omega;
  out.delta = Exponent::from_signed_coords(basis, dc);
  return out;
}

// Lower bound on the smallest gap between distinct values of exps.
inline double min_gap_hint(std::vector<Exponent> exps, double upper) {
  if (exps.size() < 2) return std::numeric_limits<double>::infinity();
  for (auto& e : exps)
    if (e.lo() > upper) fail(Errc::InvalidArgument, "exponent exceeds the stated upper bound");
  std::sort(exps.begin(), exps.end(), exp_less);
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  double best = std::numeric_limits<double>::infinity();
  const Basis& basis = *exps.front().basis();
  for (size_t i = 1; i < exps.size(); ++i) {
    Coords d = coords_add(exps[i].coords(), exps[i - 1].coords(), -1);
    long cap = precision_cap();
    bool done = false;
    for (long bits = kStartPrecision; bits <= cap; bits *= 2) {
      Interval v = eval_coords(basis, d, bits);
      if (v.pos()) {
        best = std::min(best, v.lo_d());
        done = true;
        break;
      }
    }
    if (!done) fail(Errc::TieUnresolved, "min_gap_hint: cannot separate " + exps[i - 1].str() + " and " + exps[i].str());
  }
  return best;
}

}  // namespace irr
