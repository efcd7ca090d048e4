#pragma once

// Closed intervals [lo, hi] with MPFR endpoints and outward rounding.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "irr/error.hpp"

namespace irr {

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 64) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  Interval(const Interval& o) {
    mpfr_init2(lo_, o.prec());
    mpfr_init2(hi_, o.prec());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval(Interval&& o) noexcept : Interval(mpfr_get_prec(o.lo_)) { swap(o); }
  Interval& operator=(const Interval& o) {
    if (this != &o) {
      mpfr_set_prec(lo_, o.prec());
      mpfr_set_prec(hi_, o.prec());
      mpfr_set(lo_, o.lo_, MPFR_RNDD);
      mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
  }
  Interval& operator=(Interval&& o) noexcept {
    swap(o);
    return *this;
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }
  void swap(Interval& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }

  static Interval from_si(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
  }
  static Interval from_d(double v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
  }
  static Interval from_z(const mpz_class& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
  }
  static Interval from_q(const mpq_class& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  // [lo, hi] from two doubles; caller guarantees lo <= hi.
  static Interval from_bounds(double lo, double hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_d(r.lo_, lo, MPFR_RNDD);
    mpfr_set_d(r.hi_, hi, MPFR_RNDU);
    return r;
  }
  static Interval pi(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
  }
  static Interval hull(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_ptr lo_mut() { return lo_; }
  mpfr_ptr hi_mut() { return hi_; }

  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }
  double width_d() const {
    mpfr_t w;
    mpfr_init2(w, prec() + 2);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
  }
  Interval lower() const { return point(lo_); }
  Interval upper() const { return point(hi_); }
  Interval midpoint() const {
    Interval r(prec() + 1);
    mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
    mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
    return r;
  }

  bool is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
  bool pos() const { return mpfr_sgn(lo_) > 0; }
  bool neg() const { return mpfr_sgn(hi_) < 0; }
  bool nonneg() const { return mpfr_sgn(lo_) >= 0; }
  bool contains_zero() const { return !pos() && !neg(); }
  bool contains(const Interval& o) const {
    return mpfr_lessequal_p(lo_, o.lo_) && mpfr_greaterequal_p(hi_, o.hi_);
  }
  bool contains_d(double v) const { return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0; }
  bool certainly_less(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }
  bool certainly_greater(const Interval& o) const { return mpfr_greater_p(lo_, o.hi_); }
  bool overlaps(const Interval& o) const { return !certainly_less(o) && !certainly_greater(o); }

  // Outward decimal endpoints.
  std::string lo_str(int digits = 17) const { return fmt(lo_, digits, 'D'); }
  std::string hi_str(int digits = 17) const { return fmt(hi_, digits, 'U'); }
  std::string str(int digits = 17) const { return "[" + lo_str(digits) + ", " + hi_str(digits) + "]"; }

  Interval with_prec(mpfr_prec_t p) const {
    Interval r(p);
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

 private:
  static Interval point(mpfr_srcptr v) {
    Interval r(mpfr_get_prec(v));
    mpfr_set(r.lo_, v, MPFR_RNDD);
    mpfr_set(r.hi_, v, MPFR_RNDU);
    return r;
  }
  static std::string fmt(mpfr_srcptr v, int digits, char rnd) {
    char* buf = nullptr;
    std::string f = std::string("%.") + std::to_string(digits) + "R" + rnd + "g";
    mpfr_asprintf(&buf, f.c_str(), v);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  mpfr_t lo_, hi_;

  friend Interval operator+(const Interval&, const Interval&);
  friend Interval operator-(const Interval&, const Interval&);
  friend Interval operator-(const Interval&);
  friend Interval operator*(const Interval&, const Interval&);
  friend Interval operator/(const Interval&, const Interval&);
  friend Interval sqrt(const Interval&);
  friend Interval log(const Interval&);
  friend Interval exp(const Interval&);
  friend Interval abs(const Interval&);
  friend Interval mul_2si(const Interval&, long);
};

inline mpfr_prec_t join_prec(const Interval& a, const Interval& b) { return std::max(a.prec(), b.prec()); }

inline Interval operator+(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}
inline Interval operator-(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}
inline Interval operator-(const Interval& a) {
  Interval r(a.prec());
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}
inline Interval operator*(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  if (a.nonneg() && b.nonneg()) {
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  mpfr_t t;
  mpfr_init2(t, r.prec());
  mpfr_srcptr av[2] = {a.lo_, a.hi_};
  mpfr_srcptr bv[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : av) {
    for (auto y : bv) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}
inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) fail(Errc::Internal, "interval division by an interval containing zero");
  Interval r(join_prec(a, b));
  mpfr_t t;
  mpfr_init2(t, r.prec());
  mpfr_srcptr av[2] = {a.lo_, a.hi_};
  mpfr_srcptr bv[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : av) {
    for (auto y : bv) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}
inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

inline Interval abs(const Interval& a) {
  if (a.nonneg()) return a;
  if (a.neg()) return -a;
  Interval r(a.prec());
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  if (mpfr_less_p(r.hi_, a.hi_)) mpfr_set(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}
// Negative parts are clamped to zero; a wholly negative argument is an error.
inline Interval sqrt(const Interval& a) {
  if (a.neg()) fail(Errc::Internal, "sqrt of a negative interval");
  Interval r(a.prec());
  if (mpfr_sgn(a.lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}
inline Interval log(const Interval& a) {
  if (!a.pos()) fail(Errc::Internal, "log of a non-positive interval");
  Interval r(a.prec());
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}
inline Interval exp(const Interval& a) {
  Interval r(a.prec());
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}
inline Interval mul_2si(const Interval& a, long k) {
  Interval r(a.prec());
  mpfr_mul_2si(r.lo_, a.lo_, k, MPFR_RNDD);
  mpfr_mul_2si(r.hi_, a.hi_, k, MPFR_RNDU);
  return r;
}
// x^y for x > 0, or x >= 0 with y > 0.
inline Interval pow(const Interval& x, const Interval& y) {
  if (x.pos()) return exp(y * log(x));
  if (x.nonneg() && y.pos()) {
    Interval r(x.prec());
    if (mpfr_sgn(x.hi()) == 0) return r;
    Interval top = exp(y * log(x.upper()));
    mpfr_set(r.hi_mut(), top.hi(), MPFR_RNDU);
    return r;
  }
  fail(Errc::Internal, "pow with a non-positive base");
}
inline Interval pow_q(const Interval& x, const mpq_class& q) {
  if (q == 0) return Interval::from_si(1, x.prec());
  if (q.get_den() == 1 && q > 0 && q.get_num() <= 64) {
    long n = q.get_num().get_si();
    Interval r = Interval::from_si(1, x.prec());
    Interval b = x;
    while (n) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }
  return pow(x, Interval::from_q(q, x.prec()));
}
inline Interval sqr(const Interval& a) {
  Interval m = abs(a);
  return m * m;
}
inline Interval square_root_pi(mpfr_prec_t prec) { return sqrt(Interval::pi(prec)); }

// Interval floor: returns true and sets out when floor(lo) == floor(hi).
inline bool floor_exact(const Interval& a, mpz_class& out) {
  mpfr_t f1, f2;
  mpfr_init2(f1, a.prec());
  mpfr_init2(f2, a.prec());
  mpfr_floor(f1, a.lo());
  mpfr_floor(f2, a.hi());
  bool ok = mpfr_equal_p(f1, f2);
  if (ok) mpfr_get_z(out.get_mpz_t(), f1, MPFR_RNDN);
  mpfr_clear(f1);
  mpfr_clear(f2);
  return ok;
}

}  // namespace irr
