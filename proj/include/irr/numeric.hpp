#pragma once

// Interval evaluation of generating-function expressions on 0 < z < 1, with
// forward-mode theta-derivatives (theta = z d/dz) and certified tail bounds
// for the built-in infinite families.

#include <gmpxx.h>

#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "irr/error.hpp"
#include "irr/exponents.hpp"
#include "irr/interval.hpp"
#include "irr/realexpr.hpp"

namespace irr {

struct Dual {
  Interval v;  // value
  Interval t;  // z * d/dz
};

struct EvalCtx {
  long bits = 128;
  double tail_tol = 1e-20;  // bound on each family tail enclosure width
};

enum class FamilyKind {
  LogIntegers,         // sum_{k >= start} z^{log k}
  KPlusHalfPowers,     // sum_{k >= 0} z^{k + 2^-k}
  MatchedStepLengths,  // sum_{k >= 1} z^{2 sqrt(1 + k^2)}
  GeneralStepPairs,    // sum_{k >= 1} (sum_{h >= 1} z^{sqrt(h^2 + k^2)})^2
};

inline const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::LogIntegers: return "log-integers";
    case FamilyKind::KPlusHalfPowers: return "k-plus-half-powers";
    case FamilyKind::MatchedStepLengths: return "matched-step-lengths";
    case FamilyKind::GeneralStepPairs: return "general-step-pairs";
  }
  return "?";
}

class Func;
using FuncPtr = std::shared_ptr<const Func>;

class Func {
 public:
  virtual ~Func() = default;
  virtual Dual eval(const Interval& z, const EvalCtx& ctx) const = 0;
  virtual std::string str() const = 0;
  Interval value(const Interval& z, const EvalCtx& ctx) const { return eval(z, ctx).v; }
};

namespace detail {
// B_n / n! for even n >= 2, from sum_{k=0}^{n} B_k/(k! (n+1-k)!) = [n == 0].
inline mpq_class bernoulli_over_factorial(int n) {
  static std::mutex mu;
  static std::vector<mpq_class> b{mpq_class(1)};  // b[k] = B_k / k!
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(b.size()) <= n) {
    int m = static_cast<int>(b.size());
    mpq_class acc = 0;
    for (int k = 0; k < m; ++k) {
      // 1/(m+1-k)!
      mpz_class f = 1;
      for (int i = 2; i <= m + 1 - k; ++i) f *= i;
      acc += b[static_cast<size_t>(k)] / mpq_class(f);
    }
    b.push_back(-acc);  // B_m/m! * 1/1! = -acc
  }
  return b[static_cast<size_t>(n)];
}
}  // namespace detail

namespace fn {

inline Interval one(long bits) { return Interval::from_si(1, bits); }

class ConstNode : public Func {
 public:
  explicit ConstNode(mpq_class q) : q_(std::move(q)) {}
  Dual eval(const Interval&, const EvalCtx& c) const override { return {Interval::from_q(q_, c.bits), Interval(c.bits)}; }
  std::string str() const override { return rat_str(q_); }

 private:
  mpq_class q_;
};

// z^gamma
class PowNode : public Func {
 public:
  explicit PowNode(RealExpr g) : g_(std::move(g)) {}
  Dual eval(const Interval& z, const EvalCtx& c) const override {
    Interval g = g_.eval(c.bits);
    if (g_.is_zero()) return {one(c.bits), Interval(c.bits)};
    Interval v = pow(z.with_prec(c.bits), g);
    return {v, g * v};
  }
  std::string str() const override { return "z^(" + g_.str() + ")"; }

 private:
  RealExpr g_;
};

class AddNode : public Func {
 public:
  AddNode(FuncPtr a, FuncPtr b, int sign) : a_(std::move(a)), b_(std::move(b)), sign_(sign) {}
  Dual eval(const Interval& z, const EvalCtx& c) const override {
    Dual x = a_->eval(z, c), y = b_->eval(z, c);
    if (sign_ > 0) return {x.v + y.v, x.t + y.t};
    return {x.v - y.v, x.t - y.t};
  }
  std::string str() const override { return "(" + a_->str() + (sign_ > 0 ? " + " : " - ") + b_->str() + ")"; }

 private:
  FuncPtr a_, b_;
  int sign_;
};

class MulNode : public Func {
 public:
  MulNode(FuncPtr a, FuncPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  Dual eval(const Interval& z, const EvalCtx& c) const override {
    Dual x = a_->eval(z, c), y = b_->eval(z, c);
    return {x.v * y.v, x.t * y.v + x.v * y.t};
  }
  std::string str() const override { return a_->str() + "*" + b_->str(); }

 private:
  FuncPtr a_, b_;
};

class DivNode : public Func {
 public:
  DivNode(FuncPtr a, FuncPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  Dual eval(const Interval& z, const EvalCtx& c) const override {
    Dual x = a_->eval(z, c), y = b_->eval(z, c);
    if (y.v.contains_zero()) fail(Errc::DegenerateSingularity, "division by a quantity enclosing zero in " + str());
    Interval q = x.v / y.v;
    return {q, (x.t - q * y.t) / y.v};
  }
  std::string str() const override { return "(" + a_->str() + ")/(" + b_->str() + ")"; }

 private:
  FuncPtr a_, b_;
};

class SqrtNode : public Func {
 public:
  explicit SqrtNode(FuncPtr a) : a_(std::move(a)) {}
  Dual eval(const Interval& z, const EvalCtx& c) const override {
    Dual x = a_->eval(z, c);
    if (!x.v.pos()) fail(Errc::DegenerateSingularity, "square root of a quantity not certifiably positive: " + str());
    Interval s = sqrt(x.v);
    return {s, x.t / mul_2si(s, 1)};
  }
  std::string str() const override { return "sqrt(" + a_->str() + ")"; }

 private:
  FuncPtr a_;
};

// ---------------------------------------------------------------------------
// Families. All terms are positive and increasing in z, so an interval
// argument is handled by evaluating the lower bound at z.lo and the upper
// bound at z.hi.

struct Enclosure {
  Interval lo_v, hi_v, lo_t, hi_t;
};

class FamilyNode : public Func {
 public:
  FamilyNode(FamilyKind k, long start) : kind_(k), start_(start) {}
  Dual eval(const Interval& z, const EvalCtx& c) const override {
    Interval zl = z.lower().with_prec(c.bits), zh = z.upper().with_prec(c.bits);
    if (!zh.pos()) return {Interval(c.bits), Interval(c.bits)};
    if (!(mpfr_cmp_ui(zh.hi(), 1) < 0)) fail(Errc::TailBoundFailure, std::string(family_name(kind_)) + " evaluated at z >= 1");
    Dual hi = point(zh, c);
    if (!zl.pos()) {
      Interval v(c.bits), t(c.bits);
      mpfr_set(v.hi_mut(), hi.v.hi(), MPFR_RNDU);
      mpfr_set(t.hi_mut(), hi.t.hi(), MPFR_RNDU);
      return {v, t};
    }
    if (mpfr_equal_p(zl.lo(), zh.lo())) return hi;
    Dual lo = point(zl, c);
    Interval v(c.bits), t(c.bits);
    mpfr_set(v.lo_mut(), lo.v.lo(), MPFR_RNDD);
    mpfr_set(v.hi_mut(), hi.v.hi(), MPFR_RNDU);
    mpfr_set(t.lo_mut(), lo.t.lo(), MPFR_RNDD);
    mpfr_set(t.hi_mut(), hi.t.hi(), MPFR_RNDU);
    return {v, t};
  }
  std::string str() const override { return std::string(family_name(kind_)) + "(" + std::to_string(start_) + ")"; }

  // Value and theta at a point z, each with its certified tail.
  Dual point(const Interval& z, const EvalCtx& c) const {
    switch (kind_) {
      case FamilyKind::LogIntegers: return log_integers(z, c);
      case FamilyKind::KPlusHalfPowers: return k_plus_half(z, c);
      case FamilyKind::MatchedStepLengths: return matched(z, c);
      case FamilyKind::GeneralStepPairs: return general_pairs(z, c);
    }
    fail(Errc::Internal, "bad family");
  }

 private:
  static Interval upto(const Interval& ub) {
    Interval r(ub.prec());
    mpfr_set(r.hi_mut(), ub.hi(), MPFR_RNDU);
    return r;
  }

  // sum_{k >= start} k^{-s}, s = log(1/z). The tail from K on is
  // Euler-Maclaurin with p Bernoulli terms; the remainder is at most
  // 2 zeta(2p)/(2 pi)^{2p} |f^{(2p-1)}(K)| because f^{(2p)} keeps one sign on [K, inf).
  // theta uses g = t^{-s} log t, with g^{(m)} = (-1)^m (s)_m t^{-s-m} (log t - sum_{i<m} 1/(s+i)).
  Dual log_integers(const Interval& z, const EvalCtx& c) const {
    const long bits = c.bits;
    Interval s = -log(z.with_prec(bits));
    Interval one_i = one(bits);
    if (!(s - one_i).pos()) fail(Errc::TailBoundFailure, "log-integer family diverges for z >= 1/e");
    Interval sm1 = s - one_i;
    long K = std::max<long>(start_, 64);
    Interval tv(bits), tt(bits);
    for (;; K *= 4) {
      Interval lK = log(Interval::from_si(K, bits));
      Interval fK = exp(-s * lK);  // K^{-s}
      Interval Kinv = one_i / Interval::from_si(K, bits);
      tv = fK * Interval::from_si(K, bits) / sm1 + mul_2si(fK, -1);
      tt = fK * Interval::from_si(K, bits) * (lK / sm1 + one_i / (sm1 * sm1)) + mul_2si(fK * lK, -1);
      // dm = (-1)^m (s)_m K^{-s-m}, hm = sum_{i<m} 1/(s+i)
      Interval dm = fK, hm(bits);
      Interval two_pi = mul_2si(Interval::pi(bits), 1);
      Interval rem_scale = one_i;  // 1/(2 pi)^{2p}
      bool done = false;
      for (int m = 1; m <= 120; ++m) {
        Interval sm = s + Interval::from_si(m - 1, bits);
        dm = -(dm * sm * Kinv);
        hm = hm + one_i / sm;
        if (m % 2 == 1) {
          int j2 = m + 1;  // 2j
          Interval bcoef = Interval::from_q(detail::bernoulli_over_factorial(j2), bits);
          tv = tv - bcoef * dm;
          tt = tt - bcoef * dm * (lK - hm);
          rem_scale = rem_scale / (two_pi * two_pi);
          // the sign condition on g^{(2p)} needs log K > sum_{i<2p} 1/(s+i)
          if (!(lK - hm - one_i / (s + Interval::from_si(m, bits))).pos()) break;
          // remainder with p = j2/2 terms: 2 zeta(2p) <= 4
          Interval rv = mul_2si(rem_scale * abs(dm), 2);
          Interval rt = mul_2si(rem_scale * abs(dm * (lK - hm)), 2);
          double w = std::max(rv.hi_d(), rt.hi_d());
          if (w <= c.tail_tol * 0.25 || w < 1e-300) {
            tv = tv + Interval::hull(-rv, rv);
            tt = tt + Interval::hull(-rt, rt);
            done = true;
            break;
          }
        }
      }
      if (done) break;
      if (K > (1L << 22)) fail(Errc::TailBoundFailure, "log-integer tail bound too wide");
    }
    Interval v(bits), t(bits);
    for (long k = start_; k < K; ++k) {
      Interval lk = log(Interval::from_si(k, bits));
      Interval term = exp(-s * lk);
      v = v + term;
      t = t + lk * term;
    }
    return {v + tv, t + tt};
  }

  Dual k_plus_half(const Interval& z, const EvalCtx& c) const {
    const long bits = c.bits;
    Interval one_i = one(bits);
    Interval omz = one_i - z;
    long K = 16;
    Interval tv(bits), tt(bits);
    for (;;) {
      Interval zk1 = pow_q(z, mpq_class(K + 1));
      tv = upto(zk1 / omz);
      Interval kk = Interval::from_si(K + 2, bits) - Interval::from_si(K + 1, bits) * z;
      tt = upto(zk1 * kk / (omz * omz));
      if (std::max(tv.width_d(), tt.width_d()) <= c.tail_tol || K > 100000) break;
      K *= 2;
    }
    Interval v(bits), t(bits);
    for (long k = std::max<long>(start_, 0); k <= K; ++k) {
      mpq_class e = mpq_class(k) + mpq_class(1, 1) / (mpz_class(1) << k);
      e.canonicalize();
      Interval ev = Interval::from_q(e, bits);
      Interval term = pow(z, ev);
      v = v + term;
      t = t + ev * term;
    }
    return {v + tv, t + tt};
  }

  Dual matched(const Interval& z, const EvalCtx& c) const {
    const long bits = c.bits;
    Interval one_i = one(bits);
    Interval q = z * z;
    Interval omq = one_i - q;
    long K = 16;
    Interval tv(bits), tt(bits);
    for (;;) {
      Interval qk1 = pow_q(q, mpq_class(K + 1));
      tv = upto(qk1 / omq);
      Interval kk = Interval::from_si(K + 2, bits) - Interval::from_si(K + 1, bits) * q;
      tt = upto(mul_2si(qk1 * kk / (omq * omq), 1));
      if (std::max(tv.width_d(), tt.width_d()) <= c.tail_tol || K > 100000) break;
      K *= 2;
    }
    Interval v(bits), t(bits);
    Interval lz = log(z);
    for (long k = std::max<long>(start_, 1); k <= K; ++k) {
      Interval e = mul_2si(sqrt(Interval::from_si(1 + k * k, bits)), 1);
      Interval term = exp(e * lz);
      v = v + term;
      t = t + e * term;
    }
    return {v + tv, t + tt};
  }

  // Tails use sqrt(h^2+k^2) >= h, sqrt(h^2+k^2) >= (h+k)/sqrt 2 and
  // u z^u <= (2 / (e L)) z^{u/2} with L = log(1/z).
  Dual general_pairs(const Interval& z, const EvalCtx& c) const {
    const long bits = c.bits;
    Interval one_i = one(bits);
    Interval L = -log(z);
    Interval r2 = sqrt(Interval::from_si(2, bits));
    Interval q = exp(-L / r2);                          // z^{1/sqrt2}
    Interval q2 = exp(-L / mul_2si(r2, 1));             // z^{1/(2 sqrt2)}
    Interval zh = exp(mul_2si(-L, -1));                 // z^{1/2}
    Interval cst = Interval::from_si(2, bits) / (exp(one_i) * L);
    long N = 16;
    Interval inner_v(bits), inner_t(bits), outer_v(bits), outer_t(bits);
    for (;;) {
      inner_v = upto(pow_q(z, mpq_class(N + 1)) / (one_i - z));
      inner_t = upto(cst * pow_q(zh, mpq_class(N + 1)) / (one_i - zh));
      Interval oq = one_i - q;
      outer_v = upto(pow_q(q, mpq_class(2 * (N + 2))) / (oq * oq * (one_i - q * q)));
      Interval qq2 = q * q2;
      outer_t = upto(mul_2si(cst, 1) / (oq * (one_i - q2)) * pow_q(qq2, mpq_class(N + 2)) / (one_i - qq2));
      double w = std::max({inner_v.width_d() * N, inner_t.width_d() * N, outer_v.width_d(), outer_t.width_d()});
      if (w <= c.tail_tol || N > 4096) break;
      N *= 2;
    }
    Interval lz = -L;
    Interval v(bits), t(bits);
    for (long k = 1; k <= N; ++k) {
      Interval A(bits), At(bits);
      for (long h = 1; h <= N; ++h) {
        Interval e = sqrt(Interval::from_si(h * h + k * k, bits));
        Interval term = exp(e * lz);
        A = A + term;
        At = At + e * term;
      }
      A = A + inner_v;
      At = At + inner_t;
      v = v + A * A;
      t = t + mul_2si(A * At, 1);
    }
    return {v + outer_v, t + outer_t};
  }

  FamilyKind kind_;
  long start_;
};

// Arbitrary callable leaf, used for closed forms assembled by builders.
class LambdaNode : public Func {
 public:
  LambdaNode(std::function<Dual(const Interval&, const EvalCtx&)> f, std::string name)
      : f_(std::move(f)), name_(std::move(name)) {}
  Dual eval(const Interval& z, const EvalCtx& c) const override { return f_(z, c); }
  std::string str() const override { return name_; }

 private:
  std::function<Dual(const Interval&, const EvalCtx&)> f_;
  std::string name_;
};

}  // namespace fn

// ---------------------------------------------------------------------------
// Builders

inline FuncPtr fconst(const mpq_class& q) { return std::make_shared<fn::ConstNode>(q); }
inline FuncPtr fpow(const RealExpr& g) { return std::make_shared<fn::PowNode>(g); }
inline FuncPtr fpow(const Exponent& e) { return fpow(Bound::of(e).expr()); }
inline FuncPtr fz() { return fpow(RealExpr::rational(1)); }
inline FuncPtr operator+(FuncPtr a, FuncPtr b) { return std::make_shared<fn::AddNode>(std::move(a), std::move(b), 1); }
inline FuncPtr operator-(FuncPtr a, FuncPtr b) { return std::make_shared<fn::AddNode>(std::move(a), std::move(b), -1); }
inline FuncPtr operator*(FuncPtr a, FuncPtr b) { return std::make_shared<fn::MulNode>(std::move(a), std::move(b)); }
inline FuncPtr operator/(FuncPtr a, FuncPtr b) { return std::make_shared<fn::DivNode>(std::move(a), std::move(b)); }
inline FuncPtr operator*(const mpq_class& k, FuncPtr a) { return fconst(k) * std::move(a); }
inline FuncPtr fsqrt(FuncPtr a) { return std::make_shared<fn::SqrtNode>(std::move(a)); }
inline FuncPtr ffamily(FamilyKind k, long start = 0) { return std::make_shared<fn::FamilyNode>(k, start); }
inline FuncPtr fsum(const std::vector<std::pair<mpq_class, RealExpr>>& terms) {
  FuncPtr acc = fconst(0);
  for (auto& [c, g] : terms) acc = acc + c * fpow(g);
  return acc;
}

// ---------------------------------------------------------------------------
// Root finding

struct RootResult {
  Interval rho;
  long bits = 128;
};

namespace detail {
// Nearest point of precision `bits` (a degenerate interval).
inline Interval point_at(const Interval& x, long bits) {
  Interval r(bits);
  mpfr_set(r.lo_mut(), x.lo(), MPFR_RNDN);
  mpfr_set(r.hi_mut(), r.lo(), MPFR_RNDN);
  return r;
}
inline int sign_at(const Func& F, const Interval& z, EvalCtx ctx, long max_bits = 4096) {
  for (;;) {
    Interval v;
    try {
      v = F.value(z, ctx);
    } catch (const Error& e) {
      // Outside the domain of a family or a square root.
      if (e.code() == Errc::TailBoundFailure || e.code() == Errc::DegenerateSingularity) return -2;
      throw;
    }
    if (v.pos()) return 1;
    if (v.neg()) return -1;
    if (ctx.bits >= max_bits) return 0;
    ctx.tail_tol = std::max(ctx.tail_tol / 1e3, 1e-250);
    ctx.bits += 32;
  }
}
// True when F is certainly positive on [a, b], by interval subdivision.
inline bool certify_positive(const Func& F, const Interval& a, const Interval& b, const EvalCtx& ctx, int depth = 0) {
  Interval iv(ctx.bits);
  mpfr_set(iv.lo_mut(), a.lo(), MPFR_RNDD);
  mpfr_set(iv.hi_mut(), b.hi(), MPFR_RNDU);
  try {
    if (F.value(iv, ctx).pos()) return true;
  } catch (const Error& e) {
    if (e.code() != Errc::DegenerateSingularity && e.code() != Errc::Internal) throw;
  }
  if (depth > 24) return false;
  Interval m = detail::point_at(Interval::hull(a, b).midpoint(), ctx.bits);
  return certify_positive(F, a, m, ctx, depth + 1) && certify_positive(F, m, b, ctx, depth + 1);
}
}  // namespace detail

// Least positive root of F on (0, 1), where F(0+) > 0 and F changes sign.
inline RootResult find_root(const Func& F, double tol) {
  if (!(tol > 0)) fail(Errc::InvalidArgument, "tolerance must be positive");
  long bits = std::max<long>(64, static_cast<long>(-std::log2(tol)) + 24);
  EvalCtx ctx{bits, 1e-6};
  const int grid = 256;
  Interval a = Interval::from_si(0, bits), b(bits);
  bool found = false;
  for (int j = 1; j < grid; ++j) {
    Interval zj = Interval::from_q(mpq_class(j, grid), bits);
    int s = detail::sign_at(F, zj, ctx);
    if (s == 1) {
      a = zj;
      continue;
    }
    if (s == -1 || s == -2) {
      if (s == -2) {
        // Past the radius of a divergent family: bisect for the last finite point.
        Interval lo = a, hi = zj;
        for (int it = 0; it < 60; ++it) {
          Interval m = detail::point_at(Interval::hull(lo, hi).midpoint(), bits);
          int sm = detail::sign_at(F, m, ctx);
          if (sm == 1) lo = m;
          else if (sm == -1) { hi = m; break; }
          else hi = m;
        }
        if (detail::sign_at(F, hi, ctx) != -1) fail(Errc::NoSignChange, "no certified sign change before divergence");
        b = hi;
        a = lo;
      } else {
        b = zj;
      }
      found = true;
      break;
    }
    if (s == 0) continue;
  }
  if (!found) fail(Errc::NoSignChange, "no sign change found on (0, 1)");
  // No root below a.
  if (mpfr_sgn(a.lo()) > 0 && !detail::certify_positive(F, Interval::from_si(0, bits), a, ctx))
    fail(Errc::NoSignChange, "cannot certify that no root precedes the bracket");
  while ((b.upper() - a.lower()).hi_d() > tol) {
    Interval m = detail::point_at(Interval::hull(a, b).midpoint(), bits);
    int s = detail::sign_at(F, m, ctx);
    if (s != 1 && s != -1) {
      // Possibly an exact root at the midpoint: split off-centre instead.
      for (int k : {3, 5}) {
        Interval w = b.upper().with_prec(bits) - a.lower().with_prec(bits);
        m = detail::point_at((a.lower().with_prec(bits) + w * Interval::from_q(mpq_class(k, 8), bits)).midpoint(), bits);
        s = detail::sign_at(F, m, ctx);
        if (s == 1 || s == -1) break;
      }
    }
    if (s == 1)
      a = m;
    else if (s == -1)
      b = m;
    else
      fail(Errc::TieUnresolved, "cannot determine the sign of the form near its root");
  }
  Interval rho = Interval::hull(a, b);
  return {rho, bits};
}

}  // namespace irr
