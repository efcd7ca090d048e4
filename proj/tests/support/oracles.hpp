#pragma once

// Independent brute-force counters. None of these use the series engine:
// sizes are compared exactly where the arithmetic allows it and otherwise in
// long double with an explicit separation check.

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

inline mpz_class binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline mpz_class catalan(long k) { return binom(2 * k, k) / (k + 1); }

// a <= b for reals known only as long doubles that are never supposed to tie.
inline bool le_separated(long double a, long double b, const char* what = "oracle comparison") {
  if (std::fabs(a - b) < 1e-9L) throw std::runtime_error(std::string(what) + ": values too close to separate");
  return a <= b;
}

// Cumulative count of T^{1,sqrt 2} up to the integer x: sum of C(a+b, a) over
// a + b sqrt 2 <= x, decided exactly as 2 b^2 <= (x - a)^2.
inline mpz_class strip_sqrt2_upto(long x) {
  mpz_class s = 0;
  for (long a = 0; a <= x; ++a)
    for (long b = 0; 2 * b * b <= (x - a) * (x - a); ++b) s += binom(a + b, a);
  return s;
}

// Coefficient of z^(a + b sqrt 2) in 1/(1 - z - z^sqrt2).
inline mpz_class strip_sqrt2_coeff(long a, long b) { return binom(a + b, a); }

// Ordered factorizations H(n): H(1) = 1, H(n) = sum over proper divisors.
inline std::vector<mpz_class> ordered_factorizations(long n) {
  std::vector<mpz_class> h(n + 1, 0);
  if (n >= 1) h[1] = 1;
  for (long d = 1; d <= n; ++d)
    for (long m = 2 * d; m <= n; m += d) h[m] += h[d];
  return h;
}

// Motzkin paths with unit flats and steps of size beta = sqrt(2): n flats and
// k up/down pairs give C(n + 2k, 2k) Cat(k) paths of size n + 2k sqrt 2.
inline mpz_class motzkin_sqrt2_upto(long x) {
  mpz_class s = 0;
  for (long n = 0; n <= x; ++n)
    for (long k = 0; 8 * k * k <= (x - n) * (x - n); ++k) s += binom(n + 2 * k, 2 * k) * catalan(k);
  return s;
}

// Tall Dyck paths: n matched pairs with heights k_1..k_n in any order; the
// pairs form a Dyck word in Cat(n) ways. Size sum 2 sqrt(1 + k_i^2).
inline mpz_class tall_dyck_upto(long double x) {
  mpz_class s = 0;
  std::function<void(long, long double, long)> rec = [&](long n, long double used, long) {
    s += catalan(n);
    for (long k = 1;; ++k) {
      long double step = 2 * std::sqrt(1.0L + k * k);
      if (!le_separated(used + step, x, "tall-dyck")) break;
      rec(n + 1, used + step, k);
    }
  };
  rec(0, 0, 0);
  return s;
}

// Exact reals a0 + a1 sqrt2 + a2 sqrt3 + a3 sqrt5 with rational coordinates.
// 1, sqrt2, sqrt3, sqrt5 are linearly independent over Q, so equality is
// coordinate equality and the sign of a nonzero value is read off a long double.
struct Quad {
  std::array<mpq_class, 4> c{0, 0, 0, 0};
  static Quad of(mpq_class a, mpq_class s2 = 0, mpq_class s3 = 0, mpq_class s5 = 0) {
    Quad q;
    q.c = {a, s2, s3, s5};
    return q;
  }
  Quad operator+(const Quad& o) const {
    Quad r;
    for (int i = 0; i < 4; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  Quad operator-(const Quad& o) const {
    Quad r;
    for (int i = 0; i < 4; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  Quad times(long k) const {
    Quad r;
    for (int i = 0; i < 4; ++i) r.c[i] = c[i] * k;
    return r;
  }
  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
  long double approx() const {
    return c[0].get_d() + c[1].get_d() * std::sqrt(2.0L) + c[2].get_d() * std::sqrt(3.0L) + c[3].get_d() * std::sqrt(5.0L);
  }
  // -1, 0, 1
  int sign() const {
    if (is_zero()) return 0;
    long double v = approx();
    if (std::fabs(v) < 1e-12L) throw std::runtime_error("Quad sign unresolved in long double");
    return v > 0 ? 1 : -1;
  }
  std::string expr() const {
    static const char* units[4] = {"", "*sqrt(2)", "*sqrt(3)", "*sqrt(5)"};
    std::string s;
    for (int i = 0; i < 4; ++i) {
      if (c[i] == 0) continue;
      if (!s.empty()) s += "+";
      s += "(" + c[i].get_str() + ")" + units[i];
    }
    return s.empty() ? "0" : s;
  }
};

inline int cmp(const Quad& a, const Quad& b) { return (a - b).sign(); }

// Every tiling of length <= x as (length, number of orderings), one entry per
// count vector n_i: the orderings number is the multinomial coefficient.
struct TilingClass {
  Quad size;
  mpz_class count;
};

inline std::vector<TilingClass> tilings_upto(const std::vector<Quad>& tiles, const Quad& x) {
  std::vector<TilingClass> out;
  std::vector<long> n(tiles.size(), 0);
  std::function<void(size_t, Quad, long)> rec = [&](size_t i, Quad used, long total) {
    if (i == tiles.size()) {
      mpz_class m = 1;
      long run = 0;
      for (long k : n) {
        run += k;
        m *= binom(run, k);
      }
      out.push_back({used, m});
      return;
    }
    for (long k = 0;; ++k) {
      Quad s = used + tiles[i].times(k);
      if (cmp(s, x) > 0) break;
      n[i] = k;
      rec(i + 1, s, total + k);
    }
    n[i] = 0;
  };
  rec(0, Quad(), 0);
  return out;
}

struct Partial {
  mpz_class U, V, P, below, all;
};

// Direct counts of the partial-tile classes from their definitions:
//   U: a tiling t and a leftover piece x - |t| in [0, max tile);
//   V: an exact tiling, or a tiling t and a colour i with 0 < x - |t| < tile i;
//   P: a tiling t with x - |t| < min tile (nothing else fits).
inline Partial partial_direct(const std::vector<Quad>& tiles, const Quad& x) {
  Quad gmax = tiles[0], gmin = tiles[0];
  for (auto& t : tiles) {
    if (cmp(t, gmax) > 0) gmax = t;
    if (cmp(t, gmin) < 0) gmin = t;
  }
  Partial r;
  for (auto& tc : tilings_upto(tiles, x)) {
    Quad rest = x - tc.size;
    int rs = rest.sign();
    r.all += tc.count;
    if (rs > 0) r.below += tc.count;
    if (cmp(rest, gmax) < 0) r.U += tc.count;
    if (cmp(rest, gmin) < 0) r.P += tc.count;
    if (rs == 0) {
      r.V += tc.count;
    } else {
      for (auto& t : tiles)
        if (cmp(rest, t) < 0) r.V += tc.count;
    }
  }
  return r;
}

// Words over tiles (sizes given), filtered by an adjacency predicate on
// consecutive letters; cumulative count of words of size <= x.
inline mpz_class words_upto(const std::vector<Quad>& letters, const Quad& x,
                            const std::function<bool(int prev, int next)>& allowed) {
  mpz_class s = 0;
  std::function<void(int, Quad)> rec = [&](int prev, Quad used) {
    s += 1;
    for (int i = 0; i < static_cast<int>(letters.size()); ++i) {
      if (prev >= 0 && !allowed(prev, i)) continue;
      Quad u = used + letters[i];
      if (cmp(u, x) > 0) continue;
      rec(i, u);
    }
  };
  rec(-1, Quad());
  return s;
}

// Y tilings: all beta tiles left of all gamma tiles. With a unit tiles, b beta
// tiles and c gamma tiles the non-unit letters are forced to beta^b gamma^c,
// so there are C(a + b + c, a) words.
inline mpz_class y_upto(const Quad& beta, const Quad& gamma, const Quad& x) {
  mpz_class s = 0;
  Quad one = Quad::of(1);
  for (long b = 0; cmp(beta.times(b), x) <= 0; ++b)
    for (long c = 0; cmp(beta.times(b) + gamma.times(c), x) <= 0; ++c)
      for (long a = 0; cmp(beta.times(b) + gamma.times(c) + one.times(a), x) <= 0; ++a) s += binom(a + b + c, a);
  return s;
}

}  // namespace oracle
