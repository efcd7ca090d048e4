#pragma once

// Rational linear combinations of unit constants (1, sqrt(s), log(q), pi,
// decimal literals), their text grammar, and their coordinates over a Basis.
//
// Grammar (whitespace ignored):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | primary
//   primary:= number | 'pi' | 'sqrt(' expr ')' | 'log(' expr ')' | '(' expr ')'
//           | 'lit:' decimal ':' digits
// Products need a rational factor, divisors must be rational, and the
// arguments of sqrt and log must be rational (log argument > 0).

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "irr/error.hpp"
#include "irr/exponents.hpp"
#include "irr/interval.hpp"

namespace irr {

enum class UnitKind { One, Sqrt, Log, Pi, Literal };

struct UnitConst {
  UnitKind kind = UnitKind::One;
  mpq_class arg = 1;      // Sqrt: squarefree integer; Log: rational > 1
  BasisConstant lit = BasisConstant::rational(1);  // Literal only

  bool operator==(const UnitConst& o) const {
    if (kind != o.kind) return false;
    if (kind == UnitKind::Literal) return lit == o.lit;
    return arg == o.arg;
  }
  Interval eval(long bits) const {
    switch (kind) {
      case UnitKind::One: return Interval::from_si(1, bits);
      case UnitKind::Sqrt: return sqrt(Interval::from_q(arg, bits));
      case UnitKind::Log: return log(Interval::from_q(arg, bits));
      case UnitKind::Pi: return Interval::pi(bits);
      case UnitKind::Literal: return lit.eval(bits);
    }
    fail(Errc::Internal, "bad unit kind");
  }
  std::string str() const {
    switch (kind) {
      case UnitKind::One: return "1";
      case UnitKind::Sqrt: return "sqrt(" + rat_str(arg) + ")";
      case UnitKind::Log: return "log(" + rat_str(arg) + ")";
      case UnitKind::Pi: return "pi";
      case UnitKind::Literal: return lit.descriptor();
    }
    return "?";
  }
};

class RealExpr {
 public:
  RealExpr() = default;
  static RealExpr rational(const mpq_class& q) {
    RealExpr r;
    r.add_term(UnitConst{}, q);
    return r;
  }
  static RealExpr unit(const UnitConst& u, const mpq_class& c = 1) {
    RealExpr r;
    r.add_term(u, c);
    return r;
  }
  // sqrt(q) = c * sqrt(s), s squarefree.
  static RealExpr sqrt_of(const mpq_class& q) {
    if (q < 0) fail(Errc::ParseError, "sqrt of a negative number");
    if (q == 0) return RealExpr();
    mpz_class n = q.get_num() * q.get_den();
    std::vector<std::pair<mpz_class, long>> fs;
    factor_small(n, fs);
    mpz_class outside = 1, inside = 1;
    for (auto& [p, e] : fs) {
      for (long k = 0; k < e / 2; ++k) outside *= p;
      if (e % 2) inside *= p;
    }
    mpq_class c(outside, q.get_den());
    c.canonicalize();
    if (inside == 1) return rational(c);
    return unit(UnitConst{UnitKind::Sqrt, mpq_class(inside), BasisConstant::rational(1)}, c);
  }
  static RealExpr log_of(const mpq_class& q) {
    if (q <= 0) fail(Errc::ParseError, "log of a non-positive number");
    if (q == 1) return RealExpr();
    if (q < 1) return unit(UnitConst{UnitKind::Log, mpq_class(1 / q), BasisConstant::rational(1)}, -1);
    return unit(UnitConst{UnitKind::Log, q, BasisConstant::rational(1)}, 1);
  }
  static RealExpr of_constant(const BasisConstant& k) {
    switch (k.kind()) {
      case ConstKind::Rational: return rational(k.param());
      case ConstKind::SqrtRational: return sqrt_of(k.param());
      case ConstKind::LogRational: return log_of(k.param());
      case ConstKind::PiMultiple: return unit(UnitConst{UnitKind::Pi, 1, BasisConstant::rational(1)}, k.param());
      case ConstKind::DecimalLiteral: return unit(UnitConst{UnitKind::Literal, 1, k}, 1);
    }
    fail(Errc::Internal, "bad constant kind");
  }

  const std::vector<std::pair<UnitConst, mpq_class>>& terms() const { return terms_; }
  bool is_rational() const {
    for (auto& [u, c] : terms_)
      if (u.kind != UnitKind::One) return false;
    return true;
  }
  mpq_class rational_part() const {
    for (auto& [u, c] : terms_)
      if (u.kind == UnitKind::One) return c;
    return 0;
  }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const UnitConst& u, const mpq_class& c) {
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      if (it->first == u) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
        return;
      }
    }
    if (c != 0) terms_.emplace_back(u, c);
  }
  RealExpr operator+(const RealExpr& o) const {
    RealExpr r = *this;
    for (auto& [u, c] : o.terms_) r.add_term(u, c);
    return r;
  }
  RealExpr operator-(const RealExpr& o) const { return *this + o.scaled(-1); }
  RealExpr scaled(const mpq_class& k) const {
    RealExpr r;
    for (auto& [u, c] : terms_) r.add_term(u, c * k);
    return r;
  }

  Interval eval(long bits) const {
    long work = bits + 8;
    Interval acc(work);
    for (auto& [u, c] : terms_) acc = acc + Interval::from_q(c, work) * u.eval(work);
    return acc;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [u, c] : terms_) {
      std::string t = (u.kind == UnitKind::One) ? rat_str(c) : (c == 1 ? u.str() : rat_str(c) + "*" + u.str());
      if (!s.empty() && c > 0) s += "+";
      s += t;
    }
    return s;
  }

 private:
  std::vector<std::pair<UnitConst, mpq_class>> terms_;
};

// ---------------------------------------------------------------------------
// Parser

class RealParser {
 public:
  explicit RealParser(std::string text, int line = 1, int col0 = 1) : s_(std::move(text)), line_(line), col0_(col0) {}

  RealExpr parse_all() {
    RealExpr r = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }
  // Parse a prefix; the caller continues at pos().
  RealExpr parse_prefix() { return expr(); }
  size_t pos() const { return pos_; }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(Errc::ParseError, "line " + std::to_string(line_) + ", column " + std::to_string(col0_ + static_cast<int>(pos_)) +
                               ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RealExpr expr() {
    RealExpr r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }
  RealExpr term() {
    RealExpr r = unary();
    for (;;) {
      skip();
      size_t at = pos_;
      if (eat('*')) {
        RealExpr b = unary();
        if (r.is_rational())
          r = b.scaled(r.rational_part());
        else if (b.is_rational())
          r = r.scaled(b.rational_part());
        else {
          pos_ = at;
          error("product of two irrational quantities is not supported");
        }
      } else if (eat('/')) {
        RealExpr b = unary();
        if (!b.is_rational() || b.rational_part() == 0) {
          pos_ = at;
          error("divisor must be a nonzero rational");
        }
        r = r.scaled(1 / b.rational_part());
      } else {
        return r;
      }
    }
  }
  RealExpr unary() {
    if (eat('-')) return unary().scaled(-1);
    if (eat('+')) return unary();
    return primary();
  }
  RealExpr primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of expression");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return RealExpr::rational(number());
    if (eat('(')) {
      RealExpr r = expr();
      if (!eat(')')) error("expected ')'");
      return r;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      std::string id;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        id.push_back(s_[pos_++]);
      if (id == "pi") return RealExpr::unit(UnitConst{UnitKind::Pi, 1, BasisConstant::rational(1)});
      if (id == "lit") {
        if (!eat(':')) error("expected ':' after lit");
        skip();
        std::string dec;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
          dec.push_back(s_[pos_++]);
        if (!eat(':')) error("expected ':' before literal precision");
        skip();
        std::string dg;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) dg.push_back(s_[pos_++]);
        if (dec.empty() || dg.empty()) error("malformed literal, expected lit:<decimal>:<digits>");
        return RealExpr::of_constant(BasisConstant::literal(dec, std::stoi(dg)));
      }
      if (id == "sqrt" || id == "log") {
        if (!eat('(')) error("expected '(' after " + id);
        size_t arg_at = pos_;
        RealExpr a = expr();
        if (!eat(')')) error("expected ')'");
        if (!a.is_rational()) {
          pos_ = arg_at;
          error(id + " argument must be rational");
        }
        if (id == "sqrt") {
          if (a.rational_part() < 0) {
            pos_ = arg_at;
            error("sqrt of a negative number");
          }
          return RealExpr::sqrt_of(a.rational_part());
        }
        if (a.rational_part() <= 0) {
          pos_ = arg_at;
          error("log of a non-positive number");
        }
        return RealExpr::log_of(a.rational_part());
      }
      pos_ = start;
      error("unknown function or constant '" + id + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }
  mpq_class number() {
    skip();
    std::string intp, frac;
    bool dot = false;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        (dot ? frac : intp).push_back(c);
        ++pos_;
      } else if (c == '.' && !dot) {
        dot = true;
        ++pos_;
      } else {
        break;
      }
    }
    if (intp.empty() && frac.empty()) error("malformed number");
    mpz_class num(intp + frac, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  std::string s_;
  size_t pos_ = 0;
  int line_, col0_;
};

inline RealExpr parse_real(const std::string& text) { return RealParser(text).parse_all(); }

// A basis constant from text: "1", "3/2", "sqrt(2)", "log(10)", "pi/4", "lit:1.4142135623:33".
inline BasisConstant parse_constant(const std::string& text) {
  RealExpr r = parse_real(text);
  if (r.terms().size() != 1) fail(Errc::ParseError, "basis constant must be a single positive term: " + text);
  auto& [u, c] = r.terms().front();
  if (c <= 0) fail(Errc::ParseError, "basis constant must be positive: " + text);
  switch (u.kind) {
    case UnitKind::One: return BasisConstant::rational(c);
    case UnitKind::Sqrt: return BasisConstant::sqrt_of(c * c * u.arg);
    case UnitKind::Pi: return BasisConstant::pi_times(c);
    case UnitKind::Literal:
      if (c != 1) fail(Errc::ParseError, "scaled literals are not basis constants: " + text);
      return u.lit;
    case UnitKind::Log: {
      if (c.get_den() != 1) fail(Errc::ParseError, "log constant must be the log of a rational: " + text);
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), u.arg.get_num_mpz_t(), c.get_num().get_ui());
      mpz_pow_ui(den.get_mpz_t(), u.arg.get_den_mpz_t(), c.get_num().get_ui());
      mpq_class q(num, den);
      q.canonicalize();
      return BasisConstant::log_of(q);
    }
  }
  fail(Errc::ParseError, "unsupported basis constant: " + text);
}

// Comma-separated constant list.
inline std::vector<BasisConstant> parse_constant_list(const std::string& text) {
  std::vector<BasisConstant> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(parse_constant(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(parse_constant(cur));
  return out;
}

// ---------------------------------------------------------------------------
// Coordinates of a RealExpr over a Basis

namespace detail {

inline void add_prime_vector(std::map<mpz_class, mpq_class>& v, const mpq_class& q, const mpq_class& k) {
  std::vector<std::pair<mpz_class, long>> fs;
  factor_small(q.get_num(), fs);
  for (auto& [p, e] : fs) v[p] += k * e;
  factor_small(q.get_den(), fs);
  for (auto& [p, e] : fs) v[p] -= k * e;
}

// Solve sum_j x_j * cols[j] = target over Q; nullopt if inconsistent.
inline std::optional<std::vector<mpq_class>> solve_rational(const std::vector<std::map<mpz_class, mpq_class>>& cols,
                                                           const std::map<mpz_class, mpq_class>& target) {
  std::vector<mpz_class> rows;
  auto note = [&](const mpz_class& p) {
    if (std::find(rows.begin(), rows.end(), p) == rows.end()) rows.push_back(p);
  };
  for (auto& c : cols)
    for (auto& [p, e] : c) note(p);
  for (auto& [p, e] : target) note(p);
  size_t m = rows.size(), n = cols.size();
  std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(n + 1, 0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) {
      auto it = cols[j].find(rows[i]);
      if (it != cols[j].end()) a[i][j] = it->second;
    }
    auto it = target.find(rows[i]);
    if (it != target.end()) a[i][n] = it->second;
  }
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t j = 0; j < n && r < m; ++j) {
    size_t p = r;
    while (p < m && a[p][j] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    for (size_t i = 0; i < m; ++i) {
      if (i == r || a[i][j] == 0) continue;
      mpq_class f = a[i][j] / a[r][j];
      for (size_t k = j; k <= n; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(static_cast<int>(j));
    ++r;
  }
  for (size_t i = r; i < m; ++i)
    if (a[i][n] != 0) return std::nullopt;
  std::vector<mpq_class> x(n, 0);
  for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = a[i][n] / a[i][pivot_col[i]];
  return x;
}

}  // namespace detail

// Coordinates (possibly signed) of r over the basis, or nullopt when r is not
// in the rational span of the basis constants.
inline std::optional<Coords> express(const Basis& basis, const RealExpr& r) {
  std::vector<mpq_class> coord(basis.size(), 0);
  std::vector<RealExpr> decomp;
  for (auto& k : basis.constants()) decomp.push_back(RealExpr::of_constant(k));
  auto single = [&](size_t i) -> const std::pair<UnitConst, mpq_class>* {
    if (decomp[i].terms().size() != 1) return nullptr;
    return &decomp[i].terms().front();
  };

  std::map<mpz_class, mpq_class> log_target;
  bool any_log = false;
  for (auto& [u, c] : r.terms()) {
    if (u.kind == UnitKind::Log) {
      detail::add_prime_vector(log_target, u.arg, c);
      any_log = true;
      continue;
    }
    bool found = false;
    for (size_t i = 0; i < basis.size() && !found; ++i) {
      auto t = single(i);
      if (t && t->first == u) {
        coord[i] += c / t->second;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  if (any_log) {
    std::vector<size_t> idx;
    std::vector<std::map<mpz_class, mpq_class>> cols;
    for (size_t i = 0; i < basis.size(); ++i) {
      auto t = single(i);
      if (t && t->first.kind == UnitKind::Log) {
        std::map<mpz_class, mpq_class> v;
        detail::add_prime_vector(v, t->first.arg, t->second);
        idx.push_back(i);
        cols.push_back(std::move(v));
      }
    }
    for (auto it = log_target.begin(); it != log_target.end();)
      it = (it->second == 0) ? log_target.erase(it) : std::next(it);
    // Keep only columns connected to the target's primes.
    std::set<mpz_class> primes;
    for (auto& [p, c] : log_target) primes.insert(p);
    std::vector<bool> used(cols.size(), false);
    for (bool grew = true; grew;) {
      grew = false;
      for (size_t j = 0; j < cols.size(); ++j) {
        if (used[j]) continue;
        bool touch = false;
        for (auto& [p, c] : cols[j])
          if (primes.count(p)) touch = true;
        if (!touch) continue;
        used[j] = true;
        grew = true;
        for (auto& [p, c] : cols[j]) primes.insert(p);
      }
    }
    {
      std::vector<size_t> idx2;
      std::vector<std::map<mpz_class, mpq_class>> cols2;
      for (size_t j = 0; j < cols.size(); ++j)
        if (used[j]) {
          idx2.push_back(idx[j]);
          cols2.push_back(std::move(cols[j]));
        }
      idx = std::move(idx2);
      cols = std::move(cols2);
    }
    auto x = detail::solve_rational(cols, log_target);
    if (!x) return std::nullopt;
    for (size_t j = 0; j < idx.size(); ++j) coord[idx[j]] += (*x)[j];
  }
  Coords out;
  for (size_t i = 0; i < basis.size(); ++i)
    if (coord[i] != 0) out.emplace_back(static_cast<std::uint32_t>(i), coord[i]);
  return out;
}

inline Exponent exponent_of(const BasisPtr& basis, const RealExpr& r) {
  auto c = express(*basis, r);
  if (!c) fail(Errc::BasisMismatch, "'" + r.str() + "' is not in the rational span of the basis {" + basis->str() + "}");
  if (!coords_nonneg(*c))
    fail(Errc::InvalidArgument, "'" + r.str() + "' has negative coordinates over the basis {" + basis->str() + "}");
  return Exponent::from_coords(basis, *c);
}
inline Exponent parse_exponent(const BasisPtr& basis, const std::string& text) {
  return exponent_of(basis, parse_real(text));
}

// ---------------------------------------------------------------------------
// Bound: a real number used as a window or evaluation point.

class Bound {
 public:
  Bound() = default;
  Bound(BasisPtr basis, RealExpr r) : basis_(std::move(basis)), expr_(std::move(r)) {
    coords_ = express(*basis_, expr_);
    if (coords_) {
      auto [lo, hi] = double_enclosure(*basis_, *coords_);
      lo_ = lo;
      hi_ = hi;
    } else {
      Interval v = expr_.eval(128);
      lo_ = v.lo_d();
      hi_ = v.hi_d();
    }
    if (hi_ < 0) fail(Errc::InvalidArgument, "bound must be nonnegative: " + expr_.str());
  }
  static Bound of(const Exponent& e) {
    Bound b;
    b.basis_ = e.basis();
    b.coords_ = e.coords();
    b.lo_ = e.lo();
    b.hi_ = e.hi();
    RealExpr r;
    for (auto& [i, c] : e.coords()) r = r + RealExpr::of_constant(e.basis()->at(i)).scaled(c);
    b.expr_ = r;
    return b;
  }
  static Bound parse(BasisPtr basis, const std::string& text) { return Bound(std::move(basis), parse_real(text)); }
  static Bound rational(BasisPtr basis, const mpq_class& q) { return Bound(std::move(basis), RealExpr::rational(q)); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const RealExpr& expr() const { return expr_; }
  const BasisPtr& basis() const { return basis_; }
  const std::optional<Coords>& coords() const { return coords_; }
  Interval eval(long bits) const {
    if (coords_) return eval_coords(*basis_, *coords_, bits);
    return expr_.eval(bits);
  }
  std::string str() const { return expr_.str(); }

 private:
  BasisPtr basis_;
  RealExpr expr_;
  std::optional<Coords> coords_;
  double lo_ = 0, hi_ = 0;
};

// Exact when the bound lies in the basis span, otherwise by refinement.
inline Ordering compare(const Exponent& e, const Bound& b) {
  if (b.coords()) {
    if (coords_equal(e.coords(), *b.coords())) return Ordering::EQ;
    if (e.hi() < b.lo()) return Ordering::LT;
    if (e.lo() > b.hi()) return Ordering::GT;
    Coords d = coords_add(e.coords(), *b.coords(), -1);
    return certified_sign(*e.basis(), d, e.lo() - b.hi(), e.hi() - b.lo()) < 0 ? Ordering::LT : Ordering::GT;
  }
  if (e.hi() < b.lo()) return Ordering::LT;
  if (e.lo() > b.hi()) return Ordering::GT;
  long cap = precision_cap();
  for (long bits = kStartPrecision; bits <= cap; bits *= 2) {
    Interval d = value(e, bits) - b.eval(bits);
    if (d.pos()) return Ordering::GT;
    if (d.neg()) return Ordering::LT;
  }
  fail(Errc::TieUnresolved, "cannot order exponent " + e.str() + " against bound " + b.str());
}
inline bool within(const Exponent& e, const Bound& b) { return compare(e, b) != Ordering::GT; }

}  // namespace irr
