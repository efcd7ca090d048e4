#pragma once

// Class definition files.
//
//   # comment
//   basis = 1, sqrt(2)
//   tile  = union(atom(1), atom(sqrt(2)))
//   class = seq(tile)
//
// Statements end at ';' or at a newline outside parentheses. Constructors:
// atom(r), eps(), union(c, ...), prod(c, ...), seq(c), mark(c, name[, weight]),
// family(log-integers | k-plus-half-powers | matched-step-lengths[, start]),
// tiles(r, ...). Other identifiers refer to earlier definitions. When `basis`
// is absent it is built from the constants that occur in the file.

#include <gmpxx.h>

#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "irr/classes.hpp"
#include "irr/error.hpp"
#include "irr/exponents.hpp"
#include "irr/gallery.hpp"
#include "irr/realexpr.hpp"

namespace irr {

struct ClassFile {
  BasisPtr basis;
  ClassPtr cls;
  std::map<std::string, ClassPtr> defs;
};

namespace cfile {

struct Pos {
  int line = 1, col = 1;
};

[[noreturn]] inline void perr(Pos p, const std::string& msg) {
  fail(Errc::ParseError, "line " + std::to_string(p.line) + ", column " + std::to_string(p.col) + ": " + msg);
}

// Untyped syntax tree; real-number arguments are kept as raw text until the
// basis is known.
struct Ast {
  enum Kind { Call, Ref, Real } kind = Call;
  std::string name;  // function or identifier
  std::string text;  // Real
  Pos pos;
  std::vector<Ast> args;
};

class Parser {
 public:
  explicit Parser(std::string src) : s_(std::move(src)) {}

  struct Stmt {
    std::string lhs;
    Pos pos;
    std::vector<Ast> rhs;  // basis: several reals; otherwise one expression
  };

  std::vector<Stmt> parse() {
    std::vector<Stmt> out;
    for (;;) {
      skip_blank(true);
      if (i_ >= s_.size()) break;
      Stmt st;
      st.pos = here();
      st.lhs = ident();
      if (st.lhs.empty()) perr(here(), "expected a name");
      skip_blank(false);
      if (!eat('=')) perr(here(), "expected '=' after '" + st.lhs + "'");
      if (st.lhs == "basis") {
        do st.rhs.push_back(real_arg());
        while (eat(','));
      } else {
        st.rhs.push_back(expr());
      }
      skip_blank(false);
      if (i_ < s_.size() && s_[i_] != ';' && s_[i_] != '\n') perr(here(), "unexpected '" + std::string(1, s_[i_]) + "'");
      if (i_ < s_.size()) advance();
      out.push_back(std::move(st));
    }
    return out;
  }

 private:
  Pos here() const { return pos_; }
  void advance() {
    if (s_[i_] == '\n') {
      ++pos_.line;
      pos_.col = 1;
    } else {
      ++pos_.col;
    }
    ++i_;
  }
  // Skips spaces and comments; newlines too when `nl` or inside parentheses.
  void skip_blank(bool nl) {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (c == '\n' ? (nl || depth_ > 0) : std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (nl && c == ';') {
        advance();
      } else {
        break;
      }
    }
  }
  bool eat(char c) {
    skip_blank(false);
    if (i_ < s_.size() && s_[i_] == c) {
      advance();
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_blank(false);
    std::string r;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '-')) {
      if (r.empty() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-')) break;
      r += s_[i_];
      advance();
    }
    return r;
  }
  // Raw text of a real expression: up to ',' ')' ';' or newline at depth 0.
  Ast real_arg() {
    skip_blank(false);
    Ast a;
    a.kind = Ast::Real;
    a.pos = here();
    int d = 0;
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (d == 0 && (c == ',' || c == ')' || c == ';' || c == '\n' || c == '#')) break;
      if (c == '(') ++d;
      if (c == ')') --d;
      a.text += c;
      advance();
    }
    while (!a.text.empty() && std::isspace(static_cast<unsigned char>(a.text.back()))) a.text.pop_back();
    if (a.text.empty()) perr(a.pos, "expected a number");
    return a;
  }
  Ast expr() {
    skip_blank(false);
    Ast a;
    a.pos = here();
    a.name = ident();
    if (a.name.empty()) perr(a.pos, i_ < s_.size() ? "unexpected '" + std::string(1, s_[i_]) + "'" : "unexpected end of input");
    if (!eat('(')) {
      a.kind = Ast::Ref;
      return a;
    }
    ++depth_;
    static const std::map<std::string, int> real_slots = {{"atom", 0}, {"tiles", 0}};
    bool reals = real_slots.count(a.name) > 0;
    skip_blank(false);
    if (!eat(')')) {
      for (int k = 0;; ++k) {
        bool is_real = reals || ((a.name == "mark" && k == 2) || (a.name == "family" && k == 1));
        if (is_real)
          a.args.push_back(real_arg());
        else if (a.name == "mark" && k == 1) {
          Ast id;
          id.kind = Ast::Ref;
          id.pos = here();
          id.name = ident();
          if (id.name.empty()) perr(id.pos, "expected a marker name");
          a.args.push_back(id);
        } else {
          a.args.push_back(expr());
        }
        if (eat(')')) break;
        if (!eat(',')) perr(here(), "expected ',' or ')'");
      }
    }
    --depth_;
    return a;
  }

  std::string s_;
  size_t i_ = 0;
  Pos pos_;
  int depth_ = 0;
};

inline RealExpr real_of(const Ast& a) {
  try {
    return RealParser(a.text, a.pos.line, a.pos.col).parse_all();
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    perr(a.pos, e.what());
  }
}

inline std::optional<mpq_class> rational_of(const RealExpr& r) {
  if (r.is_zero()) return mpq_class(0);
  if (!r.is_rational()) return std::nullopt;
  return r.rational_part();
}

inline void collect_reals(const Ast& a, std::vector<RealExpr>& out) {
  if (a.kind == Ast::Real) out.push_back(real_of(a));
  if (a.kind == Ast::Call && a.name == "mark") {
    for (size_t k = 0; k < a.args.size(); ++k)
      if (k != 2) collect_reals(a.args[k], out);
    return;
  }
  if (a.kind == Ast::Call && a.name == "family") {
    if (!a.args.empty()) collect_reals(a.args[0], out);
    return;
  }
  for (auto& b : a.args) collect_reals(b, out);
}

inline void family_kinds(const Ast& a, std::vector<TileFamilyKind>& out);

inline TileFamilyKind family_kind(const Ast& a) {
  if (a.args.empty() || a.args[0].kind != Ast::Ref) perr(a.pos, "family(...) needs a family name");
  const std::string& n = a.args[0].name;
  for (auto k : {TileFamilyKind::LogIntegers, TileFamilyKind::KPlusHalfPowers, TileFamilyKind::MatchedStepLengths})
    if (n == tile_family_name(k)) return k;
  perr(a.args[0].pos, "unknown family '" + n + "'");
}

inline void family_kinds(const Ast& a, std::vector<TileFamilyKind>& out) {
  if (a.kind == Ast::Call && a.name == "family") {
    out.push_back(family_kind(a));
    return;
  }
  for (auto& b : a.args) family_kinds(b, out);
}

class Builder {
 public:
  Builder(BasisPtr b, std::map<std::string, ClassPtr>& defs) : b_(std::move(b)), defs_(defs) {}

  ClassPtr build(const Ast& a) {
    if (a.kind == Ast::Ref) {
      if (a.name == "eps") return eps();
      auto it = defs_.find(a.name);
      if (it == defs_.end()) perr(a.pos, "undefined name '" + a.name + "'");
      return it->second;
    }
    if (a.kind == Ast::Real) perr(a.pos, "expected a class, found a number");
    const std::string& f = a.name;
    auto arity = [&](size_t lo, size_t hi) {
      if (a.args.size() < lo || a.args.size() > hi) perr(a.pos, f + "(...) takes " + std::to_string(lo) + (hi > lo ? "+" : "") + " arguments");
    };
    if (f == "atom") {
      arity(1, 1);
      return atom(exponent(a.args[0]));
    }
    if (f == "eps") {
      arity(0, 0);
      return eps();
    }
    if (f == "union" || f == "prod") {
      arity(1, 1000000);
      std::vector<ClassPtr> xs;
      for (auto& x : a.args) xs.push_back(build(x));
      return f == "union" ? unite(std::move(xs)) : prod(std::move(xs));
    }
    if (f == "seq") {
      arity(1, 1);
      return seq(build(a.args[0]));
    }
    if (f == "mark") {
      arity(2, 3);
      LinForm w(mpq_class(1));
      if (a.args.size() == 3) {
        RealExpr r = real_of(a.args[2]);
        if (auto q = rational_of(r)) {
          w = LinForm(*q);
        } else {
          auto c = express(*b_, r);
          if (!c) perr(a.args[2].pos, "marker weight " + r.str() + " is not in the basis span");
          w = LinForm::of_coords(*c);
        }
      }
      try {
        return mark(build(a.args[0]), a.args[1].name, w);
      } catch (const Error& e) {
        perr(a.pos, e.what());
      }
    }
    if (f == "family") {
      arity(1, 2);
      TileFamily tf;
      tf.kind = family_kind(a);
      tf.start = tf.kind == TileFamilyKind::LogIntegers ? 2 : tf.kind == TileFamilyKind::KPlusHalfPowers ? 0 : 1;
      if (a.args.size() == 2) {
        RealExpr r = real_of(a.args[1]);
        auto q = rational_of(r);
        if (!q || q->get_den() != 1) perr(a.args[1].pos, "family start must be an integer");
        tf.start = q->get_num().get_si();
      }
      return family(tf);
    }
    if (f == "tiles") {
      arity(1, 1000000);
      TileFamily tf;
      tf.kind = TileFamilyKind::ExplicitList;
      for (auto& x : a.args) tf.list.push_back(exponent(x));
      try {
        return family(tf);
      } catch (const Error& e) {
        perr(a.pos, e.what());
      }
    }
    perr(a.pos, "unknown function '" + f + "'");
  }

 private:
  Exponent exponent(const Ast& x) {
    RealExpr r = real_of(x);
    auto c = express(*b_, r);
    if (!c) fail(Errc::BasisMismatch, "line " + std::to_string(x.pos.line) + ", column " + std::to_string(x.pos.col) + ": " + r.str() + " is not in the basis span");
    try {
      Exponent e = Exponent::from_signed_coords(b_, *c);
      if (e.is_zero() || !value(e, 64).pos()) perr(x.pos, "atom sizes must be positive");
      return e;
    } catch (const Error& e) {
      if (e.code() == Errc::ParseError) throw;
      perr(x.pos, e.what());
    }
  }

  BasisPtr b_;
  std::map<std::string, ClassPtr>& defs_;
};

}  // namespace cfile

// `max_size` bounds the basis needed by infinite families.
inline ClassFile parse_class_text(const std::string& text, double max_size = 30) {
  using namespace cfile;
  auto stmts = Parser(text).parse();
  std::vector<RealExpr> basis_exprs, used;
  std::vector<TileFamilyKind> fams;
  bool have_basis = false, have_class = false;
  for (auto& st : stmts) {
    if (st.lhs == "basis") {
      if (have_basis) perr(st.pos, "basis given twice");
      have_basis = true;
      for (auto& r : st.rhs) basis_exprs.push_back(real_of(r));
    } else {
      collect_reals(st.rhs[0], used);
      family_kinds(st.rhs[0], fams);
      if (st.lhs == "class") have_class = true;
    }
  }
  if (!have_class) perr(stmts.empty() ? Pos{} : stmts.back().pos, "no 'class = ...' statement");
  std::vector<BasisConstant> cs = gal::constants_of(have_basis ? basis_exprs : used);
  for (auto k : fams)
    for (auto& c : family_basis(k, max_size)) gal::add_const(cs, c);
  ClassFile out;
  out.basis = make_basis(cs);
  Builder b(out.basis, out.defs);
  for (auto& st : stmts) {
    if (st.lhs == "basis") continue;
    if (st.lhs == "eps") perr(st.pos, "'eps' is reserved");
    ClassPtr c = b.build(st.rhs[0]);
    if (st.lhs == "class") {
      if (out.cls) perr(st.pos, "class given twice");
      out.cls = c;
    } else {
      out.defs[st.lhs] = c;
    }
  }
  return out;
}

inline ClassFile parse_class_file(const std::string& path, double max_size = 30) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_class_text(ss.str(), max_size);
}

}  // namespace irr
