#pragma once

// Combinatorial class expressions and their exact expansion into
// window-truncated Ribenboim series.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irr/error.hpp"
#include "irr/exponents.hpp"
#include "irr/numeric.hpp"
#include "irr/realexpr.hpp"
#include "irr/series.hpp"

namespace irr {

enum class NodeKind { Epsilon, Atom, Union, Product, Seq, Marked, Fixpoint, Family };

enum class TileFamilyKind { LogIntegers, KPlusHalfPowers, MatchedStepLengths, ExplicitList };

inline const char* tile_family_name(TileFamilyKind k) {
  switch (k) {
    case TileFamilyKind::LogIntegers: return "log-integers";
    case TileFamilyKind::KPlusHalfPowers: return "k-plus-half-powers";
    case TileFamilyKind::MatchedStepLengths: return "matched-step-lengths";
    case TileFamilyKind::ExplicitList: return "explicit-list";
  }
  return "?";
}

struct TileFamily {
  TileFamilyKind kind = TileFamilyKind::ExplicitList;
  long start = 0;               // first index (LogIntegers: k >= start, default 2)
  std::vector<Exponent> list;   // ExplicitList, strictly increasing
};

struct ClassNode;
using ClassPtr = std::shared_ptr<const ClassNode>;

// f = sum coef * a * f^power
struct FixTerm {
  int power = 0;
  mpq_class coef = 1;
  ClassPtr a;
};

struct ClassNode {
  NodeKind kind = NodeKind::Epsilon;
  std::optional<Exponent> atom;
  std::vector<ClassPtr> kids;
  std::string marker;
  LinForm weight;
  std::vector<FixTerm> fix;
  TileFamily family;
};

// ---------------------------------------------------------------------------
// Constructors

inline ClassPtr eps() { return std::make_shared<ClassNode>(); }
inline ClassPtr atom(const Exponent& e) {
  auto n = std::make_shared<ClassNode>();
  n->kind = NodeKind::Atom;
  n->atom = e;
  return n;
}
inline ClassPtr unite(std::vector<ClassPtr> xs) {
  if (xs.size() == 1) return xs.front();
  auto n = std::make_shared<ClassNode>();
  n->kind = NodeKind::Union;
  n->kids = std::move(xs);
  return n;
}
inline ClassPtr prod(std::vector<ClassPtr> xs) {
  if (xs.size() == 1) return xs.front();
  auto n = std::make_shared<ClassNode>();
  n->kind = NodeKind::Product;
  n->kids = std::move(xs);
  return n;
}
inline ClassPtr seq(ClassPtr x) {
  auto n = std::make_shared<ClassNode>();
  n->kind = NodeKind::Seq;
  n->kids = {std::move(x)};
  return n;
}
inline ClassPtr mark(ClassPtr x, std::string id, LinForm w) {
  if (w.r < 0) fail(Errc::BadParameter, "marker weight must be nonnegative");
  for (auto& [i, c] : w.c)
    if (c < 0) fail(Errc::BadParameter, "marker weight must be nonnegative");
  auto n = std::make_shared<ClassNode>();
  n->kind = NodeKind::Marked;
  n->kids = {std::move(x)};
  n->marker = std::move(id);
  n->weight = std::move(w);
  return n;
}
inline ClassPtr fixpoint(std::vector<FixTerm> terms) {
  for (auto& t : terms)
    if (t.power < 0) fail(Errc::BadParameter, "fixpoint powers must be nonnegative");
  auto n = std::make_shared<ClassNode>();
  n->kind = NodeKind::Fixpoint;
  n->fix = std::move(terms);
  return n;
}
inline ClassPtr family(TileFamily f) {
  if (f.kind == TileFamilyKind::ExplicitList)
    for (size_t i = 1; i < f.list.size(); ++i)
      if (compare(f.list[i - 1], f.list[i]) != Ordering::LT)
        fail(Errc::BadParameter, "explicit tile list must be strictly increasing");
  auto n = std::make_shared<ClassNode>();
  n->kind = NodeKind::Family;
  n->family = std::move(f);
  return n;
}

// ---------------------------------------------------------------------------
// Tile families

// Exponents of the family inside the window, increasing.
inline std::vector<Exponent> family_exponents(const TileFamily& f, const BasisPtr& basis, const Bound& window) {
  std::vector<Exponent> out;
  auto need = [&](const RealExpr& r) {
    auto c = express(*basis, r);
    if (!c) fail(Errc::BasisMismatch, std::string(tile_family_name(f.kind)) + ": " + r.str() + " is not in the basis span");
    return Exponent::from_coords(basis, *c);
  };
  const double top = window.hi();
  switch (f.kind) {
    case TileFamilyKind::LogIntegers:
      for (long k = std::max<long>(f.start, 2); std::log(static_cast<double>(k)) <= top + 1e-9; ++k) {
        Exponent e = need(RealExpr::log_of(k));
        if (within(e, window)) out.push_back(std::move(e));
      }
      break;
    case TileFamilyKind::KPlusHalfPowers:
      for (long k = std::max<long>(f.start, 0); static_cast<double>(k) <= top + 1e-9; ++k) {
        mpq_class q = mpq_class(k) + mpq_class(mpz_class(1), mpz_class(1) << k);
        q.canonicalize();
        Exponent e = need(RealExpr::rational(q));
        if (within(e, window)) out.push_back(std::move(e));
      }
      break;
    case TileFamilyKind::MatchedStepLengths:
      for (long k = std::max<long>(f.start, 1); 2.0 * std::sqrt(1.0 + double(k) * double(k)) <= top + 1e-9; ++k) {
        Exponent e = need(RealExpr::sqrt_of(4 * (1 + k * k)));
        if (within(e, window)) out.push_back(std::move(e));
      }
      break;
    case TileFamilyKind::ExplicitList:
      for (auto& e : f.list) {
        require_same_basis(basis, e.basis());
        if (within(e, window)) out.push_back(e);
      }
      break;
  }
  return out;
}

// Basis constants needed by a family up to size `max_size`.
inline std::vector<BasisConstant> family_basis(TileFamilyKind k, double max_size) {
  std::vector<BasisConstant> cs;
  switch (k) {
    case TileFamilyKind::LogIntegers: {
      long n = static_cast<long>(std::floor(std::exp(max_size) + 1e-9));
      std::vector<bool> comp(static_cast<size_t>(n + 1), false);
      for (long p = 2; p <= n; ++p) {
        if (comp[static_cast<size_t>(p)]) continue;
        cs.push_back(BasisConstant::log_of(p));
        for (long q = p * p; q <= n; q += p) comp[static_cast<size_t>(q)] = true;
      }
      break;
    }
    case TileFamilyKind::KPlusHalfPowers:
      cs.push_back(BasisConstant::rational(1));
      break;
    case TileFamilyKind::MatchedStepLengths: {
      std::vector<mpq_class> seen;
      for (long k = 1; 2.0 * std::sqrt(1.0 + double(k) * double(k)) <= max_size + 1e-9; ++k) {
        RealExpr r = RealExpr::sqrt_of(1 + k * k);
        for (auto& [u, c] : r.terms()) {
          if (u.kind != UnitKind::Sqrt) continue;
          if (std::find(seen.begin(), seen.end(), u.arg) == seen.end()) {
            seen.push_back(u.arg);
            cs.push_back(BasisConstant::sqrt_of(u.arg));
          }
        }
      }
      break;
    }
    case TileFamilyKind::ExplicitList: break;
  }
  return cs;
}

// ---------------------------------------------------------------------------
// Expansion

namespace detail {

inline bool contains_marker(const ClassPtr& c, const std::string& m) {
  if (c->kind == NodeKind::Marked && c->marker == m) return true;
  for (auto& k : c->kids)
    if (contains_marker(k, m)) return true;
  for (auto& t : c->fix)
    if (contains_marker(t.a, m)) return true;
  return false;
}

template <class C>
C unit_coef() {
  return C(1);
}

template <class C>
RibenboimPoly<C> apply_mark(const RibenboimPoly<C>& f, const LinForm&) {
  return f;
}
template <>
inline RibenboimPoly<Jet> apply_mark(const RibenboimPoly<Jet>& f, const LinForm& w) {
  RibenboimPoly<Jet> r(f.basis(), f.window());
  for (auto& t : f.terms()) r.push_back_unchecked({t.e, Jet(t.c.a, t.c.b + w.scaled(t.c.a))});
  return r;
}

template <class C>
RibenboimPoly<C> scale_coef(const RibenboimPoly<C>& f, const mpq_class& k) {
  if constexpr (std::is_same_v<C, mpz_class>) {
    if (k.get_den() != 1) fail(Errc::BadParameter, "integer expansion with a non-integer coefficient");
    return f.scaled(mpz_class(k.get_num()));
  } else {
    return f.scaled(C(k));
  }
}

template <class C>
RibenboimPoly<C> expand_rec(const ClassPtr& c, const BasisPtr& basis, const Bound& w, const std::string* marker) {
  using P = RibenboimPoly<C>;
  switch (c->kind) {
    case NodeKind::Epsilon: return P::one(basis, w);
    case NodeKind::Atom: {
      require_same_basis(basis, c->atom->basis());
      if (!within(*c->atom, w)) return P::zero(basis, w);
      return P::monomial(*c->atom, unit_coef<C>(), w);
    }
    case NodeKind::Union: {
      P acc = P::zero(basis, w);
      for (auto& k : c->kids) acc = acc + expand_rec<C>(k, basis, w, marker);
      return acc;
    }
    case NodeKind::Product: {
      P acc = P::one(basis, w);
      for (auto& k : c->kids) {
        acc = acc * expand_rec<C>(k, basis, w, marker);
        if (acc.is_zero()) break;
      }
      return acc;
    }
    case NodeKind::Seq: {
      P g = expand_rec<C>(c->kids[0], basis, w, marker);
      if (!g.is_zero() && g.terms().front().e.is_zero())
        fail(Errc::ValuationZero, "sequence of a class containing an object of size 0");
      return quasi_inverse(g);
    }
    case NodeKind::Marked: {
      P g = expand_rec<C>(c->kids[0], basis, w, marker);
      if (marker && *marker == c->marker) return apply_mark(g, c->weight);
      return g;
    }
    case NodeKind::Fixpoint: {
      int top = 0;
      for (auto& t : c->fix) top = std::max(top, t.power);
      std::vector<P> a(static_cast<size_t>(top + 1), P::zero(basis, w));
      for (auto& t : c->fix)
        a[static_cast<size_t>(t.power)] = a[static_cast<size_t>(t.power)] + scale_coef(expand_rec<C>(t.a, basis, w, marker), t.coef);
      return fixpoint_solve(a);
    }
    case NodeKind::Family: {
      std::vector<typename P::Term> ts;
      for (auto& e : family_exponents(c->family, basis, w)) ts.push_back({e, unit_coef<C>()});
      return P::from_terms(basis, w, std::move(ts));
    }
  }
  fail(Errc::Internal, "bad class node");
}

}  // namespace detail

// Exact counting series of c inside [0, window].
inline IntSeries expand(const ClassPtr& c, const BasisPtr& basis, const Bound& window) {
  return detail::expand_rec<mpz_class>(c, basis, window, nullptr);
}

inline JetSeries expand_jet(const ClassPtr& c, const BasisPtr& basis, const Bound& window, const std::string& marker) {
  if (!detail::contains_marker(c, marker)) fail(Errc::UnknownMarker, "marker '" + marker + "' does not occur in the class");
  return detail::expand_rec<Jet>(c, basis, window, &marker);
}

struct MarkedExpansion {
  IntSeries f;
  FormSeries f_u;
};

inline MarkedExpansion marked_expand(const ClassPtr& c, const BasisPtr& basis, const Bound& window,
                                     const std::string& marker) {
  JetSeries j = expand_jet(c, basis, window, marker);
  return {jet_counts(j), jet_moments(j)};
}

inline mpz_class count_upto(const ClassPtr& c, const BasisPtr& basis, const Bound& x) {
  return cumulative(expand(c, basis, x), x);
}
inline mpz_class count_below(const ClassPtr& c, const BasisPtr& basis, const Bound& x) {
  return cumulative_strict(expand(c, basis, x), x);
}

// ---------------------------------------------------------------------------
// Tilings with a final partial tile

struct PartialCounts {
  mpz_class U, V, P;
};

inline ClassPtr strip_tilings(const std::vector<Exponent>& tiles) {
  std::vector<ClassPtr> atoms;
  for (auto& t : tiles) atoms.push_back(atom(t));
  return seq(unite(std::move(atoms)));
}

// U: final partial tile shorter than the longest tile (tiles known only by
// length). V: coloured tiles, a final partial tile of colour i is shorter
// than tile i; an exact tiling counts once. P: maximal packings.
inline PartialCounts partial_tile_counts(std::vector<Exponent> tiles, const Bound& x) {
  if (tiles.empty()) fail(Errc::EmptySet, "empty tile set");
  std::sort(tiles.begin(), tiles.end(), exp_less);
  for (size_t i = 1; i < tiles.size(); ++i)
    if (tiles[i] == tiles[i - 1]) fail(Errc::BadParameter, "duplicate tile length");
  BasisPtr basis = tiles.front().basis();
  if (compare(tiles.back(), x) == Ordering::GT) fail(Errc::XTooSmall, "x must be at least the longest tile");
  IntSeries T = expand(strip_tilings(tiles), basis, x);
  auto upto = [&](const Exponent& g) { return cumulative(T, Bound(basis, x.expr() - Bound::of(g).expr())); };
  mpz_class all = cumulative(T, x), below = cumulative_strict(T, x);
  mpz_class exact = all - below;
  PartialCounts r;
  r.U = all - upto(tiles.back());
  r.P = all - upto(tiles.front());
  mpz_class k(static_cast<long>(tiles.size()));
  r.V = exact + k * below;
  for (auto& g : tiles) r.V -= upto(g);
  return r;
}

// ---------------------------------------------------------------------------
// Numeric generating function of a class (no fixpoints).

inline FuncPtr to_func(const ClassPtr& c) {
  switch (c->kind) {
    case NodeKind::Epsilon: return fconst(1);
    case NodeKind::Atom: return fpow(*c->atom);
    case NodeKind::Union: {
      FuncPtr acc = to_func(c->kids[0]);
      for (size_t i = 1; i < c->kids.size(); ++i) acc = acc + to_func(c->kids[i]);
      return acc;
    }
    case NodeKind::Product: {
      FuncPtr acc = to_func(c->kids[0]);
      for (size_t i = 1; i < c->kids.size(); ++i) acc = acc * to_func(c->kids[i]);
      return acc;
    }
    case NodeKind::Seq: return fconst(1) / (fconst(1) - to_func(c->kids[0]));
    case NodeKind::Marked: return to_func(c->kids[0]);
    case NodeKind::Family:
      switch (c->family.kind) {
        case TileFamilyKind::LogIntegers: return ffamily(FamilyKind::LogIntegers, std::max<long>(c->family.start, 2));
        case TileFamilyKind::KPlusHalfPowers: return ffamily(FamilyKind::KPlusHalfPowers, std::max<long>(c->family.start, 0));
        case TileFamilyKind::MatchedStepLengths: return ffamily(FamilyKind::MatchedStepLengths, std::max<long>(c->family.start, 1));
        case TileFamilyKind::ExplicitList: {
          FuncPtr acc = fconst(0);
          for (auto& e : c->family.list) acc = acc + fpow(e);
          return acc;
        }
      }
      break;
    case NodeKind::Fixpoint: break;
  }
  fail(Errc::UnknownPrimitivity, "no closed-form generating function for this class expression");
}

inline std::string class_str(const ClassPtr& c) {
  auto join = [](const std::vector<ClassPtr>& xs) {
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + class_str(xs[i]);
    return s;
  };
  switch (c->kind) {
    case NodeKind::Epsilon: return "eps";
    case NodeKind::Atom: return "atom(" + c->atom->str() + ")";
    case NodeKind::Union: return "union(" + join(c->kids) + ")";
    case NodeKind::Product: return "prod(" + join(c->kids) + ")";
    case NodeKind::Seq: return "seq(" + class_str(c->kids[0]) + ")";
    case NodeKind::Marked: return "mark(" + class_str(c->kids[0]) + ", " + c->marker + ")";
    case NodeKind::Fixpoint: {
      std::string s = "fix(";
      for (size_t i = 0; i < c->fix.size(); ++i)
        s += (i ? " + " : "") + rat_str(c->fix[i].coef) + "*" + class_str(c->fix[i].a) + "*f^" + std::to_string(c->fix[i].power);
      return s + ")";
    }
    case NodeKind::Family: return std::string("family(") + tile_family_name(c->family.kind) + ")";
  }
  return "?";
}

}  // namespace irr
