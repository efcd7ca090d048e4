#pragma once

// Built-in classes with their stored singular forms and primitivity
// certificates.

#include <gmpxx.h>

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irr/classes.hpp"
#include "irr/error.hpp"
#include "irr/forms.hpp"
#include "irr/numeric.hpp"
#include "irr/realexpr.hpp"

namespace irr {

struct GalleryParams {
  std::map<std::string, std::string> values;  // name -> constant expression (or list)
  double max_size = 30;                       // largest window the basis must support

  GalleryParams& set(const std::string& k, const std::string& v) {
    values[k] = v;
    return *this;
  }
  RealExpr real(const std::string& k, const std::string& dflt) const {
    auto it = values.find(k);
    return parse_real(it == values.end() ? dflt : it->second);
  }
  std::vector<RealExpr> list(const std::string& k, const std::string& dflt) const {
    auto it = values.find(k);
    std::string text = it == values.end() ? dflt : it->second;
    std::vector<RealExpr> out;
    std::string cur;
    int depth = 0;
    for (char ch : text + ",") {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ',' && depth == 0) {
        if (cur.find_first_not_of(' ') == std::string::npos) fail(Errc::ParseError, "empty entry in list '" + text + "'");
        out.push_back(parse_real(cur));
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    return out;
  }
};

struct GalleryClass {
  std::string name;
  std::string description;
  BasisPtr basis;
  ClassPtr cls;
  double max_size = 30;
  std::optional<SingularForm> form;
  std::map<std::string, MarkerForm> markers;
  std::map<std::string, Exponent> params;
};

// ---------------------------------------------------------------------------
// Helpers

namespace gal {

inline void add_const(std::vector<BasisConstant>& cs, const BasisConstant& k) {
  for (auto& c : cs)
    if (c == k) return;
  cs.push_back(k);
}

// Basis spanning the given expressions: 1, square roots, prime logs, pi, literals.
inline std::vector<BasisConstant> constants_of(const std::vector<RealExpr>& xs) {
  std::vector<BasisConstant> cs;
  add_const(cs, BasisConstant::rational(1));
  for (auto& x : xs)
    for (auto& [u, c] : x.terms()) {
      switch (u.kind) {
        case UnitKind::One: break;
        case UnitKind::Sqrt: add_const(cs, BasisConstant::sqrt_of(u.arg)); break;
        case UnitKind::Pi: add_const(cs, BasisConstant::pi_times(1)); break;
        case UnitKind::Literal: add_const(cs, u.lit); break;
        case UnitKind::Log: {
          for (const mpz_class& part : {u.arg.get_num(), u.arg.get_den()}) {
            std::vector<std::pair<mpz_class, long>> fs;
            if (!factor_small(part, fs)) fail(Errc::BadParameter, "log argument with a large composite factor");
            for (auto& [p, e] : fs) add_const(cs, BasisConstant::log_of(p));
          }
          break;
        }
      }
    }
  return cs;
}

inline Exponent positive(const BasisPtr& b, const RealExpr& r, const std::string& what) {
  Exponent e = exponent_of(b, r);
  if (e.is_zero() || !(value(e, 64).pos()))
    fail(Errc::BadParameter, what + " must be positive");
  return e;
}

inline RealExpr rx(const Exponent& e) { return Bound::of(e).expr(); }

inline FuncPtr zpow(const Exponent& e) { return fpow(e); }

inline PoleFactor linear_factor(const std::string& label, const std::vector<std::pair<mpq_class, Exponent>>& terms, int mult = 1) {
  PoleFactor f;
  f.label = label;
  f.mult = mult;
  f.terms = terms;
  FuncPtr g = fconst(0);
  LinearCert cert;
  for (auto& [c, e] : terms) {
    g = g + c * fpow(e);
    cert.coefs.push_back(c);
    cert.support.push_back(e);
  }
  f.g = g;
  cert.text = label;
  f.cert = cert;
  return f;
}

inline LinearCert cert_of(const std::vector<mpq_class>& cs, const std::vector<Exponent>& es, std::string text) {
  LinearCert c;
  c.coefs = cs;
  c.support = es;
  c.text = std::move(text);
  return c;
}

inline std::string fmt(const Exponent& e) { return e.str(); }

}  // namespace gal

// ---------------------------------------------------------------------------
// Builders

namespace gal {

inline GalleryClass strip_tiling(const GalleryParams& p) {
  auto tiles = p.list("tiles", "1,sqrt(2)");
  GalleryClass g;
  g.name = "strip-tiling";
  g.basis = make_basis(constants_of(tiles));
  std::vector<Exponent> es;
  for (auto& t : tiles) es.push_back(positive(g.basis, t, "tile length"));
  std::sort(es.begin(), es.end(), exp_less);
  for (size_t i = 1; i < es.size(); ++i)
    if (es[i] == es[i - 1]) fail(Errc::BadParameter, "duplicate tile length");
  g.cls = strip_tilings(es);
  std::vector<std::pair<mpq_class, Exponent>> terms;
  std::string label = "1";
  for (auto& e : es) {
    terms.emplace_back(1, e);
    label += " - z^(" + e.str() + ")";
  }
  SingularForm f;
  f.poles.push_back(linear_factor(label, terms));
  f.numerator = fconst(1);
  f.equation = "f = 1/(" + label + ")";
  g.form = f;
  g.description = "strip tilings T^Gamma";
  return g;
}

inline GalleryClass ordered_factorizations(const GalleryParams& p) {
  GalleryClass g;
  g.name = "ordered-factorizations";
  g.description = "ordered factorizations of n, sized by log n";
  g.max_size = std::max(p.max_size, std::log(4.0));
  auto cs = family_basis(TileFamilyKind::LogIntegers, g.max_size);
  g.basis = make_basis(cs);
  Exponent log2 = exponent_of(g.basis, RealExpr::log_of(2));
  Exponent log3 = exponent_of(g.basis, RealExpr::log_of(3));
  TileFamily rest{TileFamilyKind::LogIntegers, 3, {}};
  ClassPtr factor = unite({mark(atom(log2), "twos", LinForm(1)), family(rest)});
  g.cls = seq(mark(factor, "factors", LinForm(1)));
  SingularForm f;
  PoleFactor pf;
  pf.label = "2 - zeta(s)";
  pf.g = ffamily(FamilyKind::LogIntegers, 2);
  pf.cert = cert_of({1, 1}, {log2, log3}, "sum_{k>=2} k^-s = 1");
  f.poles.push_back(pf);
  f.numerator = fconst(1);
  f.equation = "f = 1/(2 - zeta(s)), z = e^-s";
  g.form = f;
  g.markers["factors"] = {"number of factors", ffamily(FamilyKind::LogIntegers, 2), nullptr};
  g.markers["twos"] = {"number of factors equal to 2", fpow(log2), nullptr};
  return g;
}

inline GalleryClass infinite_rational_tiles(const GalleryParams& p) {
  GalleryClass g;
  g.name = "infinite-rational-tiles";
  g.description = "strip tilings with tile lengths k + 2^-k, k >= 0";
  g.max_size = p.max_size;
  g.basis = make_basis({BasisConstant::rational(1)});
  g.cls = seq(family({TileFamilyKind::KPlusHalfPowers, 0, {}}));
  SingularForm f;
  PoleFactor pf;
  pf.label = "1 - sum z^(k+2^-k)";
  pf.g = ffamily(FamilyKind::KPlusHalfPowers, 0);
  LinearCert c = cert_of({1, 1, 1}, {exponent_of(g.basis, RealExpr::rational(1)), exponent_of(g.basis, RealExpr::rational(mpq_class(3, 2))),
                                      exponent_of(g.basis, RealExpr::rational(mpq_class(9, 4)))},
                         "tile lengths k + 2^-k");
  c.unbounded_denominators = true;
  pf.cert = c;
  f.poles.push_back(pf);
  f.numerator = fconst(1);
  f.equation = "f = 1/(1 - sum_k z^(k+2^-k))";
  g.form = f;
  return g;
}

// beta may not follow alpha; rearranged as (beta + alpha* gamma)* alpha*.
inline GalleryClass constrained_tilings(const GalleryParams& p, bool direct) {
  RealExpr a = p.real("alpha", "1"), b = p.real("beta", "sqrt(2)"), c = p.real("gamma", "sqrt(3)");
  GalleryClass g;
  g.name = direct ? "constrained-tilings-direct" : "constrained-tilings";
  g.description = direct ? "adjacency-constrained tilings, transfer form" : "adjacency-constrained tilings, rearranged form";
  g.basis = make_basis(constants_of({a, b, c}));
  Exponent A = positive(g.basis, a, "alpha"), B = positive(g.basis, b, "beta"), G = positive(g.basis, c, "gamma");
  g.params = {{"alpha", A}, {"beta", B}, {"gamma", G}};
  if (direct) {
    g.cls = fixpoint({{0, 1, eps()}, {1, 1, atom(A)}, {1, 1, atom(B)}, {1, 1, atom(G)}, {1, -1, atom(A + B)}});
  } else {
    ClassPtr astar = seq(atom(A));
    g.cls = prod({seq(unite({atom(B), prod({astar, atom(G)})})), astar});
  }
  SingularForm f;
  PoleFactor pf;
  pf.label = "1 - z^beta - z^gamma/(1 - z^alpha)";
  pf.g = fpow(B) + fpow(G) / (fconst(1) - fpow(A));
  pf.cert = cert_of({1, 1, 1}, {B, G, A + G}, "z^beta + sum_k z^(k alpha + gamma) = 1");
  f.poles.push_back(pf);
  f.numerator = fconst(1) / (fconst(1) - fpow(A));
  f.equation = "f = 1/((1 - z^beta - z^gamma/(1-z^alpha))(1 - z^alpha))";
  g.form = f;
  return g;
}

inline GalleryClass w_tilings(const GalleryParams& p) {
  RealExpr b = p.real("beta", "sqrt(2)");
  GalleryClass g;
  g.name = "w-tilings";
  g.description = "two colours of unit squares, then two colours of beta-tiles";
  g.basis = make_basis(constants_of({b}));
  Exponent one = exponent_of(g.basis, RealExpr::rational(1));
  Exponent B = positive(g.basis, b, "beta");
  g.params = {{"beta", B}};
  g.cls = prod({seq(unite({atom(one), atom(one)})), seq(unite({atom(B), atom(B)}))});
  SingularForm f;
  f.poles.push_back(linear_factor("1 - 2z", {{2, one}}));
  f.poles.push_back(linear_factor("1 - 2z^beta", {{2, B}}));
  f.numerator = fconst(1);
  f.equation = "f = 1/((1 - 2z)(1 - 2z^beta))";
  g.form = f;
  return g;
}

inline GalleryClass motzkin(const GalleryParams& p) {
  RealExpr b = p.real("beta", "sqrt(2)");
  GalleryClass g;
  g.name = "motzkin";
  g.description = "Motzkin paths, flat steps of size 1, up/down steps of size beta";
  g.basis = make_basis(constants_of({b}));
  Exponent one = exponent_of(g.basis, RealExpr::rational(1));
  Exponent B = positive(g.basis, b, "beta");
  g.params = {{"beta", B}};
  g.cls = fixpoint({{0, 1, eps()}, {1, 1, atom(one)}, {2, 1, atom(B.scaled(2))}});
  SingularForm f;
  BranchPart br;
  br.label = "(1-z)^2 - 4z^(2 beta)";
  br.D = (fconst(1) - fz()) * (fconst(1) - fz()) - mpq_class(4) * fpow(B.scaled(2));
  br.N = fconst(-1) / (mpq_class(2) * fpow(B.scaled(2)));
  br.cert = cert_of({1, 2}, {one, B}, "z + 2 z^beta = 1");
  f.branch = br;
  f.equation = "f = 1 + z f + z^(2 beta) f^2";
  g.form = f;
  return g;
}

inline GalleryClass tall_dyck(const GalleryParams& p) {
  GalleryClass g;
  g.name = "tall-dyck";
  g.description = "Dyck paths with matched (1,k)/(1,-k) steps, sized by Euclidean length; marker 'width'";
  g.max_size = std::max(p.max_size, 5.0);
  auto cs = family_basis(TileFamilyKind::MatchedStepLengths, g.max_size);
  g.basis = make_basis(cs);
  ClassPtr s = mark(family({TileFamilyKind::MatchedStepLengths, 1, {}}), "width", LinForm(2));
  g.cls = fixpoint({{0, 1, eps()}, {2, 1, s}});
  FuncPtr sf = ffamily(FamilyKind::MatchedStepLengths, 1);
  SingularForm f;
  BranchPart br;
  br.label = "1 - 4 s(z)";
  br.D = fconst(1) - mpq_class(4) * sf;
  br.N = fconst(-1) / (mpq_class(2) * sf);
  br.cert = cert_of({4, 4}, {exponent_of(g.basis, RealExpr::sqrt_of(8)), exponent_of(g.basis, RealExpr::sqrt_of(20))},
                    "4 sum_k z^(2 sqrt(1+k^2)) = 1");
  f.branch = br;
  f.equation = "f = 1 + s(z) f^2, s = sum_{k>=1} z^(2 sqrt(1+k^2))";
  g.form = f;
  g.markers["width"] = {"width of the path", nullptr, mpq_class(-8) * sf};
  return g;
}

inline GalleryClass general_dyck(const GalleryParams& p) {
  GalleryClass g;
  g.name = "general-dyck";
  g.description = "Dyck paths with step set Z>0 x (Z\\{0}), matched heights, sized by Euclidean length";
  g.max_size = std::max(p.max_size, 3.0);
  const long top = static_cast<long>(std::floor(g.max_size));
  std::vector<RealExpr> lens;
  for (long k = 1; k <= top; ++k)
    for (long h = 1; h <= top; ++h)
      if (std::sqrt(double(h * h + k * k)) <= g.max_size + 1e-9) lens.push_back(RealExpr::sqrt_of(h * h + k * k));
  g.basis = make_basis(constants_of(lens));
  std::vector<ClassPtr> pairs;
  for (long k = 1; k <= top; ++k) {
    std::vector<ClassPtr> us;
    for (long h = 1; h <= top; ++h)
      if (std::sqrt(double(h * h + k * k)) <= g.max_size + 1e-9)
        us.push_back(atom(exponent_of(g.basis, RealExpr::sqrt_of(h * h + k * k))));
    if (us.empty()) continue;
    ClassPtr u = unite(us);
    pairs.push_back(prod({u, u}));
  }
  g.cls = fixpoint({{0, 1, eps()}, {2, 1, unite(pairs)}});
  FuncPtr sf = ffamily(FamilyKind::GeneralStepPairs, 1);
  SingularForm f;
  BranchPart br;
  br.label = "1 - 4 s(z)";
  br.D = fconst(1) - mpq_class(4) * sf;
  br.N = fconst(-1) / (mpq_class(2) * sf);
  Exponent r2 = exponent_of(g.basis, RealExpr::sqrt_of(2)), r5 = exponent_of(g.basis, RealExpr::sqrt_of(5));
  br.cert = cert_of({4, 8}, {r2.scaled(2), r2 + r5}, "4 s(z) = 1");
  f.branch = br;
  f.equation = "f = 1 + s(z) f^2, s = sum_k (sum_h z^sqrt(h^2+k^2))^2";
  g.form = f;
  return g;
}

inline GalleryClass trees_a(const GalleryParams& p) {
  RealExpr b = p.real("beta", "sqrt(2)");
  GalleryClass g;
  g.name = "trees-a";
  g.description = "plane trees, internal vertices of size 1, leaves of size beta";
  g.basis = make_basis(constants_of({b}));
  Exponent one = exponent_of(g.basis, RealExpr::rational(1));
  Exponent B = positive(g.basis, b, "beta");
  g.params = {{"beta", B}};
  // f = z^b + z f/(1-f), cleared: f = z^b + (z - z^b) f + f^2
  g.cls = fixpoint({{0, 1, atom(B)}, {1, 1, atom(one)}, {1, -1, atom(B)}, {2, 1, eps()}});
  SingularForm f;
  BranchPart br;
  FuncPtr pz = fconst(1) - fz() + fpow(B);
  br.label = "(1 - z + z^beta)^2 - 4 z^beta";
  br.D = pz * pz - mpq_class(4) * fpow(B);
  br.N = fconst(mpq_class(-1, 2));
  br.cert = cert_of({1, 1}, {B.scaled(mpq_class(1, 2)), one.scaled(mpq_class(1, 2))}, "z^(beta/2) + z^(1/2) = 1");
  f.branch = br;
  f.equation = "f = z^beta + (z - z^beta) f + f^2";
  g.form = f;
  return g;
}

inline GalleryClass trees_b(const GalleryParams& p) {
  RealExpr a = p.real("alpha", "log(16)"), b = p.real("beta", "log(9)"), c = p.real("gamma", "log(6)");
  GalleryClass g;
  g.name = "trees-b";
  g.description = "plane trees, leaves of size alpha, beta or gamma, internal vertices of size alpha or beta";
  g.basis = make_basis(constants_of({a, b, c}));
  Exponent A = positive(g.basis, a, "alpha"), B = positive(g.basis, b, "beta"), G = positive(g.basis, c, "gamma");
  g.params = {{"alpha", A}, {"beta", B}, {"gamma", G}};
  // f = S + (z^a + z^b) f/(1-f), cleared: f = S - z^g f + f^2
  g.cls = fixpoint({{0, 1, atom(A)}, {0, 1, atom(B)}, {0, 1, atom(G)}, {1, -1, atom(G)}, {2, 1, eps()}});
  SingularForm f;
  BranchPart br;
  FuncPtr q = fconst(1) - fpow(G);
  br.label = "(1 - z^gamma)^2 - 4z^alpha - 4z^beta";
  br.D = q * q - mpq_class(4) * fpow(A) - mpq_class(4) * fpow(B);
  br.N = fconst(mpq_class(-1, 2));
  f.branch = br;
  Prop3Cert p3;
  p3.k = 2;
  p3.support = {G, A, B};
  p3.coefs = {1, 4, 4};
  p3.text = "(1 - z^gamma)^2 - 4z^alpha - 4z^beta = 0";
  f.prop3 = p3;
  f.equation = "f = z^alpha + z^beta + z^gamma - z^gamma f + f^2";
  g.form = f;
  return g;
}

inline GalleryClass trees_e_impl(const GalleryParams& p, bool forests) {
  RealExpr c = p.real("gamma", "sqrt(2)");
  GalleryClass g;
  g.name = forests ? "forests-e" : "trees-e";
  g.description = forests ? "forests (sequences) of plane trees with vertices of size 1 and edges of size gamma"
                          : "plane trees with vertices of size 1 and edges of size gamma";
  g.basis = make_basis(constants_of({c}));
  Exponent one = exponent_of(g.basis, RealExpr::rational(1));
  Exponent G = positive(g.basis, c, "gamma");
  g.params = {{"gamma", G}};
  ClassPtr e = fixpoint({{0, 1, atom(one)}, {2, 1, atom(G)}});
  Exponent w = one + G;
  FuncPtr disc = fconst(1) - mpq_class(4) * fpow(w);
  // E = (1 - sqrt(1 - 4 z^(1+g)))/(2 z^g) = 2z/(1 + sqrt(1 - 4 z^(1+g)))
  FuncPtr efun = mpq_class(2) * fz() / (fconst(1) + fsqrt(disc));
  SingularForm f;
  if (!forests) {
    g.cls = e;
    BranchPart br;
    br.label = "1 - 4 z^(1+gamma)";
    br.D = disc;
    br.N = fconst(-1) / (mpq_class(2) * fpow(G));
    f.branch = br;
    f.equation = "f = z + z^gamma f^2";
  } else {
    g.cls = seq(e);
    PoleFactor pf;
    pf.label = "1 - E(z)";
    pf.g = efun;
    f.poles.push_back(pf);
    f.numerator = fconst(1);
    // Supercritical: E exceeds 1 just below its branch point 4^(-1/(1+gamma)).
    double w_d = value(w, 64).mid_d();
    double rb = std::pow(4.0, -1.0 / w_d);
    Prop2Cert p2;
    p2.support = {one, one + w};
    p2.G = efun;
    p2.guard = disc;
    p2.point = mpq_class(std::floor(rb * (1 - 1e-7) * 1e12), 1000000000000L);
    p2.point.canonicalize();
    p2.text = "E(z) = z + z^gamma E(z)^2 is supercritical";
    f.prop2 = p2;
    f.equation = "f = 1/(1 - E), E = z + z^gamma E^2";
  }
  g.form = f;
  return g;
}

inline GalleryClass y_tilings(const GalleryParams& p) {
  RealExpr b = p.real("beta", "sqrt(2)"), c = p.real("gamma", "sqrt(3)");
  GalleryClass g;
  g.name = "y-tilings";
  g.description = "white 1-tiles, blue beta-tiles, green gamma-tiles, every green tile right of every blue tile";
  g.basis = make_basis(constants_of({b, c}));
  Exponent one = exponent_of(g.basis, RealExpr::rational(1));
  Exponent B = positive(g.basis, b, "beta"), G = positive(g.basis, c, "gamma");
  g.params = {{"beta", B}, {"gamma", G}};
  g.cls = prod({seq(unite({atom(one), atom(B)})), unite({eps(), prod({atom(G), seq(unite({atom(one), atom(G)}))})})});
  SingularForm f;
  f.poles.push_back(linear_factor("1 - z - z^beta", {{1, one}, {1, B}}));
  f.poles.push_back(linear_factor("1 - z - z^gamma", {{1, one}, {1, G}}));
  f.numerator = fconst(1) - fz();
  f.equation = "f = (1 - z)/((1 - z - z^beta)(1 - z - z^gamma))";
  g.form = f;
  return g;
}

inline GalleryClass forests_f(const GalleryParams& p) {
  RealExpr b = p.real("beta", "sqrt(2)"), c = p.real("gamma", "sqrt(2)");
  GalleryClass g;
  g.name = "forests-f";
  g.description = "forests of rooted binary trees: root 1 or gamma, leaves 1 or beta, internal vertices 1";
  g.basis = make_basis(constants_of({b, c}));
  Exponent one = exponent_of(g.basis, RealExpr::rational(1));
  Exponent B = positive(g.basis, b, "beta"), G = positive(g.basis, c, "gamma");
  g.params = {{"beta", B}, {"gamma", G}};
  ClassPtr bin = fixpoint({{0, 1, atom(one)}, {0, 1, atom(B)}, {2, 1, atom(one)}});
  g.cls = seq(prod({unite({atom(one), atom(G)}), bin}));
  FuncPtr z = fz();
  FuncPtr lb = z + fpow(G);                                   // b(z) = z + z^gamma
  FuncPtr la = z - fpow(G);                                   // a(z) = z - z^gamma
  FuncPtr disc = fconst(1) - mpq_class(4) * z * (z + fpow(B));  // 1 - 4z(z + z^beta)
  SingularForm f;
  Ordering o = compare(G, one);
  LinearCert bc = cert_of({4, 4}, {one.scaled(2), one + B}, "4z^2 + 4z^(1+beta) = 1");
  if (o == Ordering::LT) {
    PoleFactor pf;
    pf.label = "1 - (z + z^gamma) B(z)";
    // B = (1 - sqrt(disc))/(2z) = 2(z + z^beta)/(1 + sqrt(disc))
    pf.g = lb * (mpq_class(2) * (z + fpow(B)) / (fconst(1) + fsqrt(disc)));
    pf.cert = cert_of({1, 1}, {one.scaled(2), one + G}, "sum over trees z^|t| = 1");
    f.poles.push_back(pf);
    f.numerator = fconst(1);
  } else {
    BranchPart br;
    br.label = "1 - 4z^2 - 4z^(1+beta)";
    br.D = disc;
    br.cert = bc;
    if (o == Ordering::EQ) {
      br.power2 = -1;
      br.N = fconst(1);  // 2z / b(z) with gamma = 1
    } else {
      br.power2 = 1;
      br.N = fconst(-2) * z * lb / (la * la);
    }
    f.branch = br;
  }
  f.equation = "f = 2z/(z - z^gamma + (z + z^gamma) sqrt(1 - 4z(z + z^beta)))";
  g.form = f;
  return g;
}

inline GalleryClass grounded_dyck(const GalleryParams& p) {
  RealExpr b = p.real("beta", "sqrt(2)"), c = p.real("gamma", "sqrt(2)");
  GalleryClass g;
  g.name = "grounded-dyck";
  g.description = "nonempty Dyck paths with steps of width 1 or gamma between runs of flat steps of width 1 or beta";
  g.basis = make_basis(constants_of({b, c}));
  Exponent one = exponent_of(g.basis, RealExpr::rational(1));
  Exponent B = positive(g.basis, b, "beta"), G = positive(g.basis, c, "gamma");
  g.params = {{"beta", B}, {"gamma", G}};
  ClassPtr S = unite({atom(one), atom(G)});
  ClassPtr dyck = fixpoint({{0, 1, eps()}, {2, 1, prod({S, S})}});
  ClassPtr flat = seq(unite({atom(one), atom(B)}));
  g.cls = prod({S, S, dyck, dyck, flat, flat});
  FuncPtr z = fz();
  FuncPtr s = z + fpow(G);
  FuncPtr disc = fconst(1) - mpq_class(4) * s * s;
  FuncPtr lin = fconst(1) - z - fpow(B);
  SingularForm f;
  f.poles.push_back(linear_factor("1 - z - z^beta", {{1, one}, {1, B}}, 2));
  // D - 1 with D = 2/(1 + sqrt(1 - 4S^2))
  f.numerator = fconst(2) / (fconst(1) + fsqrt(disc)) - fconst(1);
  BranchPart br;
  br.label = "1 - 4(z + z^gamma)^2";
  br.D = disc;
  br.N = fconst(-1) / (mpq_class(2) * s * s * lin * lin);
  br.cert = cert_of({2, 2}, {one, G}, "2z + 2z^gamma = 1");
  f.branch = br;
  f.equation = "f = (1 - 2S^2 - sqrt(1 - 4S^2))/(2 S^2 (1 - z - z^beta)^2), S = z + z^gamma";
  g.form = f;
  return g;
}

}  // namespace gal

struct GalleryEntry {
  std::string name;
  std::string params;
  std::function<GalleryClass(const GalleryParams&)> build;
};

inline const std::vector<GalleryEntry>& gallery_table() {
  static const std::vector<GalleryEntry> table = {
      {"strip-tiling", "tiles=1,sqrt(2)", gal::strip_tiling},
      {"ordered-factorizations", "(none; markers factors, twos)", gal::ordered_factorizations},
      {"infinite-rational-tiles", "(none)", gal::infinite_rational_tiles},
      {"constrained-tilings", "alpha=1 beta=sqrt(2) gamma=sqrt(3)", [](const GalleryParams& p) { return gal::constrained_tilings(p, false); }},
      {"constrained-tilings-direct", "alpha=1 beta=sqrt(2) gamma=sqrt(3)", [](const GalleryParams& p) { return gal::constrained_tilings(p, true); }},
      {"w-tilings", "beta=sqrt(2)", gal::w_tilings},
      {"motzkin", "beta=sqrt(2)", gal::motzkin},
      {"tall-dyck", "(none; marker width)", gal::tall_dyck},
      {"general-dyck", "(none)", gal::general_dyck},
      {"trees-a", "beta=sqrt(2)", gal::trees_a},
      {"trees-b", "alpha=log(16) beta=log(9) gamma=log(6)", gal::trees_b},
      {"trees-e", "gamma=sqrt(2)", [](const GalleryParams& p) { return gal::trees_e_impl(p, false); }},
      {"forests-e", "gamma=sqrt(2)", [](const GalleryParams& p) { return gal::trees_e_impl(p, true); }},
      {"y-tilings", "beta=sqrt(2) gamma=sqrt(3)", gal::y_tilings},
      {"forests-f", "beta=sqrt(2) gamma=sqrt(2)", gal::forests_f},
      {"grounded-dyck", "beta=sqrt(2) gamma=sqrt(2)", gal::grounded_dyck},
  };
  return table;
}

inline GalleryClass gallery(const std::string& name, const GalleryParams& params = {}) {
  for (auto& e : gallery_table())
    if (e.name == name) {
      GalleryClass g = e.build(params);
      if (g.max_size < params.max_size) g.max_size = params.max_size;
      return g;
    }
  fail(Errc::UnknownName, "unknown gallery class '" + name + "'");
}

}  // namespace irr
