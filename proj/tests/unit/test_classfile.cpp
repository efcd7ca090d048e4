#include <catch_amalgamated.hpp>

#include "irr/classfile.hpp"
#include "oracles.hpp"

using namespace irr;

namespace {

std::string data(const std::string& name) { return std::string(IRR_TEST_DATA) + "/" + name; }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

std::string message_of(const std::string& text) {
  try {
    parse_class_text(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal file gives the strip tilings by 1 and sqrt 2") {
  auto f = parse_class_file(data("strip.cls"), 12);
  REQUIRE(f.basis->size() == 2);
  auto s = expand(f.cls, f.basis, Bound::rational(f.basis, 12));
  for (long x = 0; x <= 12; ++x) CHECK(cumulative(s, Bound::rational(f.basis, x)) == oracle::strip_sqrt2_upto(x));
}

TEST_CASE("constrained tiling file matches the gallery termwise") {
  auto f = parse_class_file(data("constrained.cls"), 12);
  auto g = gallery("constrained-tilings", GalleryParams());
  REQUIRE(f.basis->same_as(*g.basis));
  auto a = expand(f.cls, f.basis, Bound::rational(f.basis, 12));
  auto b = expand(g.cls, g.basis, Bound::rational(g.basis, 12));
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a.terms()[i].e.coords() == b.terms()[i].e.coords());
    CHECK(a.terms()[i].c == b.terms()[i].c);
  }
  CHECK(f.defs.count("runs") == 1);
}

TEST_CASE("families and markers in files") {
  auto f = parse_class_file(data("factorizations.cls"), std::log(100.0));
  Bound x = Bound::parse(f.basis, "log(12)");
  CHECK(count_upto(f.cls, f.basis, x) - count_upto(f.cls, f.basis, Bound::parse(f.basis, "log(11)")) == 8);
  auto m = marked_expand(f.cls, f.basis, x, "factors");
  CHECK(cumulative(m.f, x) == count_upto(f.cls, f.basis, x));
  auto h = parse_class_text("class = seq(family(k-plus-half-powers))", 5);
  auto g = gallery("infinite-rational-tiles", GalleryParams());
  CHECK(count_upto(h.cls, h.basis, Bound::rational(h.basis, 5)) == count_upto(g.cls, g.basis, Bound::rational(g.basis, 5)));
}

TEST_CASE("statement separators and comments") {
  auto a = parse_class_text("a = atom(1); b = atom(sqrt(2)); class = seq(union(a, b))");
  auto b = parse_class_text("# two tiles\na = atom(1)  # unit\nb = atom(sqrt(2))\nclass = seq(\n  union(a,\n        b))\n");
  Bound xa = Bound::rational(a.basis, 7), xb = Bound::rational(b.basis, 7);
  CHECK(count_upto(a.cls, a.basis, xa) == count_upto(b.cls, b.basis, xb));
  auto t = parse_class_text("class = seq(tiles(1, sqrt(2)))");
  CHECK(count_upto(t.cls, t.basis, Bound::rational(t.basis, 7)) == oracle::strip_sqrt2_upto(7));
  auto e = parse_class_text("class = prod(union(eps, atom(2)), seq(atom(3)))");
  CHECK(count_upto(e.cls, e.basis, Bound::rational(e.basis, 6)) == 5);  // sizes 0, 2, 3, 5, 6
}

TEST_CASE("parse errors carry positions") {
  CHECK(code_of([] { parse_class_file(data("bad_function.cls")); }) == Errc::ParseError);
  CHECK(message_of("class = seq(foo(atom(1)))") == "line 1, column 13: unknown function 'foo'");
  CHECK(message_of("x = atom(1)\nclass = seq(y)").rfind("line 2, column 13", 0) == 0);
  CHECK(message_of("class = seq(atom(1)").rfind("line 1", 0) == 0);
  CHECK(message_of("class = seq(atom(1 +))").rfind("line 1", 0) == 0);
  CHECK(message_of("a = atom(1)").find("class") != std::string::npos);
  CHECK(code_of([] { parse_class_text("class = seq(atom(1)"); }) == Errc::ParseError);
}

TEST_CASE("atoms outside the declared basis") {
  CHECK(code_of([] { parse_class_file(data("bad_basis.cls")); }) == Errc::BasisMismatch);
}

TEST_CASE("missing file") {
  CHECK(code_of([] { parse_class_file(data("does-not-exist.cls")); }) == Errc::IoError);
}
