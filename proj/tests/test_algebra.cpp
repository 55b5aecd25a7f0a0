#include <doctest.h>

#include "dgcat/algebra.hpp"
#include "oracle.hpp"

using namespace dgcat;

namespace {

Signature lens_signature() {
  Signature sig;
  ObjIndex L = sig.add_object("L");
  sig.add_generator({"x", L, L, 0});
  sig.add_generator({"y", L, L, -1});
  sig.add_generator({"z", L, L, -2});
  return sig;
}

Signature two_object_signature() {
  Signature sig;
  ObjIndex A = sig.add_object("A");
  ObjIndex B = sig.add_object("B");
  sig.add_generator({"f", A, B, 0});
  sig.add_generator({"g", B, A, -1});
  return sig;
}

std::string fmt(const Signature& sig, const Element& e) { return format_element(sig, e); }

}  // namespace

TEST_CASE("word composition") {
  Signature sig = lens_signature();
  Word x = Word::letter(sig, 0), y = Word::letter(sig, 1), z = Word::letter(sig, 2);
  Word yx = word_compose(y, x);
  CHECK(format_word(sig, yx) == "y*x");
  CHECK(yx.degree() == -1);
  CHECK(word_compose(Word::identity(0), x) == x);
  Word zxx = word_compose(z, word_compose(x, x));
  CHECK(format_word(sig, zxx) == "z*x^2");
  CHECK(zxx.degree() == -2);
  CHECK(zxx.length() == 3);

  Signature two = two_object_signature();
  Word f = Word::letter(two, 0);
  CHECK_THROWS_AS(word_compose(f, f), CompositionError);
  CHECK(format_word(two, word_compose(Word::letter(two, 1), f)) == "g*f");
}

TEST_CASE("element addition") {
  Signature sig = lens_signature();
  Element xy = parse_element(sig, "x*y");
  CHECK((xy + elem_scale(xy, -1)).is_zero());
  Element x = parse_element(sig, "x");
  CHECK(fmt(sig, x + x) == "2*x");
  CHECK(fmt(sig, parse_element(sig, "1 - x^5") + parse_element(sig, "x^5")) == "1");
  Signature two = two_object_signature();
  CHECK_THROWS_AS(parse_element(two, "f") + parse_element(two, "g"), CompositionError);
}

TEST_CASE("element multiplication") {
  Signature sig = lens_signature();
  Element y = parse_element(sig, "y");
  Element yy = y * y;
  CHECK(fmt(sig, yy) == "y^2");
  CHECK(elem_degree(yy).value == -2);

  // f_q(x^p) (1 - x^p) for p = 2, q = 3 against naive expansion.
  Element fq = parse_element(sig, "1 + x^2 + x^4");
  Element prod = fq * parse_element(sig, "1 - x^2");
  oracle::Poly expect = oracle::mul(oracle::add(oracle::add(oracle::one(), oracle::letter("x", 2)), oracle::letter("x", 4)),
                                    oracle::add(oracle::one(), oracle::letter("x", 2), -1));
  CHECK(oracle::from_element(sig, prod) == expect);
  CHECK(fmt(sig, prod) == "1 - x^6");

  // (x^q y - y x^q) x^q with q = 2
  Element dz = parse_element(sig, "x^2*y - y*x^2");
  Element r = dz * parse_element(sig, "x^2");
  oracle::Poly dzo = oracle::add(oracle::mul(oracle::letter("x", 2), oracle::letter("y")),
                                 oracle::mul(oracle::letter("y"), oracle::letter("x", 2)), -1);
  CHECK(oracle::from_element(sig, r) == oracle::mul(dzo, oracle::letter("x", 2)));
  CHECK(fmt(sig, r) == "x^2*y*x^2 - y*x^4");

  Signature two = two_object_signature();
  CHECK_THROWS_AS(parse_element(two, "f") * parse_element(two, "f"), CompositionError);
}

TEST_CASE("element degree") {
  Signature sig = lens_signature();
  Degree d = elem_degree(parse_element(sig, "y^2 + x*z"));
  CHECK(d.kind == Degree::Kind::exact);
  CHECK(d.value == -2);
  CHECK(elem_degree(parse_element(sig, "x + y")).kind == Degree::Kind::mixed);
  CHECK(elem_degree(Element::zero(0, 0)).kind == Degree::Kind::any);
}

TEST_CASE("canonical term order") {
  Signature sig = lens_signature();
  CHECK(fmt(sig, parse_element(sig, "-x^5 + 1")) == "1 - x^5");
  CHECK(fmt(sig, parse_element(sig, "-y*x^2 + x^2*y")) == "x^2*y - y*x^2");
  CHECK(fmt(sig, parse_element(sig, "z + y*y + x*z")) == "z + x*z + y^2");
  // lexicographic comparison across run boundaries
  Word a = WordBuilder(sig, 0).append(0, 2).append(1).build();  // x x y
  Word b = WordBuilder(sig, 0).append(0).append(1).append(0).build();  // x y x
  CHECK(compare_words(a, b) < 0);
  CHECK(compare_words(b, a) > 0);
  CHECK(compare_words(a, a) == 0);
}

TEST_CASE("parser grammar") {
  Signature sig = lens_signature();
  CHECK(fmt(sig, parse_element(sig, "2x y")) == "2*x*y");
  CHECK(fmt(sig, parse_element(sig, "(1 - x)^2")) == "1 - 2*x + x^2");
  CHECK(fmt(sig, parse_element(sig, "x^0")) == "1");
  CHECK(fmt(sig, parse_element(sig, "3*(x + y)*x - 3 x^2")) == "3*y*x");
  CHECK(parse_element(sig, "0", Endpoints{0, 0}).is_zero());
  CHECK(fmt(sig, parse_element(sig, "1_L")) == "1");
  CHECK_THROWS_AS(parse_element(sig, "x +"), ParseError);
  CHECK_THROWS_AS(parse_element(sig, "w"), ParseError);
  CHECK_THROWS_AS(parse_element(sig, "x^"), ParseError);
  CHECK(fmt(sig, parse_element(sig, "3")) == "3");
  try {
    parse_element(sig, "x + $");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 5);
  }
  Signature two = two_object_signature();
  CHECK(fmt(two, parse_element(two, "g*f + 1_A")) == "1_A + g*f");
  CHECK(fmt(two, parse_element(two, "2 - 2", Endpoints{0, 1})) == "0");
  CHECK_THROWS_AS(parse_element(two, "f + 1_A"), ParseError);
}

TEST_CASE("substitution") {
  Signature sig = lens_signature();
  Element xi = parse_element(sig, "x^2");
  Element yi = parse_element(sig, "y + x*y");
  Element zi = Element::zero(0, 0);
  std::vector<const Element*> images{&xi, &yi, &zi};
  Element e = parse_element(sig, "x*y - z + 1");
  CHECK(fmt(sig, substitute(e, images, {0})) == "1 + x^2*y + x^3*y");
}
