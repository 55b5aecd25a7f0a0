#include <doctest.h>

#include "dgcat/functor.hpp"

using namespace dgcat;

namespace {

PresentationPtr lens(int p, int q) {
  PresentationBuilder b;
  b.add_object("L");
  b.add_generator("x", "L", "L", 0, "0");
  b.add_generator("y", "L", "L", -1, "1 - x^" + std::to_string(p));
  b.add_generator("z", "L", "L", -2, "x^" + std::to_string(q) + "*y - y*x^" + std::to_string(q));
  return share(b.build());
}

PresentationPtr commutator_source() {
  PresentationBuilder b;
  b.add_object("L");
  b.add_generator("m", "L", "L", 0, "0");
  b.add_generator("n", "L", "L", 0, "0");
  b.add_generator("h", "L", "L", -1, "m*n - n*m");
  return share(b.build());
}

PresentationPtr one_loop() {
  PresentationBuilder b;
  b.add_object("L2");
  b.add_generator("x", "L2", "L2", 0, "0");
  return share(b.build());
}

}  // namespace

TEST_CASE("apply sends generators to their images") {
  PresentationPtr C = commutator_source();
  PresentationPtr B = one_loop();
  DgFunctor i2 = DgFunctor::from_names(C, B, {{"L", "L2"}}, {{"m", "x^2"}, {"n", "x^5"}});
  CHECK(apply(i2, C->element("m")) == B->element("x^2"));
  CHECK(apply(i2, C->element("m*n + 1")) == B->element("x^7 + 1"));
  CHECK(apply(i2, C->element("h")).is_zero());
  CHECK(check_dg(i2).ok());

  DgFunctor id = DgFunctor::identity(C);
  Element e = C->element("3*h*m^2 - n*h + 1");
  CHECK(apply(id, e) == e);
  CHECK(compose_functors(i2, id) == i2);
  CHECK(compose_functors(DgFunctor::identity(B), i2) == i2);
}

TEST_CASE("check_dg reports a non-chain map") {
  PresentationPtr C = lens(5, 2);
  DgFunctor f = DgFunctor::from_names(C, C, {{"L", "L"}}, {{"x", "x"}, {"y", "y"}});
  ValidationReport r = check_dg(f);
  REQUIRE(r.issues.size() == 1);
  CHECK(r.issues[0].subject == "z");
  CHECK(check_dg(DgFunctor::identity(C)).ok());
}

TEST_CASE("functor construction rejects bad images") {
  PresentationPtr C = commutator_source();
  PresentationPtr B = one_loop();
  CHECK_THROWS_AS(DgFunctor::from_names(C, B, {{"L", "L2"}}, {{"h", "x"}}), PreconditionError);
  CHECK_THROWS(DgFunctor::from_names(C, B, {}, {}));
  CHECK_THROWS(DgFunctor::from_names(C, B, {{"L", "L2"}}, {{"q", "x"}}));
}

TEST_CASE("functor JSON round trip") {
  PresentationPtr C = commutator_source();
  PresentationPtr B = one_loop();
  DgFunctor f = DgFunctor::from_names(C, B, {{"L", "L2"}}, {{"m", "x^2"}, {"n", "x^5"}, {"h", "0"}});
  nlohmann::json j = functor_to_json(f);
  CHECK(j["gens"]["n"] == "x^5");
  CHECK(functor_from_json(j, C, B) == f);
}

TEST_CASE("compare_by_renaming") {
  PresentationPtr a = lens(5, 2);
  PresentationBuilder b;
  b.add_object("M");
  b.add_generator("u", "M", "M", 0, "0");
  b.add_generator("v", "M", "M", -1, "1 - u^5");
  b.add_generator("w", "M", "M", -2, "u^2*v - v*u^2");
  DgPresentation renamed = b.build();
  CHECK(compare_by_renaming(*a, renamed, {{"L", "M"}}, {{"x", "u"}, {"y", "v"}, {"z", "w"}}).ok());
  CHECK_FALSE(compare_by_renaming(*lens(5, 3), renamed, {{"L", "M"}}, {{"x", "u"}, {"y", "v"}, {"z", "w"}}).ok());
  CHECK_FALSE(compare_by_renaming(*a, renamed, {{"L", "M"}}, {{"x", "u"}, {"y", "u"}, {"z", "w"}}).ok());
}
