#include <doctest.h>

#include "dgcat/constructions.hpp"
#include "dgcat/simplify.hpp"

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

PresentationPtr single_loop() {
  PresentationBuilder b;
  b.add_object("L");
  b.add_generator("x", "L", "L", 0, "0");
  return share(b.build());
}

// The projection of a cylinder restricted to the generators that survive.
DgFunctor surviving_projection(const DgPresentation& simplified, const DgFunctor& projection) {
  PresentationPtr dom = share(simplified);
  const Signature& old = projection.domain().signature();
  std::vector<ObjIndex> objects;
  for (const auto& name : dom->objects()) objects.push_back(projection.object_image(old.object(name)));
  std::vector<Element> images;
  for (const auto& g : dom->generators()) images.push_back(projection.image(g.name));
  return DgFunctor(dom, projection.codomain_ptr(), std::move(objects), std::move(images));
}

}  // namespace

TEST_CASE("identify objects on a cylinder") {
  CylinderResult cyl = cylinder(single_loop());
  MoveResult r = identify_objects(*cyl.cylinder, "t_L");
  const DgPresentation& P = r.result;
  REQUIRE(P.size() == 3);
  CHECK(P.objects() == std::vector<std::string>{"L#1"});
  CHECK(P.differential("t_x") == P.element("x#2 - x#1"));
  CHECK(P.inverses().empty());
  CHECK(r.removed == std::vector<std::string>{"t_L", "inv_t_L", "hat_t_L", "chk_t_L", "bar_t_L"});

  CHECK_THROWS_AS(identify_objects(*cylinder0(single_loop()).cylinder, "t_L"), PreconditionError);
  CHECK_THROWS_AS(identify_objects(*lens(3, 1), "x"), PreconditionError);
}

TEST_CASE("identification keeps tracked classes under the projection") {
  for (auto [p, chi] : {std::pair{2, "y^2 + x*z + z*x"}, std::pair{3, "y^2 + x^2*z + x*z*x + z*x^2"}}) {
    PresentationPtr C = lens(p, 1);
    Element chi_elt = C->element(chi);
    REQUIRE(extend_differential(*C, chi_elt).is_zero());
    CylinderResult cyl = cylinder(C);
    Element tracked = apply(cyl.i1, chi_elt);
    Element lambda = apply(cyl.i2, C->element("z"));
    SimplifyResult s = simplify(*cyl.cylinder, {Step::identify()});
    REQUIRE(s.log.size() == 1);
    DgFunctor proj = surviving_projection(s.result, *cyl.projection);
    CHECK(check_dg(proj).ok());
    CHECK(apply(proj, transport(s, tracked)) == chi_elt);
    CHECK(apply(proj, transport(s, lambda)) == C->element("z"));
  }
}

TEST_CASE("change of variables") {
  PresentationPtr C = lens(3, 1);
  MoveResult same = change_of_variables(*C, "z", 1, Element::zero(0, 0));
  CHECK(same.result == *C);

  MoveResult flip = change_of_variables(*C, "y", -1, Element::zero(0, 0));
  CHECK(flip.result.differential("y") == C->element("x^3 - 1"));
  CHECK(flip.result.differential("z") == C->element("y*x - x*y"));

  CHECK_THROWS_AS(change_of_variables(*C, "y", 2, Element::zero(0, 0)), PreconditionError);
  CHECK_THROWS_AS(change_of_variables(*C, "y", 1, C->element("z")), PreconditionError);
  CHECK_THROWS_AS(change_of_variables(*C, "x", 1, C->element("x^2")), PreconditionError);

  // Absorbing the sign on the cylinder of a lens dga: y#2 := -y#2 + y#1 - sum
  CylinderResult cyl = cylinder(C);
  DgPresentation P = identify_objects(*cyl.cylinder, "t_L").result;
  CHECK(P.differential("t_x") == P.element("x#2 - x#1"));
  Element w = P.element("y#1 - x#2^2*t_x - x#2*t_x*x#1 - t_x*x#1^2");
  MoveResult moved = change_of_variables(P, "y#2", -1, w);
  CHECK(moved.result.differential("y#2").is_zero());
  CHECK(moved.result.differential("t_y") == moved.result.generator("y#2"));
  CHECK(validate(moved.result).ok());
}

TEST_CASE("cancel pair") {
  PresentationBuilder b;
  b.add_object("L");
  b.add_generator("x", "L", "L", 0, "0");
  b.add_generator("y", "L", "L", -1, "x - 1");
  b.add_generator("z", "L", "L", -2, "x*y - y*x");
  DgPresentation P = b.build();
  MoveResult r = cancel_pair(P, "x", "y");
  REQUIRE(r.result.size() == 1);
  CHECK(r.result.gen(0).name == "z");
  CHECK(r.result.differential("z").is_zero());
  CHECK(transport(r, P.generator("x")) == r.result.element("1"));

  PresentationBuilder c;
  c.add_object("L");
  c.add_generator("g", "L", "L", 0, "0");
  c.add_generator("t", "L", "L", -1, "2*g - 1");
  CHECK_THROWS_AS(cancel_pair(c.build(), "g", "t"), PreconditionError);
}

TEST_CASE("drop localization") {
  DgPresentation P = localize(*lens(3, 1), {"x"});
  // x*x^2 - 1 = d(-y) and x^2*x - 1 = d(-y)
  MoveResult r = drop_localization(P, "inv_x", P.element("x^2"), P.element("-y"), P.element("-y"));
  CHECK(r.result == *lens(3, 1));
  CHECK(transport(r, P.generator("inv_x")) == r.result.element("x^2"));
  CHECK_THROWS_AS(drop_localization(P, "inv_x", P.element("x"), P.element("-y"), P.element("-y")),
                  PreconditionError);
}

TEST_CASE("greedy simplification") {
  SimplifyResult fixed = simplify(*lens(5, 2));
  CHECK(fixed.log.empty());
  CHECK(fixed.result == *lens(5, 2));

  CylinderResult cyl = cylinder(single_loop());
  SimplifyResult s = simplify(*cyl.cylinder);
  CHECK(s.result.size() == 1);
  CHECK(s.result.differential(GenIndex{0}).is_zero());

  SimplifyResult again = simplify(*cyl.cylinder);
  CHECK(log_to_json(again.log) == log_to_json(s.log));
  CHECK(again.result == s.result);

  SimplifyResult replayed = replay(*cyl.cylinder, log_from_json(nlohmann::json::parse(log_to_json(s.log).dump())));
  CHECK(replayed.result == s.result);

  for (const PresentationPtr& C : {lens(2, 1), lens(3, 1), lens(5, 2)}) {
    CylinderResult cc = cylinder(C);
    SimplifyResult sc = simplify(*cc.cylinder);
    CHECK(sc.result.size() == C->size());
    CHECK(validate(sc.result).ok());
    DgFunctor proj = surviving_projection(sc.result, *cc.projection);
    CHECK(check_dg(proj).ok());
  }
}

TEST_CASE("strategy JSON") {
  Strategy s = strategy_from_json(nlohmann::json::parse(
      R"(["identify", {"move": "change_of_variables", "args": {"v": "z", "u": -1, "w": "0"}}, "greedy"])"));
  REQUIRE(s.size() == 3);
  CHECK(s[0].kind == Step::Kind::identify_phase);
  CHECK(s[1].move.name == "change_of_variables");
  SimplifyResult r = simplify(*lens(3, 1), s);
  CHECK(r.result.differential("z") == r.result.element("y*x - x*y"));
  CHECK_THROWS_AS(strategy_from_json(nlohmann::json::parse("[3]")), ParseError);
}
