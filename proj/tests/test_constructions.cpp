#include <doctest.h>

#include "dgcat/constructions.hpp"
#include "dgcat/random.hpp"

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

PresentationPtr single_loop(const std::string& obj, const std::string& gen) {
  PresentationBuilder b;
  b.add_object(obj);
  b.add_generator(gen, obj, obj, 0, "0");
  return share(b.build());
}

PresentationPtr empty() { return share(DgPresentation{}); }

bool is_identity_functor(const DgFunctor& f) {
  if (!(f.domain() == f.codomain())) return false;
  return f == DgFunctor::identity(f.domain_ptr()).with_codomain(f.codomain_ptr());
}

}  // namespace

TEST_CASE("cylinder0 of a single closed loop") {
  CylinderResult r = cylinder0(single_loop("L", "x"));
  const DgPresentation& cyl = *r.cylinder;
  REQUIRE(cyl.size() == 4);
  CHECK(cyl.gen(0).name == "x#1");
  CHECK(cyl.gen(1).name == "x#2");
  CHECK(cyl.gen(2).name == "t_L");
  CHECK(cyl.gen(3).name == "t_x");
  CHECK(cyl.gen(3).degree == -1);
  CHECK(cyl.differential("t_L").is_zero());
  CHECK(cyl.differential("t_x") == cyl.element("x#2*t_L - t_L*x#1"));
  CHECK(validate(cyl).ok());
  CHECK(r.provenance.generators.at("t_x") == "t:x");
  CHECK(r.provenance.generators.at("x#2") == "2:x");
}

TEST_CASE("cylinder0 of a lens dga") {
  for (auto [p, q] : {std::pair{3, 1}, std::pair{5, 2}, std::pair{2, 1}}) {
    CylinderResult r = cylinder0(lens(p, q));
    const DgPresentation& cyl = *r.cylinder;
    CHECK(validate(cyl).ok());
    Element expect = -(cyl.element("y#2*t_L - t_L*y#1"));
    for (int j = 1; j <= p; ++j) {
      expect = expect - cyl.element("x#2^" + std::to_string(p - j) + "*t_x*x#1^" + std::to_string(j - 1));
    }
    CHECK(cyl.differential("t_y") == expect);
    CHECK(check_dg(r.i1).ok());
    CHECK(check_dg(r.i2).ok());
  }
  CHECK(cylinder0(empty()).cylinder->size() == 0);
}

TEST_CASE("cylinder with projection") {
  for (const PresentationPtr& c : {single_loop("L", "x"), lens(3, 1), lens(4, 3)}) {
    CylinderResult r = cylinder(c);
    CHECK(validate(*r.cylinder).ok());
    REQUIRE(r.projection);
    CHECK(check_dg(*r.projection).ok());
    CHECK(check_dg(r.i1).ok());
    CHECK(check_dg(r.i2).ok());
    CHECK(is_identity_functor(compose_functors(*r.projection, r.i1)));
    CHECK(is_identity_functor(compose_functors(*r.projection, r.i2)));
    CHECK(r.cylinder->inverses().size() == c->objects().size());
  }
  CylinderResult e = cylinder(empty());
  CHECK(e.cylinder->size() == 0);
  CHECK(e.cylinder->objects().empty());
}

TEST_CASE("localize") {
  DgPresentation p = localize(*single_loop("L", "x"), {"x"});
  REQUIRE(p.size() == 5);
  CHECK(validate(p).ok());
  CHECK(p.differential("hat_x") == p.element("1 - inv_x*x"));
  CHECK(p.differential("chk_x") == p.element("1 - x*inv_x"));
  CHECK(p.differential("bar_x") == p.element("x*hat_x - chk_x*x"));
  REQUIRE(p.inverses().size() == 1);
  CHECK(p.inverses()[0].base == p.generator("x"));

  CHECK(localize(*lens(3, 1), {}) == *lens(3, 1));
  CHECK_THROWS_AS(localize(*lens(3, 1), {"y"}), PreconditionError);

  PresentationBuilder b;
  b.add_object("A");
  b.add_object("B");
  b.add_generator("f", "A", "B", 0, "0");
  DgPresentation two = localize(b.build(), {"f"});
  CHECK(validate(two).ok());
  CHECK(two.differential("hat_f") == two.element("1_A - inv_f*f"));
}

TEST_CASE("pushout") {
  SUBCASE("coproduct") {
    PresentationPtr A = single_loop("LA", "x"), B = single_loop("LB", "y");
    Span s(DgFunctor::from_names(empty(), A, {}, {}), DgFunctor::from_names(empty(), B, {}, {}));
    PushoutResult r = pushout(s);
    CHECK(r.result->objects().size() == 2);
    CHECK(r.result->size() == 2);
    CHECK(validate(*r.result).ok());
  }
  SUBCASE("attaching one generator") {
    PresentationPtr C = single_loop("L", "u");
    PresentationBuilder ab(*C);
    ab.add_generator("g", "L", "L", -1, "u");
    PresentationPtr A = share(ab.build());
    PresentationPtr B = lens(3, 1);
    Span s(DgFunctor::from_names(C, A, {{"L", "L"}}, {{"u", "u"}}),
           DgFunctor::from_names(C, B, {{"L", "L"}}, {{"u", "x^2"}}));
    PushoutResult r = pushout(s);
    REQUIRE(r.result->size() == 4);
    CHECK(r.result->differential("g") == r.result->element("x^2"));
    CHECK(validate(*r.result).ok());
    CHECK(check_dg(r.induced).ok());
    CHECK(check_dg(r.inclusion).ok());
    CHECK(r.provenance.generators.at("g") == "A:g");
  }
  SUBCASE("degree mismatch rejected at functor construction") {
    PresentationPtr C = single_loop("L", "u");
    PresentationPtr B = lens(3, 1);
    CHECK_THROWS_AS(DgFunctor::from_names(C, B, {{"L", "L"}}, {{"u", "y^2"}}), PreconditionError);
  }
  SUBCASE("non-extension rejected") {
    PresentationPtr C = single_loop("L", "u");
    PresentationPtr A = single_loop("L", "x");
    Span s(DgFunctor::from_names(C, A, {{"L", "L"}}, {{"u", "x^2"}}),
           DgFunctor::from_names(C, A, {{"L", "L"}}, {{"u", "x"}}));
    CHECK_THROWS_AS(pushout(s), PreconditionError);
  }
}

TEST_CASE("homotopy pushout") {
  SUBCASE("empty source gives the disjoint union") {
    PresentationPtr A = lens(3, 1), B = lens(5, 2);
    Span s(DgFunctor::from_names(empty(), A, {}, {}), DgFunctor::from_names(empty(), B, {}, {}));
    HocolimResult r = homotopy_pushout(s);
    CHECK(r.result->size() == 6);
    CHECK(r.result->objects() == std::vector<std::string>{"L", "L_2"});
    CHECK(r.result->differential("y_2") == r.result->element("1 - x_2^5"));
    CHECK(validate(*r.result).ok());
  }
  SUBCASE("Heegaard span of a lens space before simplification") {
    PresentationBuilder cb;
    cb.add_object("L");
    cb.add_generator("m", "L", "L", 0, "0");
    cb.add_generator("n", "L", "L", 0, "0");
    cb.add_generator("h", "L", "L", -1, "m*n - n*m");
    PresentationPtr C = share(cb.build());
    PresentationPtr A = single_loop("L1", "x1"), B = single_loop("L2", "x2");
    Span s(DgFunctor::from_names(C, A, {{"L", "L1"}}, {{"m", "x1"}, {"n", "1"}}),
           DgFunctor::from_names(C, B, {{"L", "L2"}}, {{"m", "x2^2"}, {"n", "x2^5"}}));
    HocolimResult r = homotopy_pushout_localized(s, {"x1"}, {"x2"}, {"m", "n"});
    const DgPresentation& D = *r.result;
    CHECK(validate(D).ok());
    // dt_h = -(i2(h) t_L - t_L i1(h)) + t_m n + m t_n - t_n m - n t_m with legs applied
    CHECK(D.differential("t_h") == D.element("t_m + x2^2*t_n - t_n*x1 - x2^5*t_m"));
    CHECK(D.differential("t_m") == D.element("x2^2*t_L - t_L*x1"));
    CHECK(D.differential("t_n") == D.element("x2^5*t_L - t_L"));
    CHECK(D.inverses().size() == 3);
    CHECK(check_dg(r.from_a).ok());
    CHECK(check_dg(r.from_b).ok());
  }
}

namespace {

std::map<std::string, std::string> match_tags(const std::map<std::string, std::string>& a,
                                              const std::map<std::string, std::string>& b) {
  std::map<std::string, std::string> by_tag;
  for (const auto& [name, tag] : b) by_tag[tag] = name;
  std::map<std::string, std::string> out;
  for (const auto& [name, tag] : a) {
    auto it = by_tag.find(tag);
    if (it != by_tag.end()) out[name] = it->second;
  }
  return out;
}

}  // namespace

TEST_CASE("homotopy pushout agrees with the cylinder route on random spans") {
  Rng rng(20240611);
  for (int k = 0; k < 50; ++k) {
    Span s = random_span(rng);
    CHECK(check_dg(s.alpha).ok());
    CHECK(check_dg(s.beta).ok());
    HocolimResult direct = homotopy_pushout(s);
    HocolimResult route = homotopy_pushout_via_cylinder(s);
    CHECK(validate(*direct.result).ok());
    CHECK(validate(*route.result).ok());
    ValidationReport r =
        compare_by_renaming(*direct.result, *route.result, match_tags(direct.provenance.objects, route.provenance.objects),
                            match_tags(direct.provenance.generators, route.provenance.generators));
    INFO(serialize_presentation(*direct.result));
    INFO(serialize_presentation(*route.result));
    CHECK_MESSAGE(r.ok(), r.to_string());
  }
}
