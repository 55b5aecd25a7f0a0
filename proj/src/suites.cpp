#include "dgcat/suites.hpp"

#include <numeric>
#include <set>

#include "dgcat/constructions.hpp"
#include "dgcat/lens.hpp"
#include "dgcat/random.hpp"
#include "dgcat/simplify.hpp"

namespace dgcat {

void SuiteReport::fail(std::string message) {
  ok = false;
  if (failures.size() < 20) failures.push_back(std::move(message));
}

nlohmann::json SuiteReport::to_json() const {
  return {{"suite", name}, {"ok", ok}, {"cases", cases}, {"failures", failures}, {"notes", notes}};
}

namespace {

using Runner = SuiteReport (*)(const SuiteOptions&);

int or_default(int value, int fallback) { return value > 0 ? value : fallback; }

void progress(const SuiteOptions& o, const std::string& line) {
  if (o.progress) o.progress(line);
}

std::vector<std::pair<int, int>> coprime_pairs(int p_max) {
  std::vector<std::pair<int, int>> out;
  for (int p = 2; p <= p_max; ++p) {
    for (int q = 1; q < p; ++q) {
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> grid_pairs(const SuiteOptions& o, int default_p_max) {
  if (o.p > 0 && o.q > 0) return {{o.p, o.q}};
  return coprime_pairs(or_default(o.p_max, default_p_max));
}

int first_n(const SuiteOptions& o) { return o.n > 0 ? o.n : 1; }
int last_n(const SuiteOptions& o) { return o.n > 0 ? o.n : or_default(o.n_max, 3); }

std::string pq(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

Element x_power(const DgPresentation& c, int k) {
  return k == 0 ? Element::identity(0)
                : Element::generator(c.signature(), c.signature().generator("x"), static_cast<std::uint32_t>(k));
}

Element power(const Element& e, int n) {
  Element out = Element::identity(e.source());
  for (int k = 0; k < n; ++k) out = out * e;
  return out;
}

SuiteReport lens_dga(const SuiteOptions& o) {
  SuiteReport r{"lens-dga"};
  for (auto [p, q] : grid_pairs(o, 13)) {
    ++r.cases;
    try {
      LensParams l = LensParams::make(p, q);
      PresentationPtr c = build_cpq(l);
      if (!validate(*c).ok()) r.fail(pq(p, q) + ": " + validate(*c).to_string());
      Element x = c->generator("x"), y = c->generator("y");
      if (!extend_differential(*c, chi(l, *c)).is_zero()) r.fail(pq(p, q) + ": d(chi) != 0");
      if (extend_differential(*c, lambda_elt(l, *c)) != x * y - y * x) r.fail(pq(p, q) + ": d(Lambda) != xy - yx");
    } catch (const Error& e) {
      r.fail(pq(p, q) + ": " + e.what());
    }
  }
  return r;
}

void record_pipeline(SuiteReport& r, const std::string& label, const PipelineResult& res) {
  ++r.cases;
  if (!validate(res.result).ok()) r.fail(label + ": result invalid: " + validate(res.result).to_string());
  if (!res.comparison.ok()) r.fail(label + ": " + res.comparison.to_string());
  r.notes.push_back(label + ": " + std::to_string(res.hocolim.size()) + " -> " + std::to_string(res.result.size()) +
                    " generators in " + std::to_string(res.log.size()) + " moves");
}

SuiteReport gluing(const SuiteOptions& o) {
  SuiteReport r{"gluing"};
  try {
    record_pipeline(r, "torus", torus_pipeline());
    record_pipeline(r, "S3", heegaard_pipeline_s3());
    record_pipeline(r, "S1xS2", heegaard_pipeline_s1xs2());
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 2}, {7, 3}}) {
      progress(o, "# gluing L" + pq(p, q));
      PipelineResult res = heegaard_pipeline(LensParams::make(p, q));
      record_pipeline(r, "L" + pq(p, q), res);
      if (!(res.result == *build_cpq(LensParams::make(p, q)))) r.fail("L" + pq(p, q) + ": not equal to C_{p,q}");
    }
  } catch (const Error& e) {
    r.fail(e.what());
  }
  return r;
}

SuiteReport lens_pipeline(const SuiteOptions& o) {
  SuiteReport r{"lens-pipeline"};
  for (auto [p, q] : grid_pairs(o, 7)) {
    progress(o, "# lens-pipeline L" + pq(p, q));
    try {
      PipelineResult res = heegaard_pipeline(LensParams::make(p, q));
      record_pipeline(r, "L" + pq(p, q), res);
      if (!(res.result == *build_cpq(LensParams::make(p, q)))) r.fail("L" + pq(p, q) + ": not equal to C_{p,q}");
      if (!(replay(res.hocolim, res.log).result == res.result)) r.fail("L" + pq(p, q) + ": replay differs");
    } catch (const Error& e) {
      r.fail("L" + pq(p, q) + ": " + e.what());
    }
  }
  return r;
}

SuiteReport cylinder_suite(const SuiteOptions&) {
  SuiteReport r{"cylinder"};
  PresentationBuilder loop;
  loop.add_object("L");
  loop.add_generator("x", "L", "L", 0, "0");
  std::vector<std::pair<std::string, PresentationPtr>> inputs = {
      {"k<x>", share(std::move(loop).build())},
      {"torus", share(build_torus())},
      {"C_{3,1}", build_cpq(LensParams::make(3, 1))}};
  for (const auto& [label, c] : inputs) {
    ++r.cases;
    try {
      CylinderResult cyl = cylinder(c);
      if (!validate(*cyl.cylinder).ok()) r.fail(label + ": Cyl invalid: " + validate(*cyl.cylinder).to_string());
      for (const auto* f : {&cyl.i1, &cyl.i2, &*cyl.projection}) {
        ValidationReport v = check_dg(*f);
        if (!v.ok()) r.fail(label + ": " + v.to_string());
      }
      DgFunctor id = DgFunctor::identity(c);
      if (!(compose_functors(*cyl.projection, cyl.i1) == id)) r.fail(label + ": p o i1 != id");
      if (!(compose_functors(*cyl.projection, cyl.i2) == id)) r.fail(label + ": p o i2 != id");
    } catch (const Error& e) {
      r.fail(label + ": " + e.what());
    }
  }
  return r;
}

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

SuiteReport hocolim_routes(const SuiteOptions& o) {
  SuiteReport r{"hocolim-routes"};
  Rng rng(o.seed);
  const int cases = or_default(o.cases, 50);
  for (int k = 0; k < cases; ++k) {
    ++r.cases;
    try {
      Span s = random_span(rng);
      HocolimResult direct = homotopy_pushout(s);
      HocolimResult route = homotopy_pushout_via_cylinder(s);
      std::string label = "span " + std::to_string(k);
      if (!validate(*direct.result).ok()) r.fail(label + ": direct result invalid");
      if (!validate(*route.result).ok()) r.fail(label + ": cylinder route invalid");
      ValidationReport v = compare_by_renaming(*direct.result, *route.result,
                                               match_tags(direct.provenance.objects, route.provenance.objects),
                                               match_tags(direct.provenance.generators, route.provenance.generators));
      if (!v.ok()) r.fail(label + ": " + v.to_string());
    } catch (const Error& e) {
      r.fail("span " + std::to_string(k) + ": " + e.what());
    }
  }
  return r;
}

SuiteReport commuting(const SuiteOptions& o) {
  SuiteReport r{"commuting"};
  long long covered = 0, evaluated = 0;
  for (auto [p, q] : grid_pairs(o, 7)) {
    LensParams l = LensParams::make(p, q);
    const int xmax = or_default(o.xmax, 2 * p * q);
    for (int n = first_n(o); n <= last_n(o); ++n) {
      progress(o, "# commuting " + pq(p, q) + " n=" + std::to_string(n) + " xmax=" + std::to_string(xmax));
      for (int m = 0; m < p; ++m) {
        ++r.cases;
        CommutingReport c = check_commuting(l, n, m, xmax);
        covered += c.words_covered;
        evaluated += c.words_evaluated;
        if (!c.ok) {
          for (const auto& ce : c.counterexamples) {
            r.fail(pq(p, q) + " n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + ce);
          }
        }
      }
    }
  }
  r.notes.push_back("words covered: " + std::to_string(covered) + ", words evaluated: " + std::to_string(evaluated));
  return r;
}

SuiteReport pi_laws(const SuiteOptions& o) {
  SuiteReport r{"pi-laws"};
  for (auto [p, q] : grid_pairs(o, 7)) {
    LensParams l = LensParams::make(p, q);
    PiMap pi(l);
    const DgPresentation& c = pi.domain();
    if (!pi.check_dg().ok()) r.fail(pq(p, q) + ": pi is not a chain map");
    Element ch = chi(l, c);
    Element chn = Element::identity(0);
    for (int n = first_n(o); n <= last_n(o); ++n) {
      chn = chn * ch;
      Integer pn = boost::multiprecision::pow(Integer(p), static_cast<unsigned>(n));
      std::vector<std::vector<Integer>> rows;
      for (int k = 0; k < p; ++k) {
        ++r.cases;
        CyclicElement img = pi.apply(x_power(c, k) * chn);
        CyclicElement want = CyclicElement::monomial(p, k - static_cast<long long>(n) * q, n, pn);
        if (!(img == want)) {
          r.fail(pq(p, q) + " n=" + std::to_string(n) + " k=" + std::to_string(k) + ": pi = " + img.to_string() +
                 ", expected " + want.to_string());
        }
        std::vector<Integer> row;
        for (int i = 0; i < p; ++i) row.push_back(img.coefficient(i, n));
        rows.push_back(std::move(row));
      }
      if (integer_rank(rows) != p) r.fail(pq(p, q) + " n=" + std::to_string(n) + ": images are dependent");
    }
  }
  return r;
}

SuiteReport divisibility(const SuiteOptions& o) {
  SuiteReport r{"divisibility"};
  Rng rng(o.seed);
  const int per_point = or_default(o.cases, 100);
  for (auto [p, q] : grid_pairs(o, 7)) {
    LensParams l = LensParams::make(p, q);
    PresentationPtr c = build_cpq(l);
    Element ch = chi(l, *c);
    std::vector<Element> x_chi;
    for (int n = first_n(o); n <= last_n(o); ++n) {
      progress(o, "# divisibility " + pq(p, q) + " n=" + std::to_string(n));
      Element chn = power(ch, n);
      x_chi.clear();
      for (int k = 0; k < p; ++k) x_chi.push_back(x_power(*c, k) * chn);
      RandomShape shape;
      shape.max_word_length = 2 * n + 2;
      shape.max_coef = 5;
      for (int t = 0; t < per_point; ++t) {
        ++r.cases;
        Element u = Element::zero(0, 0);
        CyclicElement expected(p);
        for (int k = 0; k < p; ++k) {
          int coef = std::uniform_int_distribution<int>(-5, 5)(rng);
          u = u + Integer(coef) * x_chi[static_cast<std::size_t>(k)];
          expected = expected + CyclicElement::monomial(p, k - static_cast<long long>(n) * q, n, coef);
        }
        Element w = random_element(rng, *c, 0, 0, -(2 * n + 1), shape);
        u = u + extend_differential(*c, w);
        try {
          DivisibilityResult d = divisibility_check(l, n, u);
          if (!d.ok) r.fail(pq(p, q) + " n=" + std::to_string(n) + ": " + d.message);
          if (!(d.quotient == expected)) {
            r.fail(pq(p, q) + " n=" + std::to_string(n) + ": quotient " + d.quotient.to_string() + ", expected " +
                   expected.to_string());
          }
        } catch (const Error& e) {
          r.fail(pq(p, q) + " n=" + std::to_string(n) + ": " + e.what());
        }
      }
    }
  }
  return r;
}

SuiteReport f_roundtrip(const SuiteOptions& o) {
  SuiteReport r{"f-roundtrip"};
  int equivalent = 0, inequivalent = 0;
  for (int p = 2; p <= or_default(o.p_max, 11); ++p) {
    progress(o, "# f-roundtrip p=" + std::to_string(p));
    for (int q1 = 1; q1 < p; ++q1) {
      if (std::gcd(p, q1) != 1) continue;
      std::set<int> reachable;
      for (int a = 1; a < p; ++a) {
        if (std::gcd(a, p) != 1) continue;
        reachable.insert(a * a * q1 % p);
        reachable.insert((p - a * a * q1 % p) % p);
      }
      for (int q2 = 1; q2 < p; ++q2) {
        if (std::gcd(p, q2) != 1) continue;
        ++r.cases;
        std::string label = "(" + std::to_string(p) + "," + std::to_string(q1) + "," + std::to_string(q2) + ")";
        std::optional<LensWitness> w = homotopy_equivalent(p, q1, q2);
        if (w.has_value() != (reachable.count(q2) > 0)) r.fail(label + ": classification disagrees with +-a^2 q1");
        if (!w) {
          ++inequivalent;
          continue;
        }
        ++equivalent;
        try {
          DgFunctor F = build_F(p, q1, q2, w->a, w->b, w->c);
          ValidationReport v = check_dg(F);
          if (!v.ok()) r.fail(label + ": F is not a chain map: " + v.to_string());
          LensParams one = LensParams::make(p, q1), two = LensParams::make(p, q2);
          CyclicElement img = PiMap(two).apply(apply(F, chi(one, F.domain())));
          CyclicElement want = CyclicElement::monomial(p, -q2, 1, Integer(p) * w->b);
          if (!(img == want)) r.fail(label + ": pi(F(chi)) = " + img.to_string() + ", expected " + want.to_string());
        } catch (const Error& e) {
          r.fail(label + ": " + e.what());
        }
      }
    }
  }
  r.notes.push_back(std::to_string(equivalent) + " equivalent pairs, " + std::to_string(inequivalent) +
                    " inequivalent pairs");
  return r;
}

SuiteReport mu_laws(const SuiteOptions& o) {
  SuiteReport r{"mu-laws"};
  PresentationPtr d = build_d();
  long long words = 0;
  for (auto [p, q] : grid_pairs(o, 7)) {
    progress(o, "# mu-laws " + pq(p, q));
    LensParams l = LensParams::make(p, q);
    DgFunctor base = mu_map(l, 1, 1, 0);
    const DgPresentation& c = base.domain();
    for (int a = -3; a <= 3; ++a) {
      for (int b = -3; b <= 3; ++b) {
        for (int cc = -3; cc <= 3; ++cc) {
          ++r.cases;
          std::string label = pq(p, q) + " mu_{" + std::to_string(a) + "," + std::to_string(b) + "," +
                              std::to_string(cc) + "}";
          DgFunctor mu = mu_map(l, a, b, cc);
          if (!check_dg(mu).ok()) r.fail(label + ": not a chain map");
          if (!(compose_functors(mu_tilde(a, b, cc), base) == mu)) r.fail(label + ": mu tilde o mu_{1,1,0} differs");
          if (p % 2 == 0 && !check_dg(mu_map(l, a, b, cc, true)).ok()) r.fail(label + ": signed variant not a chain map");
        }
      }
    }
    if (apply(base, chi(l, c)) != Integer(q) * d->element("beta^2") + Integer(p) * d->element("gamma")) {
      r.fail(pq(p, q) + ": mu(chi) != q beta^2 + p gamma");
    }
    const int xmax = or_default(o.xmax, 2 * p * q);
    for (const Word& w : enumerate_basis(c, 2, xmax)) {
      ++words;
      Element e = Element::of_word(w);
      if (g_map(l, *d, apply(base, e)) != f_map(c, extend_differential(c, e))) {
        r.fail(pq(p, q) + ": g o mu != f o d on " + c.format(e));
      }
    }
  }
  r.notes.push_back(std::to_string(words) + " degree -2 words checked for g o mu = f o d");
  return r;
}

template <class Check>
SuiteReport property(const std::string& name, const SuiteOptions& o, Check check) {
  SuiteReport r{name};
  Rng rng(o.seed);
  const int cases = or_default(o.cases, 1000);
  for (int k = 0; k < cases; ++k) {
    ++r.cases;
    try {
      std::string msg = check(rng);
      if (!msg.empty()) r.fail("case " + std::to_string(k) + ": " + msg);
    } catch (const Error& e) {
      r.fail("case " + std::to_string(k) + ": " + e.what());
    }
  }
  return r;
}

// Random element that can be composed after an element ending at `source`.
Element random_left_factor(Rng& rng, const DgPresentation& p, ObjIndex source) {
  auto target = static_cast<ObjIndex>(std::uniform_int_distribution<int>(0, static_cast<int>(p.objects().size()) - 1)(rng));
  int degree = std::uniform_int_distribution<int>(-4, 0)(rng);
  return random_element(rng, p, source, target, degree);
}

SuiteReport leibniz(const SuiteOptions& o) {
  return property("leibniz", o, [](Rng& rng) -> std::string {
    DgPresentation p = random_presentation(rng);
    Element b = random_element(rng, p);
    Element a = random_left_factor(rng, p, b.target());
    Degree da = elem_degree(a);
    int sign_degree = da.kind == Degree::Kind::exact ? da.value : 0;
    Element lhs = extend_differential(p, a * b);
    Element rhs = extend_differential(p, a) * b +
                  Integer(sign_degree % 2 == 0 ? 1 : -1) * (a * extend_differential(p, b));
    if (lhs != rhs) return "d(ab) = " + p.format(lhs) + " but da b +- a db = " + p.format(rhs);
    return "";
  });
}

SuiteReport d_squared(const SuiteOptions& o) {
  return property("d-squared", o, [](Rng& rng) -> std::string {
    DgPresentation p = random_presentation(rng);
    if (!validate(p).ok()) return "random presentation invalid: " + validate(p).to_string();
    Element e = random_element(rng, p);
    Element dd = extend_differential(p, extend_differential(p, e));
    if (!dd.is_zero()) return "d^2(" + p.format(e) + ") = " + p.format(dd);
    Element de = extend_differential(p, e);
    Degree d0 = elem_degree(e), d1 = elem_degree(de);
    if (!de.is_zero() && !(d1.kind == Degree::Kind::exact && d1.value == d0.value + 1)) {
      return "d(" + p.format(e) + ") has the wrong degree";
    }
    return "";
  });
}

SuiteReport algebra_laws(const SuiteOptions& o) {
  return property("algebra-laws", o, [](Rng& rng) -> std::string {
    DgPresentation p = random_presentation(rng);
    Element c = random_element(rng, p);
    Element b = random_left_factor(rng, p, c.target());
    Element a = random_left_factor(rng, p, b.target());
    if (a * (b * c) != (a * b) * c) return "associativity fails";
    Element b2 = random_element(rng, p, b.source(), b.target(), std::uniform_int_distribution<int>(-4, 0)(rng));
    if (a * (b + b2) != a * b + a * b2) return "left distributivity fails";
    if ((b + b2) * c != b * c + b2 * c) return "right distributivity fails";
    if (a + Element::zero(a.source(), a.target()) != a) return "zero is not neutral";
    if (Element::identity(a.target()) * a != a || a * Element::identity(a.source()) != a) return "identity is not neutral";
    Element left = a * (b + b2);
    if (Element::from_terms(left.source(), left.target(), left.terms()) != left) return "normalizing twice differs";
    if (p.format(left) != p.format(a * b + a * b2)) return "equal elements print differently";
    return "";
  });
}

SuiteReport parser_roundtrip(const SuiteOptions& o) {
  return property("parser-roundtrip", o, [](Rng& rng) -> std::string {
    DgPresentation p = random_presentation(rng);
    Element e = random_element(rng, p);
    std::string text = p.format(e);
    Element back = p.element(text, Endpoints{e.source(), e.target()});
    if (back != e) return "'" + text + "' parses to '" + p.format(back) + "'";
    DgPresentation again = parse_presentation(serialize_presentation(p));
    if (!(again == p)) return "presentation round trip differs";
    return "";
  });
}

SuiteReport functoriality(const SuiteOptions& o) {
  return property("functoriality", o, [](Rng& rng) -> std::string {
    Span span = random_span(rng);
    const DgFunctor& f = span.alpha;
    const DgPresentation& c = f.domain();
    if (c.size() == 0) return "";
    if (!check_dg(f).ok()) return "random span leg is not a dg functor";
    Element v = random_element(rng, c);
    Element u = random_left_factor(rng, c, v.target());
    if (apply(f, u * v) != apply(f, u) * apply(f, v)) return "F(uv) != F(u) F(v)";
    Element v2 = random_element(rng, c, v.source(), v.target(), std::uniform_int_distribution<int>(-4, 0)(rng));
    if (apply(f, v + v2) != apply(f, v) + apply(f, v2)) return "F(u + v) != F(u) + F(v)";
    if (apply(f, extend_differential(c, v)) != extend_differential(f.codomain(), apply(f, v))) {
      return "F(d e) != d F(e) on " + c.format(v);
    }
    return "";
  });
}

SuiteReport construction_laws(const SuiteOptions& o) {
  return property("construction-laws", o, [](Rng& rng) -> std::string {
    Span span = random_span(rng);
    HocolimResult h = homotopy_pushout(span);
    const DgPresentation& out = *h.result;
    if (!validate(out).ok()) return "homotopy pushout invalid: " + validate(out).to_string();
    const DgPresentation& c = span.alpha.domain();
    for (const auto& [name, tag] : h.provenance.generators) {
      const int degree = out.gen(out.signature().generator(name)).degree;
      if (tag.starts_with("t:")) {
        const int source_degree = c.gen(c.signature().generator(tag.substr(2))).degree;
        if (degree != source_degree - 1) return "t-generator " + name + " has degree " + std::to_string(degree);
      } else if (tag.starts_with("tobj:") && degree != 0) {
        return "object t-generator " + name + " has nonzero degree";
      }
    }
    SimplifyResult first = simplify(out);
    SimplifyResult second = simplify(out);
    if (!(first.result == second.result) || log_to_json(first.log) != log_to_json(second.log)) {
      return "simplify is not deterministic";
    }
    if (!validate(first.result).ok()) return "simplified presentation invalid";
    return "";
  });
}

SuiteReport properties(const SuiteOptions& o) {
  SuiteReport r{"properties"};
  for (Runner run : {leibniz, d_squared, algebra_laws, parser_roundtrip, functoriality, construction_laws}) {
    SuiteReport part = run(o);
    r.cases += part.cases;
    r.notes.push_back(part.name + ": " + std::to_string(part.cases) + " cases, " + (part.ok ? "pass" : "FAIL"));
    for (const auto& f : part.failures) r.fail(part.name + " " + f);
  }
  return r;
}

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> suites = {
      {"lens-dga", lens_dga},
      {"gluing", gluing},
      {"lens-pipeline", lens_pipeline},
      {"cylinder", cylinder_suite},
      {"hocolim-routes", hocolim_routes},
      {"commuting", commuting},
      {"pi-laws", pi_laws},
      {"divisibility", divisibility},
      {"f-roundtrip", f_roundtrip},
      {"mu-laws", mu_laws},
      {"leibniz", leibniz},
      {"d-squared", d_squared},
      {"functoriality", functoriality},
      {"construction-laws", construction_laws},
      {"algebra-laws", algebra_laws},
      {"parser-roundtrip", parser_roundtrip},
      {"properties", properties},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, run] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& [n, run] : registry()) {
    if (n == name) return run(options);
  }
  throw PreconditionError("unknown suite '" + name + "'");
}

}  // namespace dgcat
