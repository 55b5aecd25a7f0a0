#include <doctest.h>

#include <set>

#include "dgcat/lens.hpp"
#include "oracle.hpp"

using namespace dgcat;

namespace {

std::vector<std::pair<int, int>> coprime_pairs(int p_max) {
  std::vector<std::pair<int, int>> out;
  for (int p = 2; p <= p_max; ++p) {
    for (int q = 1; q < p; ++q) {
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    }
  }
  return out;
}

std::vector<long long> flatten(const PsiMatrix& a) {
  std::vector<long long> out;
  for (const auto& row : a) {
    out.push_back(static_cast<long long>(row[0]));
    out.push_back(static_cast<long long>(row[1]));
  }
  return out;
}

std::vector<long long> to_ll(const PhiVector& v) {
  std::vector<long long> out;
  for (const auto& c : v) out.push_back(static_cast<long long>(c));
  return out;
}

}  // namespace

TEST_CASE("lens parameters") {
  LensParams a = LensParams::make(5, 2);
  CHECK(a.qbar == 3);
  CHECK(a.r == 1);
  LensParams b = LensParams::make(2, 1);
  CHECK(b.qbar == 1);
  CHECK(b.r == 0);
  LensParams c = LensParams::make(7, 2);
  CHECK(c.qbar == 4);
  CHECK(c.r == 1);
  CHECK_THROWS_AS(LensParams::make(4, 2), PreconditionError);
  CHECK_THROWS_AS(LensParams::make(3, 3), PreconditionError);
  for (auto [p, q] : coprime_pairs(13)) {
    LensParams l = LensParams::make(p, q);
    CHECK(q * l.qbar - l.r * p == 1);
    for (int smaller = 1; smaller < l.qbar; ++smaller) CHECK((q * smaller - 1) % p != 0);
  }
}

TEST_CASE("lens dga and distinguished elements") {
  PresentationPtr c21 = build_cpq(LensParams::make(2, 1));
  CHECK(c21->differential("y") == c21->element("1 - x^2"));
  CHECK(c21->differential("z") == c21->element("x*y - y*x"));
  PresentationPtr c72 = build_cpq(LensParams::make(7, 2));
  CHECK(c72->differential("z") == c72->element("x^2*y - y*x^2"));

  CHECK(chi(LensParams::make(2, 1), *c21) == c21->element("y^2 + x*z + z*x"));
  CHECK(lambda_elt(LensParams::make(2, 1), *c21) == c21->element("z"));
  CHECK(f_poly(*c21, 3) == c21->element("1 + x + x^2"));
  CHECK(f_poly(*c21, 0).is_zero());

  for (auto [p, q] : coprime_pairs(13)) {
    LensParams l = LensParams::make(p, q);
    PresentationPtr c = build_cpq(l);
    CHECK(validate(*c).ok());
    oracle::Differential D = oracle::cpq(p, q);
    CHECK(D.apply(oracle::from_element(c->signature(), chi(l, *c))).empty());
    oracle::Poly commutator = oracle::add(oracle::mul(oracle::letter("x"), oracle::letter("y")),
                                          oracle::mul(oracle::letter("y"), oracle::letter("x")), -1);
    CHECK(D.apply(oracle::from_element(c->signature(), lambda_elt(l, *c))) == commutator);
  }
}

TEST_CASE("pi on powers of chi") {
  LensParams l = LensParams::make(5, 2);
  PiMap pi(l);
  const DgPresentation& c = pi.domain();
  CHECK(pi.check_dg().ok());
  Element x = chi(l, c);
  CHECK(pi.apply(x) == CyclicElement::monomial(5, -2, 1, 5));
  CHECK(pi.apply(x * x) == CyclicElement::monomial(5, -4, 2, 25));
  CHECK(pi.apply(x * x * x) == CyclicElement::monomial(5, -6, 3, 125));
  CHECK(pi.apply(c.differential("z")).is_zero());
  CHECK(pi.apply(c.element("x^3*z*x^4 - 2*y*y")) == CyclicElement::monomial(5, 2, 1));
  CHECK(CyclicElement::monomial(5, -2, 1, 5).to_string() == "5*alpha^3*gamma");
}

TEST_CASE("enumerated basis words") {
  PresentationPtr c = build_cpq(LensParams::make(3, 1));
  std::vector<Word> b1 = enumerate_basis(*c, 1, 1);
  REQUIRE(b1.size() == 4);
  std::vector<std::string> names;
  for (const Word& w : b1) names.push_back(format_word(c->signature(), w));
  CHECK(names == std::vector<std::string>{"y", "x*y", "y*x", "x*y*x"});
  CHECK(enumerate_basis(*c, 2, 0).size() == 2);
  CHECK(enumerate_basis(*c, 2, 1).size() == 12);
  // Count oracle: sum over letter patterns of (xmax + 1)^(letters + 1).
  for (int n = 1; n <= 4; ++n) {
    for (int xmax = 0; xmax <= 2; ++xmax) {
      std::size_t expected = 0;
      for (int z = 0; 2 * z <= n; ++z) {
        int letters = n - z;
        std::size_t patterns = 1;
        for (int k = 0; k < z; ++k) patterns = patterns * static_cast<std::size_t>(letters - k) / static_cast<std::size_t>(k + 1);
        std::size_t slots = 1;
        for (int k = 0; k <= letters; ++k) slots *= static_cast<std::size_t>(xmax + 1);
        expected += patterns * slots;
      }
      std::vector<Word> words = enumerate_basis(*c, n, xmax);
      CHECK(words.size() == expected);
      CHECK(std::is_sorted(words.begin(), words.end(), WordLess{}));
      for (const Word& w : words) CHECK(w.degree() == -n);
    }
  }
}

TEST_CASE("psi and phi") {
  LensParams l = LensParams::make(5, 2);
  PresentationPtr c = build_cpq(l);
  Element b = c->element("x*z*x^2");
  PsiMatrix a = psi(l, *c, 1, 3, b);
  REQUIRE(a.size() == 1);
  CHECK(a[0][0] == 1);
  CHECK(a[0][1] == 0);
  Element db = extend_differential(*c, b);
  CHECK(db == c->element("x^3*y*x^2 - x*y*x^4"));
  PhiVector f = phi(l, *c, 1, 3, db);
  REQUIRE(f.size() == 1);
  CHECK(f[0] == -2);
  CHECK(rho(l, a) == f);

  PsiMatrix none = psi(l, *c, 2, 0, c->element("z*y*y"));
  CHECK(flatten(none) == std::vector<long long>{0, 0, 0, 0});
  CHECK_THROWS_AS(psi(l, *c, 1, 0, c->element("y")), PreconditionError);
  CHECK_THROWS_AS(phi(l, *c, 1, 0, c->element("z")), PreconditionError);

  // Agreement with the word-condition oracle on all small words.
  for (int n = 1; n <= 3; ++n) {
    for (const Word& w : enumerate_basis(*c, 2 * n, 2)) {
      Element e = Element::of_word(w, 3);
      Element de = extend_differential(*c, e);
      for (int m = 0; m < 5; ++m) {
        CHECK(flatten(psi(l, *c, n, m, e)) == oracle::lens_psi(oracle::from_element(c->signature(), e), 5, 2, n, m));
        CHECK(to_ll(phi(l, *c, n, m, de)) == oracle::lens_phi(oracle::from_element(c->signature(), de), 5, 2, n, m));
      }
    }
  }
}

TEST_CASE("commuting square") {
  for (int m = 0; m < 5; ++m) {
    CommutingReport r = check_commuting(LensParams::make(5, 2), 1, m, 12, CommutingMode::exhaustive);
    CHECK(r.ok);
    CHECK(r.words_evaluated == 13 * 13 * 13 + 13 * 13);
  }
  for (int m = 0; m < 7; ++m) CHECK(check_commuting(LensParams::make(7, 3), 2, m, 8).ok);
  for (int m = 0; m < 3; ++m) CHECK(check_commuting(LensParams::make(3, 1), 3, m, 6).ok);
  for (int m = 0; m < 7; ++m) CHECK(check_commuting(LensParams::make(7, 3), 2, m, 3, CommutingMode::exhaustive).ok);

  CommutingReport cert = check_commuting(LensParams::make(5, 2), 2, 1, 20);
  CHECK(cert.ok);
  CHECK(cert.words_covered == 21LL * 21 * 21 * 21 * 21 + 3LL * 21 * 21 * 21 * 21 + 21LL * 21 * 21);
  CHECK(cert.words_evaluated < cert.words_covered);
}

TEST_CASE("commuting square agrees with the oracle by exhaustion") {
  for (auto [p, q] : coprime_pairs(4)) {
    LensParams l = LensParams::make(p, q);
    PresentationPtr c = build_cpq(l);
    oracle::Differential D = oracle::cpq(p, q);
    for (int n = 1; n <= 2; ++n) {
      for (const Word& w : enumerate_basis(*c, 2 * n, 2 * p)) {
        oracle::Poly b = oracle::from_element(c->signature(), Element::of_word(w));
        oracle::Poly db = D.apply(b);
        for (int m = 0; m < p; ++m) {
          std::vector<long long> ps = oracle::lens_psi(b, p, q, n, m);
          std::vector<long long> lhs;
          for (int i = 0; i < n; ++i) lhs.push_back(-q * ps[2 * i] + p * ps[2 * i + 1]);
          REQUIRE(lhs == oracle::lens_phi(db, p, q, n, m));
        }
      }
    }
  }
}

TEST_CASE("divisibility") {
  LensParams l = LensParams::make(5, 2);
  PresentationPtr c = build_cpq(l);
  Element ch = chi(l, *c);
  for (int n = 1; n <= 3; ++n) {
    Element u = Element::identity(0);
    for (int k = 0; k < n; ++k) u = u * ch;
    DivisibilityResult r = divisibility_check(l, n, u);
    CHECK(r.ok);
    CHECK(r.quotient == CyclicElement::monomial(5, -2 * n, n));
  }
  Element w = c->element("x*z*y + 2*y*z*x^3 - x^2*y*y*y");
  Element dw = extend_differential(*c, w);
  DivisibilityResult zero = divisibility_check(l, 1, dw);
  CHECK(zero.ok);
  CHECK(zero.image.is_zero());

  Element w1 = c->element("z*y*x + x*y*x^2*y*y");
  Element u = Integer(3) * (c->element("x^2") * ch) - Integer(5) * extend_differential(*c, w1);
  DivisibilityResult mixed = divisibility_check(l, 1, u);
  CHECK(mixed.ok);
  CHECK(mixed.quotient == CyclicElement::monomial(5, 0, 1, 3));

  CHECK_THROWS_AS(divisibility_check(l, 1, c->element("z")), PreconditionError);
}

TEST_CASE("mu, mu tilde and the sign automorphism") {
  LensParams l = LensParams::make(5, 2);
  PresentationPtr d = build_d();
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      for (int c = -2; c <= 2; ++c) {
        DgFunctor mu = mu_map(l, a, b, c);
        CHECK(check_dg(mu).ok());
        CHECK(compose_functors(mu_tilde(a, b, c), mu_map(l, 1, 1, 0)) == mu);
      }
    }
  }
  DgFunctor mu = mu_map(l, 1, 1, 0);
  CHECK(apply(mu, chi(l, mu.domain())) == d->element("2*beta^2 + 5*gamma"));
  CHECK(compose_functors(mu_tilde(2, 3, 1), mu) == mu_map(l, 2, 3, 1));

  LensParams even = LensParams::make(4, 1);
  DgFunctor s = delta(even);
  CHECK(check_dg(s).ok());
  CHECK(compose_functors(s, s) == DgFunctor::identity(s.domain_ptr()));
  DgFunctor neg = mu_map(even, 1, 1, 0, true);
  CHECK(check_dg(neg).ok());
  CHECK(neg.image("x") == d->element("-1"));
  CHECK_THROWS_AS(delta(l), PreconditionError);
}

TEST_CASE("f and g") {
  LensParams l = LensParams::make(5, 2);
  PresentationPtr c = build_cpq(l);
  PresentationPtr d = build_d();
  CHECK(f_map(*c, c->element("x^3*y*x^2")) == IntPair{3, 2});
  CHECK(f_map(*c, Element::zero(0, 0)) == IntPair{0, 0});
  CHECK(g_map(l, *d, d->element("beta^2")) == IntPair{-5, 5});
  CHECK(g_map(l, *d, d->element("gamma")) == IntPair{2, -2});
  CHECK_THROWS_AS(f_map(*c, c->element("z")), PreconditionError);

  DgFunctor mu = mu_map(l, 1, 1, 0);
  for (const Word& w : enumerate_basis(*c, 2, 6)) {
    Element e = Element::of_word(w);
    CHECK(g_map(l, *d, apply(mu, e)) == f_map(*c, extend_differential(*c, e)));
  }
}

TEST_CASE("homotopy classification arithmetic") {
  CHECK(homotopy_equivalent(7, 1, 2) == LensWitness{3, 1, -1});
  CHECK_FALSE(homotopy_equivalent(5, 1, 2).has_value());
  CHECK(homotopy_equivalent(7, 3, 3) == LensWitness{1, 1, 0});

  for (int p = 2; p <= 11; ++p) {
    std::set<int> pm_squares;
    for (int a = 1; a < p; ++a) {
      if (std::gcd(a, p) != 1) continue;
      pm_squares.insert(a * a % p);
      pm_squares.insert((p - a * a % p) % p);
    }
    for (int q1 = 1; q1 < p; ++q1) {
      if (std::gcd(p, q1) != 1) continue;
      for (int q2 = 1; q2 < p; ++q2) {
        if (std::gcd(p, q2) != 1) continue;
        // q2 = +-a^2 q1 iff q2 * q1^-1 is a signed square.
        int inv = 1;
        while (q1 * inv % p != 1) ++inv;
        bool expected = pm_squares.count(q2 * inv % p) > 0;
        auto w = homotopy_equivalent(p, q1, q2);
        CHECK(w.has_value() == expected);
        CHECK(homotopy_equivalent(p, q2, q1).has_value() == expected);
        if (w) CHECK(Integer(w->b) * q2 == Integer(w->a) * w->a * q1 + w->c * p);
      }
    }
  }
}

TEST_CASE("explicit quasi-equivalence") {
  DgFunctor F = build_F(7, 1, 2, 3, 1, -1);
  CHECK(check_dg(F).ok());
  LensParams one = LensParams::make(7, 1), two = LensParams::make(7, 2);
  PiMap pi2(two);
  CHECK(pi2.apply(apply(F, chi(one, F.domain()))) == CyclicElement::monomial(7, 5, 1, 7));

  for (auto [p, q] : coprime_pairs(7)) {
    DgFunctor diag = build_F(p, q, q, 1, 1, 0);
    CHECK(check_dg(diag).ok());
    LensParams l = LensParams::make(p, q);
    CHECK(PiMap(l).apply(apply(diag, chi(l, diag.domain()))) == CyclicElement::monomial(p, -q, 1, p));
  }
  CHECK_THROWS_AS(build_F(7, 1, 2, 3, 1, 0), PreconditionError);
  CHECK_THROWS_AS(build_F(7, 1, 2, 3, 2, -1), PreconditionError);
}

TEST_CASE("independence of pi images") {
  for (auto [p, q] : coprime_pairs(5)) {
    LensParams l = LensParams::make(p, q);
    PiMap pi(l);
    Element ch = chi(l, pi.domain());
    for (int n = 1; n <= 2; ++n) {
      Element chn = n == 1 ? ch : ch * ch;
      std::vector<std::vector<Integer>> rows;
      for (int k = 0; k < p; ++k) {
        Element xk = k == 0 ? Element::identity(0) : Element::generator(pi.domain().signature(), 0, k);
        CyclicElement img = pi.apply(xk * chn);
        std::vector<Integer> row;
        for (int i = 0; i < p; ++i) row.push_back(img.coefficient(i, n));
        rows.push_back(row);
      }
      CHECK(integer_rank(rows) == p);
    }
  }
  CHECK(integer_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(integer_rank({{0, 0}, {0, 0}}) == 0);
  CHECK(integer_rank({{2, 1, 0}, {0, 3, 1}, {2, 4, 1}}) == 2);
}

TEST_CASE("Heegaard pipelines") {
  PipelineResult s3 = heegaard_pipeline_s3();
  CHECK_MESSAGE(s3.comparison.ok(), s3.comparison.to_string());
  CHECK(s3.result.size() == 1);
  CHECK(s3.result.gen(0).degree == -2);

  PipelineResult s1s2 = heegaard_pipeline_s1xs2();
  CHECK_MESSAGE(s1s2.comparison.ok(), s1s2.comparison.to_string());
  CHECK(s1s2.result.differential("z") == s1s2.result.element("x*y - y*x"));

  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 2}, {7, 3}, {7, 2}}) {
    PipelineResult r = heegaard_pipeline(LensParams::make(p, q));
    CHECK_MESSAGE(r.comparison.ok(), r.comparison.to_string());
    CHECK(r.result == *build_cpq(LensParams::make(p, q)));
    CHECK(replay(r.hocolim, r.log).result == r.result);
  }

  PipelineResult torus = torus_pipeline();
  CHECK_MESSAGE(torus.comparison.ok(), torus.comparison.to_string());
  CHECK(torus.result.differential("h") == torus.result.element("m*n - n*m"));
}
