#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgcat/functor.hpp"
#include "dgcat/simplify.hpp"

namespace dgcat {

// Coprime p > q >= 1 with the smallest positive qbar such that q*qbar = r*p + 1.
struct LensParams {
  int p = 0;
  int q = 0;
  int qbar = 0;
  int r = 0;

  static LensParams make(int p, int q);
};

// x (0, closed), y (-1, dy = 1 - x^p), z (-2, dz = x^q y - y x^q).
PresentationPtr build_cpq(const LensParams& params);

// 1 + x + ... + x^(n-1) for a degree-0 closed endomorphism x; f_0 = 0.
Element f_poly(const Element& x, int n);
Element f_poly(const DgPresentation& c, int n);

// The closed class of degree -2; d(chi) = 0 is checked on construction.
Element chi(const LensParams& params, const DgPresentation& c);
// Degree -2 with d(lambda) = xy - yx, checked on construction.
Element lambda_elt(const LensParams& params, const DgPresentation& c);

// Z-linear combination of alpha^i gamma^n with alpha^p = 1, stored reduced.
class CyclicElement {
 public:
  explicit CyclicElement(int p) : p_(p) {}
  static CyclicElement monomial(int p, long long alpha_power, int gamma_power, Integer coef = 1);

  int p() const { return p_; }
  const std::map<std::pair<int, int>, Integer>& terms() const { return terms_; }
  Integer coefficient(long long alpha_power, int gamma_power) const;
  bool is_zero() const { return terms_.empty(); }

  CyclicElement operator+(const CyclicElement& o) const;
  CyclicElement operator-(const CyclicElement& o) const;
  CyclicElement operator*(const CyclicElement& o) const;
  CyclicElement scaled(const Integer& c) const;
  bool operator==(const CyclicElement& o) const = default;

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  int p_;
  std::map<std::pair<int, int>, Integer> terms_;  // (i mod p, n) -> nonzero coefficient

  void add(int i, int n, const Integer& c);
};

// x -> alpha, y -> 0, z -> gamma into Z[alpha, gamma]/(alpha^p = 1).
class PiMap {
 public:
  explicit PiMap(const LensParams& params);
  const LensParams& params() const { return params_; }
  const DgPresentation& domain() const { return *domain_; }
  CyclicElement apply(const Element& e) const;
  // The target has zero differential, so this checks pi(dg) = 0 on generators.
  ValidationReport check_dg() const;

 private:
  LensParams params_;
  PresentationPtr domain_;
};

// Free on beta (-1) and gamma (-2) with zero differential.
PresentationPtr build_d();

// x -> 1, y -> a*beta, z -> b*gamma + c*beta^2. With negate_x the map is
// precomposed with the sign automorphism, so x -> -1 (even p only).
DgFunctor mu_map(const LensParams& params, const Integer& a, const Integer& b, const Integer& c,
                 bool negate_x = false);
// beta -> a*beta, gamma -> b*gamma + c*beta^2.
DgFunctor mu_tilde(const Integer& a, const Integer& b, const Integer& c);
// x -> -x, y -> y, z -> -z; requires even p.
DgFunctor delta(const LensParams& params);

using IntPair = std::pair<Integer, Integer>;

// f(x^i y x^j) = (i, j) on degree -1 elements of C_{p,q}.
IntPair f_map(const DgPresentation& c, const Element& e);
// g(beta^2) = (-p, p), g(gamma) = (q, -q) on degree -2 elements of D.
IntPair g_map(const LensParams& params, const DgPresentation& d, const Element& e);

// Degree -n words x^i0 Y1 x^i1 ... Yk x^ik with Y in {y, z} and every
// exponent at most xmax, in canonical order.
std::vector<Word> enumerate_basis(const DgPresentation& c, int n, int xmax);

using PsiMatrix = std::vector<std::array<Integer, 2>>;
using PhiVector = std::vector<Integer>;

// Degree -2n input; row i-1 holds (psi^{i,1}, psi^{i,2}).
PsiMatrix psi(const LensParams& params, const DgPresentation& c, int n, int m, const Element& e);
// Degree -2n+1 input.
PhiVector phi(const LensParams& params, const DgPresentation& c, int n, int m, const Element& e);
// A * (-q, p)^T.
PhiVector rho(const LensParams& params, const PsiMatrix& a);

struct CommutingReport {
  bool ok = true;
  long long words_evaluated = 0;
  long long words_covered = 0;
  std::vector<std::string> counterexamples;
};

enum class CommutingMode { exhaustive, certificate };

// rho(Psi_m(b)) = Phi_m(d b) on every basis word of degree -2n with exponents
// at most xmax. Certificate mode evaluates, per letter pattern and residue of
// the exponent sum, an affinely spanning set of exponent vectors; both sides
// are affine in the exponents on such a class, so this covers every word.
CommutingReport check_commuting(const LensParams& params, int n, int m, int xmax,
                                CommutingMode mode = CommutingMode::certificate);

struct DivisibilityResult {
  bool ok = true;
  CyclicElement image;
  CyclicElement quotient;
  std::string message;
};

// u closed of degree -2n; checks that p^n divides every coefficient of pi(u).
DivisibilityResult divisibility_check(const LensParams& params, int n, const Element& u);

struct LensWitness {
  int a = 0;
  int b = 0;
  Integer c = 0;
  bool operator==(const LensWitness&) const = default;
};

// First (a, b) with a ascending from 0 and b = 1 before -1 such that
// b*q2 = a^2*q1 (mod p); c = (b*q2 - a^2*q1) / p.
std::optional<LensWitness> homotopy_equivalent(int p, int q1, int q2);

// The explicit quasi-equivalence C_{p,q1} -> C_{p,q2}.
DgFunctor build_F(int p, int q1, int q2, int a, int b, const Integer& c);

// Rank over Q of integer row vectors (fraction-free elimination).
int integer_rank(std::vector<std::vector<Integer>> rows);

struct PipelineResult {
  DgPresentation hocolim;
  DgPresentation result;
  RewriteLog log;
  DgPresentation expected;
  ValidationReport comparison;
};

// Genus-one Heegaard gluing of two solid tori with i2(m) = x^a, i2(n) = x^b,
// followed by a scripted simplification.
PipelineResult heegaard_pipeline(const LensParams& params);
PipelineResult heegaard_pipeline_s3();
PipelineResult heegaard_pipeline_s1xs2();
// Two circles glued to a torus: k<m, n, h>[{m, n}^-1] with dh = mn - nm.
PipelineResult torus_pipeline();

// k<m, n, h>[{m, n}^-1] with dh = mn - nm.
DgPresentation build_torus();

}  // namespace dgcat
