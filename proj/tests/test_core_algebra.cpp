#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covres/form.hpp"
#include "covres/matrix.hpp"

#include <cstdint>

using namespace covres;

namespace {

const ToleranceConfig kCfg;

double dabs(const BigFloat& x) { return static_cast<double>(x); }
double dist(const BigComplex& a, const BigComplex& b) { return dabs(abs(a - b)); }

// Deterministic pseudo-random complex values for property tests.
BigComplex rand_complex(std::uint64_t& state) {
  auto next = [&state]() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
  };
  return {BigFloat(2 * next() - 1), BigFloat(2 * next() - 1)};
}

HomogeneousForm random_form(int nvars, int degree, std::uint64_t& state) {
  HomogeneousForm f(nvars, degree);
  if (nvars == 2) {
    for (int a = 0; a <= degree; ++a) f.at(a) = rand_complex(state);
  } else {
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b) f.at(a, b) = rand_complex(state);
  }
  return f;
}

LinearSubstitution random_unimodular(int dim, std::uint64_t& state) {
  LinearSubstitution s(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) s.at(i, j) = rand_complex(state);
  return s.unimodularized();
}

std::vector<BigComplex> random_point(int dim, std::uint64_t& state) {
  std::vector<BigComplex> p;
  for (int i = 0; i < dim; ++i) p.push_back(rand_complex(state));
  return p;
}

}  // namespace

TEST_CASE("special constants carry full precision") {
  set_working_precision_bits(256);
  const BigComplex eps = epsilon5();
  // eps^5 = 1 to far below double noise.
  CHECK(dist(pow_int(eps, 5), BigComplex(1)) < 1e-70);
  const BigComplex j = omega3();
  CHECK(dist(pow_int(j, 3), BigComplex(1)) < 1e-70);
  CHECK(dabs(boost::multiprecision::abs(sqrt5() * sqrt5() - 5)) < 1e-70);
  const BigComplex s = sqrt_m15();
  CHECK(dist(s * s, BigComplex(-15)) < 1e-70);
  // 1 + j + j^2 = 0.
  CHECK(dist(BigComplex(1) + j + j * j, BigComplex(0)) < 1e-70);
}

TEST_CASE("evaluate_form basics") {
  set_working_precision_bits(256);
  // x1 x2 at (1, 1) -> 1.
  HomogeneousForm f(2, 2);
  f.at(1) = BigComplex(1);
  CHECK(dist(evaluate_form(f, {BigComplex(1), BigComplex(1)}), BigComplex(1)) <
        1e-70);

  // k1 = x1^2 + j x2^2 + j^2 x3^2 at (1,1,1) -> 1 + j + j^2 = 0.
  HomogeneousForm k1(3, 2);
  k1.at(2, 0) = BigComplex(1);
  k1.at(0, 2) = omega3();
  k1.at(0, 0) = omega3(2);
  CHECK(dist(evaluate_form(k1, {BigComplex(1), BigComplex(1), BigComplex(1)}),
             BigComplex(0)) < 1e-70);

  CHECK_THROWS(evaluate_form(f, {BigComplex(1)}));
}

TEST_CASE("form product respects degree grading and evaluation") {
  set_working_precision_bits(256);
  std::uint64_t state = 1;
  for (int nvars : {2, 3}) {
    const HomogeneousForm a = random_form(nvars, 3, state);
    const HomogeneousForm b = random_form(nvars, 2, state);
    const HomogeneousForm ab = a * b;
    CHECK(ab.degree() == 5);
    for (int t = 0; t < 5; ++t) {
      const auto p = random_point(nvars, state);
      CHECK(dist(evaluate_form(ab, p), evaluate_form(a, p) * evaluate_form(b, p)) <
            1e-60);
    }
  }
}

TEST_CASE("act_on_form composes with evaluation") {
  set_working_precision_bits(256);
  // Identity fixes any form.
  std::uint64_t state = 7;
  const HomogeneousForm f = random_form(3, 4, state);
  const HomogeneousForm g = act_on_form(LinearSubstitution::identity(3), f);
  CHECK(dabs((f - g).max_abs()) < 1e-70);

  // Scalar substitution j*Id on a cubic: scales by j^3 = 1.
  LinearSubstitution jid = LinearSubstitution::identity(3);
  for (int i = 0; i < 3; ++i) jid.at(i, i) = omega3();
  const HomogeneousForm cubic = random_form(3, 3, state);
  CHECK(dabs((act_on_form(jid, cubic) - cubic).max_abs()) < 1e-60);

  // Swap x1 <-> x2 normalized to det 1: x1^2 -> -x2^2.
  LinearSubstitution swap(2);
  swap.at(0, 1) = BigComplex(1);
  swap.at(1, 0) = BigComplex(1);
  swap = swap.unimodularized();
  HomogeneousForm x1sq(2, 2);
  x1sq.at(2) = BigComplex(1);
  const HomogeneousForm img = act_on_form(swap, x1sq);
  CHECK(dist(img.at(0), BigComplex(-1)) < 1e-60);
  CHECK(dist(img.at(2), BigComplex(0)) < 1e-60);

  // evaluate(act(S,phi), p) = evaluate(phi, S p) for random triples.
  for (int t = 0; t < 20; ++t) {
    const int nvars = (t % 2) ? 2 : 3;
    const LinearSubstitution s = random_unimodular(nvars, state);
    const HomogeneousForm phi = random_form(nvars, 3 + t % 4, state);
    const auto p = random_point(nvars, state);
    CHECK(dist(evaluate_form(act_on_form(s, phi), p),
               evaluate_form(phi, s.apply(p))) < 1e-55);
  }

  // Right action: act(S*T, phi) = act(T, act(S, phi)).
  for (int t = 0; t < 5; ++t) {
    const LinearSubstitution s = random_unimodular(3, state);
    const LinearSubstitution u = random_unimodular(3, state);
    const HomogeneousForm phi = random_form(3, 4, state);
    const HomogeneousForm lhs = act_on_form(s * u, phi);
    const HomogeneousForm rhs = act_on_form(u, act_on_form(s, phi));
    CHECK(dabs((lhs - rhs).max_abs()) < 1e-55);
  }
}

TEST_CASE("hessian_form") {
  set_working_precision_bits(256);
  // Fermat cubic -> 216 x1 x2 x3.
  HomogeneousForm fermat(3, 3);
  fermat.at(3, 0) = BigComplex(1);
  fermat.at(0, 3) = BigComplex(1);
  fermat.at(0, 0) = BigComplex(1);
  const HomogeneousForm h = hessian_form(fermat);
  CHECK(dist(h.at(1, 1), BigComplex(216)) < 1e-60);
  HomogeneousForm expected(3, 3);
  expected.at(1, 1) = BigComplex(216);
  CHECK(dabs((h - expected).max_abs()) < 1e-60);

  // Degenerate cubic x1^3 -> zero form.
  HomogeneousForm cube(3, 3);
  cube.at(3, 0) = BigComplex(1);
  CHECK(dabs(hessian_form(cube).max_abs()) < 1e-70);

  // Covariance: hessian(act(S, phi)) = act(S, hessian(phi)) for unimodular S.
  std::uint64_t state = 11;
  for (int t = 0; t < 5; ++t) {
    const LinearSubstitution s = random_unimodular(3, state);
    const HomogeneousForm phi = random_form(3, 3, state);
    const HomogeneousForm lhs = hessian_form(act_on_form(s, phi));
    const HomogeneousForm rhs = act_on_form(s, hessian_form(phi));
    CHECK(dabs((lhs - rhs).max_abs()) < 1e-55);
  }
}

TEST_CASE("jacobian_det") {
  set_working_precision_bits(256);
  // (x1^2, x2^2, x3^2) -> 8 x1 x2 x3.
  HomogeneousForm q1(3, 2), q2(3, 2), q3(3, 2);
  q1.at(2, 0) = BigComplex(1);
  q2.at(0, 2) = BigComplex(1);
  q3.at(0, 0) = BigComplex(1);
  const HomogeneousForm j = jacobian_det(q1, q2, q3);
  CHECK(dist(j.at(1, 1), BigComplex(8)) < 1e-70);

  // Repeated argument -> zero.
  CHECK(dabs(jacobian_det(q1, q1, q3).max_abs()) < 1e-70);

  // Swap antisymmetry checked at random points.
  std::uint64_t state = 13;
  const HomogeneousForm a = random_form(3, 2, state);
  const HomogeneousForm b = random_form(3, 2, state);
  const HomogeneousForm c = random_form(3, 2, state);
  const HomogeneousForm jab = jacobian_det(a, b, c);
  const HomogeneousForm jba = jacobian_det(b, a, c);
  for (int t = 0; t < 10; ++t) {
    const auto p = random_point(3, state);
    CHECK(dist(evaluate_form(jab, p), -evaluate_form(jba, p)) < 1e-55);
  }

  // Unimodular covariance: jac(a.S, b.S, c.S) = act(S, jac(a,b,c)).
  for (int t = 0; t < 5; ++t) {
    const LinearSubstitution s = random_unimodular(3, state);
    const HomogeneousForm lhs =
        jacobian_det(act_on_form(s, a), act_on_form(s, b), act_on_form(s, c));
    const HomogeneousForm rhs = act_on_form(s, jacobian_det(a, b, c));
    CHECK(dabs((lhs - rhs).max_abs()) < 1e-55);
  }
}

TEST_CASE("close_group and projectivize on small groups") {
  set_working_precision_bits(256);
  // {-Id} generates a group of order 2.
  LinearSubstitution neg = LinearSubstitution::identity(2);
  neg.at(0, 0) = BigComplex(-1);
  neg.at(1, 1) = BigComplex(-1);
  MatrixGroup g2 = close_group({neg}, 8, kCfg);
  CHECK(g2.order() == 2);

  const ProjectiveQuotient q = projectivize(g2, kCfg);
  CHECK(q.quotient_size == 1);
  CHECK(q.kernel.size() == 2);

  // Trivial group.
  MatrixGroup g1 = close_group({LinearSubstitution::identity(3)}, 4, kCfg);
  CHECK(g1.order() == 1);
  MatrixGroup g1b = g1;
  const ProjectiveQuotient q1 = projectivize(g1b, kCfg);
  CHECK(q1.quotient_size == 1);
  CHECK(q1.kernel.size() == 1);

  // Closure idempotence: closing the elements again changes nothing.
  MatrixGroup again = close_group(g2.elements, 8, kCfg);
  CHECK(again.order() == g2.order());

  // Every element unimodular.
  for (const auto& e : g2.elements)
    CHECK(dabs(abs(e.determinant() - BigComplex(1))) < 1e-70);

  // Exceeding the bound throws.
  CHECK_THROWS(close_group({neg}, 1, kCfg));
}

TEST_CASE("unimodularized and phase normalization") {
  set_working_precision_bits(256);
  std::uint64_t state = 17;
  for (int t = 0; t < 10; ++t) {
    const LinearSubstitution s = random_unimodular(3, state);
    CHECK(dabs(abs(s.determinant() - BigComplex(1))) < 1e-60);
    // Phase normalization identifies scalar multiples.
    LinearSubstitution scaled(3);
    const BigComplex phase = unit_phase(BigFloat(2) / 3 * big_pi());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) scaled.at(i, j) = s.at(i, j) * phase;
    CHECK(dabs(s.phase_normalized().max_entry_distance(
              scaled.phase_normalized())) < 1e-60);
  }
}

TEST_CASE("tolerance config enforces headroom") {
  CHECK_THROWS(ToleranceConfig(64, -40));
  const ToleranceConfig ok(256, -128);
  CHECK(ok.precision_bits == 256);
}
