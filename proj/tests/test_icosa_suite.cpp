#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covres/icosa.hpp"

#include <algorithm>

using namespace covres;

namespace {

double dabs(const BigFloat& x) { return static_cast<double>(x); }
double dist(const BigComplex& a, const BigComplex& b) { return dabs(abs(a - b)); }

const IcosaContext& ctx() {
  static const IcosaContext c = [] {
    set_working_precision_bits(256);
    return build_icosahedral_context(ToleranceConfig{});
  }();
  return c;
}

std::uint64_t g_rng_state = 0x1234abcdull;
double next_unit() {
  std::uint64_t z = (g_rng_state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
}
BigComplex rand_c() {
  return {BigFloat(2 * next_unit() - 1), BigFloat(2 * next_unit() - 1)};
}
std::vector<BigComplex> rand_roots(int n) {
  std::vector<BigComplex> z;
  for (int i = 0; i < n; ++i) z.push_back(rand_c());
  return z;
}
Perm5 rand_even_perm() {
  Perm5 p{0, 1, 2, 3, 4};
  const int len = 3 + int(next_unit() * 5);
  for (int i = 0; i < len; ++i)
    p = perm5_compose(p, (next_unit() < 0.5) ? ctx().gen_a : ctx().gen_b);
  return p;
}

}  // namespace

TEST_CASE("group cardinalities and kernel") {
  CHECK(ctx().binary_group.order() == 120);
  CHECK(ctx().quotient.quotient_size == 60);
  CHECK(ctx().quotient.kernel.size() == 2);
  // Kernel is {+-Id}.
  const LinearSubstitution id = LinearSubstitution::identity(2);
  bool has_id = false, has_neg = false;
  for (const auto& k : ctx().quotient.kernel) {
    if (dabs(k.max_entry_distance(id)) < 1e-60) has_id = true;
    LinearSubstitution neg(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) neg.at(i, j) = -id.at(i, j);
    if (dabs(k.max_entry_distance(neg)) < 1e-60) has_neg = true;
  }
  CHECK(has_id);
  CHECK(has_neg);
}

TEST_CASE("syzygy residual at 256 bits") {
  set_working_precision_bits(256);
  HomogeneousForm t2 = ctx().T * ctx().T;
  HomogeneousForm f5 = ctx().f * ctx().f;
  f5 = f5 * f5 * ctx().f;
  const HomogeneousForm h3 = ctx().H_form * ctx().H_form * ctx().H_form;
  const HomogeneousForm resid = t2 + h3 - BigComplex(1728) * f5;
  // Integer coefficients: the residual is exactly zero.
  CHECK(dabs(resid.max_abs()) == 0.0);
}

TEST_CASE("icosa_parameter fibers and orbit invariance") {
  set_working_precision_bits(256);
  Polynomial h(ctx().H_form.degree() + 1);
  for (int a = 0; a <= ctx().H_form.degree(); ++a) h[a] = ctx().H_form.at(a);
  const auto h_roots = find_roots(h, ctx().cfg);
  REQUIRE(h_roots.size() == 20);
  CHECK(dabs(abs(icosa_parameter(ctx(), h_roots[0]))) < 1e-55);

  Polynomial t(ctx().T.degree() + 1);
  for (int a = 0; a <= ctx().T.degree(); ++a) t[a] = ctx().T.at(a);
  const auto t_roots = find_roots(t, ctx().cfg);
  REQUIRE(t_roots.size() == 30);
  CHECK(dist(icosa_parameter(ctx(), t_roots[0]), BigComplex(1)) < 1e-50);

  // A zero of f is flagged distinctly.
  Polynomial f(ctx().f.degree() + 1);
  for (int a = 0; a <= ctx().f.degree(); ++a) f[a] = ctx().f.at(a);
  const auto f_roots = find_roots(f, ctx().cfg);
  CHECK_THROWS_AS(icosa_parameter(ctx(), f_roots[0]), std::domain_error);

  // Invariance along a projective orbit: all 60 images give the same X.
  const BigComplex x0 = rand_c() + BigComplex(2);
  const BigComplex X0 = icosa_parameter(ctx(), x0);
  for (const auto& cls : ctx().binary_group.projective_classes) {
    const LinearSubstitution& m = ctx().binary_group.elements[cls.front()];
    const BigComplex xi =
        (m.at(0, 0) * x0 + m.at(0, 1)) / (m.at(1, 0) * x0 + m.at(1, 1));
    CHECK(dist(icosa_parameter(ctx(), xi), X0) / std::max(1.0, dabs(abs(X0))) <
          1e-60);
  }
}

TEST_CASE("Klein four-group lifting obstruction") {
  const KleinFourObstruction cert = klein_four_obstruction(ctx());
  CHECK(cert.cases.size() == 16);
  CHECK_FALSE(cert.any_homomorphic);
  // Paper's normalization: with determinant -1 the product relation fails
  // in every one of the 8 sign choices.
  for (const auto& c : cert.cases)
    if (c.det_value == -1) CHECK_FALSE(c.product_is_identity);
  // With determinant +1 the scalar products can close up, but an order-two
  // lift no longer exists; either way no homomorphic image.
  for (const auto& c : cert.cases)
    if (c.det_value == 1) CHECK_FALSE(c.all_order_two);
  CHECK(cert.order_two_elements == 1);
  for (auto n : cert.transversal_closure_orders) CHECK(n == 120);
  CHECK_FALSE(cert.order60_subgroup_found);
}

TEST_CASE("metacyclic_u fixtures") {
  set_working_precision_bits(256);
  // z = (0,1,2,3,4): v = 0+2+12+36+0 = 50, reversed 70, so u_inf = -20.
  std::vector<BigComplex> z;
  for (int i = 0; i < 5; ++i) z.push_back(BigComplex(i));
  const auto inst = QuinticInstance::from_roots(z);
  const MetacyclicVector u = metacyclic_u(inst, ctx());
  CHECK(dist(u.u_infinity, BigComplex(-20)) < 1e-60);

  // Fifth roots of unity in natural order: u_inf = v - v_rev computed
  // directly from the epsilon powers.
  std::vector<BigComplex> ze;
  for (int i = 0; i < 5; ++i) ze.push_back(epsilon5(i));
  BigComplex fwd(0), bwd(0);
  for (int i = 0; i < 5; ++i) {
    fwd += ze[i] * ze[i] * ze[(i + 1) % 5];
    bwd += ze[4 - i] * ze[4 - i] * ze[(8 - i) % 5];
  }
  const MetacyclicVector ue = metacyclic_u(QuinticInstance::from_roots(ze), ctx());
  CHECK(dist(ue.u_infinity, fwd - bwd) < 1e-60);

  // Repeated roots are rejected.
  std::vector<BigComplex> bad = z;
  bad[4] = bad[0];
  CHECK_THROWS_AS(metacyclic_u(QuinticInstance::from_roots(bad), ctx()),
                  std::domain_error);
}

TEST_CASE("u-vector equivariance matches the six-quadratic action") {
  set_working_precision_bits(256);
  const auto z = rand_roots(5);
  for (const Perm5& g : {ctx().gen_a, ctx().gen_b}) {
    const SignedPerm6 sp = ctx().quadratic_action(ctx().lift(g));
    const MetacyclicVector u_z = metacyclic_u(QuinticInstance::from_roots(z), ctx());
    const MetacyclicVector u_gz = metacyclic_u(
        QuinticInstance::from_roots(perm5_apply(g, z)), ctx());
    auto get = [](const MetacyclicVector& u, int m) {
      return m == 5 ? u.u_infinity : u.u[m];
    };
    for (int m = 0; m < 6; ++m) {
      const BigComplex predicted = BigComplex(sp[m].second) * get(u_z, sp[m].first);
      CHECK(dist(get(u_gz, m), predicted) < 1e-55);
    }
  }
}

TEST_CASE("covariant_quadratic fixtures") {
  set_working_precision_bits(256);
  MetacyclicVector u{};
  SUBCASE("all zero") {
    const CovariantQuadratic q = covariant_quadratic(u);
    CHECK(dabs(abs(q.A0)) == 0.0);
    CHECK(dabs(abs(q.A1)) == 0.0);
    CHECK(dabs(abs(q.A2)) == 0.0);
  }
  SUBCASE("u_inf = 1, others 0") {
    u.u_infinity = BigComplex(1);
    const CovariantQuadratic q = covariant_quadratic(u);
    CHECK(dist(q.A0, BigComplex(sqrt5() / 2)) < 1e-70);
    CHECK(dabs(abs(q.A1)) < 1e-70);
    CHECK(dabs(abs(q.A2)) < 1e-70);
    CHECK(dist(quadratic_discriminant(q), BigComplex(BigFloat(5) / 4)) < 1e-70);
  }
  SUBCASE("u_nu = eps^{-nu}") {
    for (int nu = 0; nu < 5; ++nu) u.u[nu] = epsilon5((5 - nu) % 5);
    const CovariantQuadratic q = covariant_quadratic(u);
    CHECK(dist(q.A1, BigComplex(5)) < 1e-65);
    CHECK(dabs(abs(q.A0)) < 1e-65);
    CHECK(dabs(abs(q.A2)) < 1e-65);
  }
}

TEST_CASE("quadratic_discriminant zero case") {
  const CovariantQuadratic q{BigComplex(0), BigComplex(0), BigComplex(0)};
  CHECK(dabs(abs(quadratic_discriminant(q))) == 0.0);
}

TEST_CASE("icosahedral_point branches") {
  set_working_precision_bits(256);
  // (0, 1, 1) -> 1.
  const CovariantQuadratic q{BigComplex(0), BigComplex(1), BigComplex(1)};
  CHECK(dist(icosahedral_point(q, ctx().cfg), BigComplex(1)) < 1e-70);

  // Near-degenerate A1: the two algebraic forms agree.
  const BigComplex tiny(BigFloat(1e-10) / 10, BigFloat(0));
  const CovariantQuadratic qa{BigComplex(1), tiny, BigComplex(3)};
  const BigComplex via_alternate = icosahedral_point(qa, ctx().cfg);
  const BigComplex direct =
      (-qa.A0 + sqrt(quadratic_discriminant(qa))) / qa.A1;
  CHECK(dist(via_alternate, direct) < 1e-40);
}

TEST_CASE("x equivariance under even permutations (central claim)") {
  set_working_precision_bits(256);
  const auto z = rand_roots(5);
  const BigComplex x0 =
      icosahedral_point(covariant_quadratic(metacyclic_u(
                            QuinticInstance::from_roots(z), ctx())),
                        ctx().cfg);
  for (int t = 0; t < 10; ++t) {
    const Perm5 sigma = rand_even_perm();
    const BigComplex xs =
        icosahedral_point(covariant_quadratic(metacyclic_u(
                              QuinticInstance::from_roots(perm5_apply(sigma, z)),
                              ctx())),
                          ctx().cfg);
    CHECK(dabs(abs(xs - ctx().moebius(sigma, x0))) < 1e-25);
  }
}

TEST_CASE("reduce_quintic invariance and scaling") {
  set_working_precision_bits(256);
  std::vector<BigComplex> z;
  for (int i = 0; i < 5; ++i) z.push_back(BigComplex(i));
  const QuinticReduction base = reduce_quintic(QuinticInstance::from_roots(z), ctx());
  // X and A invariant across an even-permutation sweep.
  for (int t = 0; t < 10; ++t) {
    const Perm5 sigma = rand_even_perm();
    const QuinticReduction red =
        reduce_quintic(QuinticInstance::from_roots(perm5_apply(sigma, z)), ctx());
    CHECK(dist(red.X, base.X) / std::max(1.0, dabs(abs(base.X))) < 1e-25);
    CHECK(dist(quadratic_discriminant(red.quadratic),
               quadratic_discriminant(base.quadratic)) < 1e-25);
  }
  // Scaling z -> lambda z rescales u uniformly and leaves x unchanged.
  const BigComplex lambda(BigFloat(2), BigFloat(1));
  std::vector<BigComplex> zs;
  for (const auto& v : z) zs.push_back(lambda * v);
  const QuinticReduction scaled =
      reduce_quintic(QuinticInstance::from_roots(zs), ctx());
  CHECK(dist(scaled.x, base.x) < 1e-40);
}

TEST_CASE("from_coefficients roots round trip") {
  set_working_precision_bits(256);
  std::vector<BigComplex> z;
  for (int i = 0; i < 5; ++i) z.push_back(BigComplex(i));
  const auto direct = QuinticInstance::from_roots(z);
  const auto via_coeffs =
      QuinticInstance::from_coefficients(direct.coefficients, ctx().cfg);
  for (int i = 0; i < 5; ++i)
    CHECK(dist(via_coeffs.roots[i], direct.roots[i]) < 1e-50);
  // sqrt_discriminant squared equals the discriminant from either route.
  CHECK(dist(via_coeffs.sqrt_discriminant * via_coeffs.sqrt_discriminant,
             direct.sqrt_discriminant * direct.sqrt_discriminant) < 1e-40);
}

TEST_CASE("solve_icosahedral fibers and orbit closure") {
  set_working_precision_bits(256);
  // X = 0: the 20 zeros of H, multiplicity 3.
  const auto fiber0 = solve_icosahedral(ctx(), BigComplex(0));
  REQUIRE(fiber0.size() == 60);
  // X = 1: the 30 zeros of T, multiplicity 2.
  const auto fiber1 = solve_icosahedral(ctx(), BigComplex(1));
  REQUIRE(fiber1.size() == 60);
  // X = infinity: the 12 zeros of f, multiplicity 5.
  const auto fiber_inf = solve_icosahedral(ctx(), BigComplex(0), true);
  REQUIRE(fiber_inf.size() == 60);
  int at_infinity = 0;
  for (const auto& p : fiber_inf)
    if (dabs(abs(p.second)) == 0.0) ++at_infinity;
  CHECK(at_infinity == 5);

  // Generic X: the 60 roots form one orbit of the projective substitutions.
  const BigComplex X(BigFloat(0.7), BigFloat(0.2));
  const auto roots = solve_icosahedral(ctx(), X);
  REQUIRE(roots.size() == 60);
  const ProjectivePoint2& seed = roots[0];
  double worst = 0;
  for (const auto& cls : ctx().binary_group.projective_classes) {
    const LinearSubstitution& m = ctx().binary_group.elements[cls.front()];
    const ProjectivePoint2 img{
        m.at(0, 0) * seed.first + m.at(0, 1) * seed.second,
        m.at(1, 0) * seed.first + m.at(1, 1) * seed.second};
    double best = 1e300;
    for (const auto& r : roots)
      best = std::min(best, dabs(chordal_distance(img, r)));
    worst = std::max(worst, best);
  }
  CHECK(worst < 1e-25);
}

TEST_CASE("jacobi_resolvent") {
  set_working_precision_bits(256);
  const auto z = rand_roots(5);
  const auto inst = QuinticInstance::from_roots(z);
  const Polynomial jac = jacobi_resolvent(inst, ctx());
  CHECK(poly_degree(jac) == 6);

  // The identity-coset value 5 A0^2 is a root.
  const CovariantQuadratic q = covariant_quadratic(metacyclic_u(inst, ctx()));
  const BigComplex zeta = BigComplex(5) * q.A0 * q.A0;
  CHECK(dabs(abs(poly_eval(jac, zeta))) < 1e-30);

  // Coefficients invariant under even permutations.
  for (int t = 0; t < 10; ++t) {
    const Perm5 sigma = rand_even_perm();
    const Polynomial jp = jacobi_resolvent(
        QuinticInstance::from_roots(perm5_apply(sigma, z)), ctx());
    for (std::size_t i = 0; i < jac.size(); ++i)
      CHECK(dist(jp[i], jac[i]) < 1e-25);
  }

  // z = (0,1,2,3,4): identity-coset root is 5 ((sqrt5 u_inf + sum u)/2)^2.
  std::vector<BigComplex> zi;
  for (int i = 0; i < 5; ++i) zi.push_back(BigComplex(i));
  const auto inst_i = QuinticInstance::from_roots(zi);
  const MetacyclicVector u = metacyclic_u(inst_i, ctx());
  BigComplex s(0);
  for (const auto& v : u.u) s += v;
  const BigComplex a0 = (BigComplex(sqrt5()) * u.u_infinity + s) / BigComplex(2);
  const Polynomial ji = jacobi_resolvent(inst_i, ctx());
  CHECK(dabs(abs(poly_eval(ji, BigComplex(5) * a0 * a0))) < 1e-30);
}

TEST_CASE("X generically moves under a transposition") {
  set_working_precision_bits(256);
  int moved = 0;
  for (int t = 0; t < 10; ++t) {
    const auto z = rand_roots(5);
    const QuinticReduction base =
        reduce_quintic(QuinticInstance::from_roots(z), ctx());
    std::vector<BigComplex> zt = z;
    std::swap(zt[0], zt[1]);
    const QuinticReduction odd =
        reduce_quintic(QuinticInstance::from_roots(zt), ctx());
    if (dist(odd.X, base.X) > 1e-17) ++moved;
  }
  CHECK(moved >= 9);
}
