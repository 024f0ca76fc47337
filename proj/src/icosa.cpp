#include "covres/icosa.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace covres {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

BigComplex rand_unit(std::uint64_t& state) {
  const double re = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1;
  const double im = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1;
  return {BigFloat(re), BigFloat(im)};
}

}  // namespace

Perm5 perm5_compose(const Perm5& p, const Perm5& q) {
  Perm5 r;
  for (int i = 0; i < 5; ++i) r[i] = p[q[i]];
  return r;
}

Perm5 perm5_inverse(const Perm5& p) {
  Perm5 r;
  for (int i = 0; i < 5; ++i) r[p[i]] = i;
  return r;
}

bool perm5_is_even(const Perm5& p) {
  int inversions = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

std::vector<BigComplex> perm5_apply(const Perm5& p,
                                    const std::vector<BigComplex>& z) {
  std::vector<BigComplex> r(5);
  for (int i = 0; i < 5; ++i) r[p[i]] = z[i];
  return r;
}

BigComplex IcosaContext::moebius(const Perm5& p, const BigComplex& x) const {
  const LinearSubstitution& m = lift(p);
  return (m.at(0, 0) * x + m.at(0, 1)) / (m.at(1, 0) * x + m.at(1, 1));
}

SignedPerm6 IcosaContext::quadratic_action(const LinearSubstitution& m) const {
  SignedPerm6 out;
  const BigFloat tol = boost::multiprecision::sqrt(cfg.eq_tolerance);
  for (int i = 0; i < 6; ++i) {
    const HomogeneousForm img = act_on_form(m, quadratics[i]);
    bool found = false;
    for (int j = 0; j < 6 && !found; ++j)
      for (int s : {1, -1}) {
        if ((img - BigComplex(s) * quadratics[j]).max_abs() < tol) {
          out[i] = {j, s};
          found = true;
          break;
        }
      }
    if (!found)
      throw std::runtime_error(
          "quadratic_action: substitution does not permute the six quadratics");
  }
  return out;
}

namespace {

// u_infinity(z) = v(z) - v(z reversed) with v = sum z_i^2 z_{i+1} (cyclic).
BigComplex u_infinity_value(const std::vector<BigComplex>& z) {
  BigComplex forward(0), backward(0);
  for (int i = 0; i < 5; ++i) {
    forward += z[i] * z[i] * z[(i + 1) % 5];
    const BigComplex& zr_i = z[4 - i];
    backward += zr_i * zr_i * z[4 - (i + 1) % 5];
  }
  return forward - backward;
}

std::vector<BigComplex> deterministic_test_roots(std::uint64_t seed) {
  std::uint64_t s = seed;
  std::vector<BigComplex> z;
  for (int i = 0; i < 5; ++i) z.push_back(rand_unit(s));
  return z;
}

}  // namespace

IcosaContext build_icosahedral_context(const ToleranceConfig& cfg) {
  ScopedPrecision guard(cfg.precision_bits);
  IcosaContext ctx;
  ctx.cfg = cfg;

  const BigComplex eps = epsilon5();
  const BigFloat r5 = sqrt5();

  // Generators: S = diag(eps^3, eps^2); the standard T-matrix.
  LinearSubstitution s_mat(2);
  s_mat.at(0, 0) = pow_int(eps, 3);
  s_mat.at(1, 1) = pow_int(eps, 2);
  LinearSubstitution t_mat(2);
  const BigComplex inv_r5 = BigComplex(1) / BigComplex(r5);
  t_mat.at(0, 0) = -(eps - pow_int(eps, 4)) * inv_r5;
  t_mat.at(0, 1) = (pow_int(eps, 2) - pow_int(eps, 3)) * inv_r5;
  t_mat.at(1, 0) = (pow_int(eps, 2) - pow_int(eps, 3)) * inv_r5;
  t_mat.at(1, 1) = (eps - pow_int(eps, 4)) * inv_r5;
  ctx.mat_a = s_mat;
  ctx.mat_b = t_mat;

  ctx.binary_group = close_group({s_mat, t_mat}, 120, cfg);
  if (ctx.binary_group.order() != 120)
    throw std::runtime_error("icosahedral closure order is not 120");
  ctx.quotient = projectivize(ctx.binary_group, cfg);
  if (ctx.quotient.quotient_size != 60 || ctx.quotient.kernel.size() != 2)
    throw std::runtime_error("icosahedral projective quotient is not 60 + kernel 2");

  // f = x1 x2 (x1^10 + 11 x1^5 x2^5 - x2^10).
  ctx.f = HomogeneousForm(2, 12);
  ctx.f.at(11) = BigComplex(1);
  ctx.f.at(6) = BigComplex(11);
  ctx.f.at(1) = BigComplex(-1);
  // H = -(x1^20 + x2^20) + 228 (x1^15 x2^5 - x1^5 x2^15) - 494 x1^10 x2^10.
  ctx.H_form = HomogeneousForm(2, 20);
  ctx.H_form.at(20) = BigComplex(-1);
  ctx.H_form.at(0) = BigComplex(-1);
  ctx.H_form.at(15) = BigComplex(228);
  ctx.H_form.at(5) = BigComplex(-228);
  ctx.H_form.at(10) = BigComplex(-494);
  // T = (x1^30 + x2^30) + 522 (x1^25 x2^5 - x1^5 x2^25)
  //     - 10005 (x1^20 x2^10 + x1^10 x2^20).
  ctx.T = HomogeneousForm(2, 30);
  ctx.T.at(30) = BigComplex(1);
  ctx.T.at(0) = BigComplex(1);
  ctx.T.at(25) = BigComplex(522);
  ctx.T.at(5) = BigComplex(-522);
  ctx.T.at(20) = BigComplex(-10005);
  ctx.T.at(10) = BigComplex(-10005);

  // Syzygy T^2 = 1728 f^5 - H^3, checked coefficientwise.
  {
    HomogeneousForm lhs = ctx.T * ctx.T;
    HomogeneousForm f5 = ctx.f * ctx.f;
    f5 = f5 * f5;
    f5 = f5 * ctx.f;
    HomogeneousForm h3 = ctx.H_form * ctx.H_form * ctx.H_form;
    const HomogeneousForm resid = lhs + h3 - BigComplex(1728) * f5;
    if (resid.max_abs() > cfg.eq_tolerance * f5.max_abs() * 1728)
      throw std::runtime_error("icosahedral syzygy residual too large");
  }

  // Form invariance under the whole group.
  for (const auto& e : ctx.binary_group.elements)
    for (const HomogeneousForm* phi : {&ctx.f, &ctx.H_form, &ctx.T}) {
      const HomogeneousForm img = act_on_form(e, *phi);
      if ((img - *phi).max_abs() >
          boost::multiprecision::sqrt(cfg.eq_tolerance) * phi->max_abs())
        throw std::runtime_error("icosahedral form not invariant");
    }

  // The six quadratics of Eq. (9): q_inf = sqrt5 x1 x2,
  // q_nu = eps^nu x1^2 + x1 x2 - eps^{4 nu} x2^2.
  for (int nu = 0; nu < 5; ++nu) {
    HomogeneousForm q(2, 2);
    q.at(2) = pow_int(eps, nu);
    q.at(1) = BigComplex(1);
    q.at(0) = -pow_int(eps, 4 * nu % 5);
    ctx.quadratics[nu] = q;
  }
  {
    HomogeneousForm q(2, 2);
    q.at(1) = BigComplex(r5);
    ctx.quadratics[5] = q;
  }

  // Correspondence A5 -> lifts, by breadth-first word enumeration over the
  // generator permutations a = (01234), b = (01)(23).
  ctx.gen_a = Perm5{1, 2, 3, 4, 0};
  ctx.gen_b = Perm5{1, 0, 3, 2, 4};
  std::vector<Perm5> discovery_order;
  {
    const Perm5 id{0, 1, 2, 3, 4};
    ctx.correspondence.emplace(id, LinearSubstitution::identity(2));
    discovery_order.push_back(id);
    std::deque<Perm5> frontier{id};
    const std::array<std::pair<Perm5, LinearSubstitution>, 2> gens{
        std::make_pair(ctx.gen_a, s_mat), std::make_pair(ctx.gen_b, t_mat)};
    while (!frontier.empty()) {
      const Perm5 p = frontier.front();
      frontier.pop_front();
      for (const auto& [gp, gm] : gens) {
        const Perm5 next = perm5_compose(p, gp);
        if (ctx.correspondence.count(next)) continue;
        ctx.correspondence.emplace(next, ctx.correspondence.at(p) * gm);
        discovery_order.push_back(next);
        frontier.push_back(next);
      }
    }
  }
  if (ctx.correspondence.size() != 60)
    throw std::runtime_error("correspondence does not enumerate A5");

  // Homomorphism up to sign, on generators and random products.
  {
    std::uint64_t rng = 0xC0FFEEull;
    const BigFloat tol = boost::multiprecision::sqrt(cfg.eq_tolerance);
    for (int t = 0; t < 50; ++t) {
      const Perm5& p = discovery_order[splitmix64(rng) % 60];
      const Perm5& q = discovery_order[splitmix64(rng) % 60];
      const LinearSubstitution prod = ctx.lift(p) * ctx.lift(q);
      const LinearSubstitution& target = ctx.lift(perm5_compose(p, q));
      LinearSubstitution neg(2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) neg.at(i, j) = -target.at(i, j);
      if (prod.max_entry_distance(target) > tol &&
          prod.max_entry_distance(neg) > tol)
        throw std::runtime_error("correspondence fails homomorphism check");
    }
  }

  // Coset representatives: first discovered permutation whose lift sends
  // q_inf to (a sign times) each symbol.
  {
    std::array<bool, 6> have{};
    for (const Perm5& p : discovery_order) {
      const int symbol = ctx.quadratic_action(ctx.lift(p))[5].first;
      if (!have[symbol]) {
        have[symbol] = true;
        ctx.coset_reps[symbol] = p;
      }
    }
    for (bool h : have)
      if (!h) throw std::runtime_error("coset representatives incomplete");
  }

  // Resolve the u-vector signs (item 4b): search the 2^5 patterns (u_inf
  // fixed principal) for the one matching the signed permutation action of
  // the six quadratics under both generators, on two generic test vectors.
  {
    const SignedPerm6 sp_a = ctx.quadratic_action(s_mat);
    const SignedPerm6 sp_b = ctx.quadratic_action(t_mat);
    const auto z0 = deterministic_test_roots(0xA5A5ull);
    const auto z1 = deterministic_test_roots(0x5A5Aull);
    auto build_u = [&](const std::vector<BigComplex>& z,
                       const std::array<int, 6>& zeta) {
      std::array<BigComplex, 6> u;
      for (int m = 0; m < 6; ++m)
        u[m] = BigComplex(zeta[m]) *
               u_infinity_value(perm5_apply(ctx.coset_reps[m], z));
      return u;
    };
    int found = -1;
    for (int bits = 0; bits < 32; ++bits) {
      std::array<int, 6> zeta{1, 1, 1, 1, 1, 1};
      for (int i = 0; i < 5; ++i)
        if ((bits >> i) & 1) zeta[i] = -1;
      bool good = true;
      for (const auto& z : {z0, z1}) {
        for (const auto& [gp, sp] :
             {std::make_pair(ctx.gen_a, sp_a), std::make_pair(ctx.gen_b, sp_b)}) {
          const auto u_z = build_u(z, zeta);
          const auto u_gz = build_u(perm5_apply(gp, z), zeta);
          BigFloat scale = 0;
          for (const auto& v : u_z) scale = std::max(scale, abs(v));
          for (int m = 0; m < 6 && good; ++m) {
            const BigComplex predicted =
                BigComplex(sp[m].second) * u_z[sp[m].first];
            if (abs(u_gz[m] - predicted) >
                boost::multiprecision::sqrt(cfg.eq_tolerance) * scale)
              good = false;
          }
          if (!good) break;
        }
        if (!good) break;
      }
      if (good) {
        if (found >= 0)
          throw std::runtime_error("u-vector sign pattern not unique");
        found = bits;
      }
    }
    if (found < 0)
      throw std::runtime_error("no consistent u-vector sign pattern");
    ctx.u_signs = {1, 1, 1, 1, 1, 1};
    for (int i = 0; i < 5; ++i)
      if ((found >> i) & 1) ctx.u_signs[i] = -1;
  }

  return ctx;
}

BigComplex icosa_parameter(const IcosaContext& ctx, const BigComplex& x) {
  const std::vector<BigComplex> p{x, BigComplex(1)};
  const BigComplex fv = evaluate_form(ctx.f, p);
  const BigFloat scale =
      std::max(BigFloat(1), boost::multiprecision::pow(abs(x), 12));
  if (abs(fv) < ctx.cfg.eq_tolerance * scale)
    throw std::domain_error("icosa_parameter: x lies on the f = 0 fiber");
  const BigComplex hv = evaluate_form(ctx.H_form, p);
  return pow_int(hv, 3) / (BigComplex(1728) * pow_int(fv, 5));
}

KleinFourObstruction klein_four_obstruction(const IcosaContext& ctx) {
  ScopedPrecision guard(ctx.cfg.precision_bits);
  KleinFourObstruction cert;
  cert.any_homomorphic = false;

  // Lifts of II (xi' = -xi), III (xi' = 1/xi), IV (xi' = -1/xi) with a fixed
  // determinant d:
  //   II'  = diag(lambda, -lambda),      det = -lambda^2 = d
  //   III' = antidiag(mu, mu),           det = -mu^2     = d
  //   IV'  = [[0, -nu], [nu, 0]],        det =  nu^2     = d
  // so lambda^2 = mu^2 = -d and nu^2 = d, two sign choices each.  The
  // product II'.III'.IV' works out to the scalar lambda.mu.nu times the
  // identity, and II'^2 = lambda^2 I, III'^2 = mu^2 I, IV'^2 = -nu^2 I.
  const BigComplex i_unit(BigFloat(0), BigFloat(1));
  for (int d : {-1, 1}) {
    const BigComplex lam_base = (d == -1) ? BigComplex(1) : i_unit;
    const BigComplex nu_base = (d == -1) ? i_unit : BigComplex(1);
    for (unsigned choice = 0; choice < 8; ++choice) {
      const BigComplex lambda = (choice & 1) ? -lam_base : lam_base;
      const BigComplex mu = (choice & 2) ? -lam_base : lam_base;
      const BigComplex nu = (choice & 4) ? -nu_base : nu_base;
      KleinFourCase c;
      c.det_value = d;
      c.sign_choice = choice;
      c.product_is_identity =
          abs(lambda * mu * nu - BigComplex(1)) < ctx.cfg.eq_tolerance;
      c.all_order_two =
          abs(lambda * lambda - BigComplex(1)) < ctx.cfg.eq_tolerance &&
          abs(mu * mu - BigComplex(1)) < ctx.cfg.eq_tolerance &&
          abs(-(nu * nu) - BigComplex(1)) < ctx.cfg.eq_tolerance;
      if (c.product_is_identity && c.all_order_two) cert.any_homomorphic = true;
      cert.cases.push_back(c);
    }
  }

  // The binary group contains exactly one element of order two (-Id), so no
  // subgroup can hit all fifteen involutions of the projective group.
  cert.order_two_elements = 0;
  const LinearSubstitution id2 = LinearSubstitution::identity(2);
  for (const auto& e : ctx.binary_group.elements) {
    if (e.max_entry_distance(id2) < ctx.cfg.eq_tolerance) continue;
    if ((e * e).max_entry_distance(id2) < ctx.cfg.eq_tolerance)
      ++cert.order_two_elements;
  }

  // Transversal search: the four generator-lift sign choices all close back
  // to the full group of order 120.
  int slot = 0;
  bool all_full = true;
  for (int sa : {1, -1})
    for (int sb : {1, -1}) {
      LinearSubstitution ga(2), gb(2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          ga.at(i, j) = BigComplex(sa) * ctx.mat_a.at(i, j);
          gb.at(i, j) = BigComplex(sb) * ctx.mat_b.at(i, j);
        }
      const MatrixGroup closed = close_group({ga, gb}, 120, ctx.cfg);
      cert.transversal_closure_orders[slot++] = closed.order();
      if (closed.order() != 120) all_full = false;
    }
  cert.order60_subgroup_found = !(all_full && cert.order_two_elements == 1);
  return cert;
}

QuinticInstance QuinticInstance::from_roots(const std::vector<BigComplex>& roots) {
  if (roots.size() != 5)
    throw std::invalid_argument("QuinticInstance: expected 5 roots");
  QuinticInstance inst;
  inst.roots = roots;
  inst.coefficients = poly_from_roots(roots);
  inst.sqrt_discriminant = BigComplex(1);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      inst.sqrt_discriminant *= roots[i] - roots[j];
  return inst;
}

QuinticInstance QuinticInstance::from_coefficients(
    const std::vector<BigComplex>& monic, const ToleranceConfig& cfg) {
  if (monic.size() != 6)
    throw std::invalid_argument("QuinticInstance: expected degree-5 polynomial");
  std::vector<BigComplex> roots = find_roots(monic, cfg);
  std::sort(roots.begin(), roots.end(), [](const BigComplex& a, const BigComplex& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return from_roots(roots);
}

MetacyclicVector metacyclic_u(const QuinticInstance& instance,
                              const IcosaContext& ctx) {
  const auto& z = instance.roots;
  if (z.size() != 5) throw std::invalid_argument("metacyclic_u: need 5 roots");
  BigFloat scale = 0;
  for (const auto& v : z) scale = std::max(scale, abs(v));
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (abs(z[i] - z[j]) < ctx.cfg.eq_tolerance * std::max(BigFloat(1), scale))
        throw std::domain_error("metacyclic_u: repeated roots");
  MetacyclicVector mv;
  mv.sign_pattern = ctx.u_signs;
  for (int m = 0; m < 6; ++m) {
    const BigComplex val = BigComplex(ctx.u_signs[m]) *
                           u_infinity_value(perm5_apply(ctx.coset_reps[m], z));
    if (m == 5)
      mv.u_infinity = val;
    else
      mv.u[m] = val;
  }
  return mv;
}

CovariantQuadratic covariant_quadratic(const MetacyclicVector& u) {
  const BigComplex eps = epsilon5();
  CovariantQuadratic q;
  BigComplex sum(0), sum_e(0), sum_e4(0);
  for (int nu = 0; nu < 5; ++nu) {
    sum += u.u[nu];
    sum_e += pow_int(eps, nu) * u.u[nu];
    sum_e4 += pow_int(eps, 4 * nu % 5) * u.u[nu];
  }
  q.A0 = (BigComplex(sqrt5()) * u.u_infinity + sum) / BigComplex(2);
  q.A1 = sum_e;
  q.A2 = sum_e4;
  return q;
}

BigComplex quadratic_discriminant(const CovariantQuadratic& q) {
  return q.A0 * q.A0 + q.A1 * q.A2;
}

BigComplex icosahedral_point(const CovariantQuadratic& q,
                             const ToleranceConfig& cfg) {
  const BigComplex root = sqrt(quadratic_discriminant(q));
  const BigFloat scale =
      std::max({abs(q.A0), abs(q.A1), abs(q.A2), BigFloat(1)});
  // Near-degenerate A1: the conjugate form of the same branch stays stable.
  const BigFloat small = pow(BigFloat(10), -10) * scale;
  if (abs(q.A1) >= small) return (-q.A0 + root) / q.A1;
  const BigComplex denom = q.A0 + root;
  if (abs(denom) < cfg.eq_tolerance * scale)
    throw std::domain_error("icosahedral_point: degenerate covariant quadratic");
  return q.A2 / denom;
}

QuinticReduction reduce_quintic(const QuinticInstance& instance,
                                const IcosaContext& ctx) {
  QuinticReduction red;
  red.u = metacyclic_u(instance, ctx);
  red.quadratic = covariant_quadratic(red.u);
  red.x = icosahedral_point(red.quadratic, ctx.cfg);
  red.X = icosa_parameter(ctx, red.x);
  return red;
}

std::vector<ProjectivePoint2> solve_icosahedral(const IcosaContext& ctx,
                                                const BigComplex& X,
                                                bool X_is_infinite,
                                                std::uint64_t seed) {
  ScopedPrecision guard(ctx.cfg.precision_bits);
  auto dehomogenize = [](const HomogeneousForm& form) {
    Polynomial p(form.degree() + 1);
    for (int a = 0; a <= form.degree(); ++a) p[a] = form.at(a);
    return p;
  };
  std::vector<ProjectivePoint2> out;
  if (X_is_infinite) {
    // f = 0: eleven affine roots plus the point at infinity, multiplicity 5.
    const auto roots = find_roots(dehomogenize(ctx.f), ctx.cfg, seed);
    for (const auto& r : roots)
      for (int k = 0; k < 5; ++k) out.push_back({r, BigComplex(1)});
    for (int k = 0; k < 5; ++k) out.push_back({BigComplex(1), BigComplex(0)});
    return out;
  }
  const BigFloat special = boost::multiprecision::sqrt(ctx.cfg.eq_tolerance);
  if (abs(X) < special) {
    const auto roots = find_roots(dehomogenize(ctx.H_form), ctx.cfg, seed);
    for (const auto& r : roots)
      for (int k = 0; k < 3; ++k) out.push_back({r, BigComplex(1)});
    return out;
  }
  if (abs(X - BigComplex(1)) < special) {
    const auto roots = find_roots(dehomogenize(ctx.T), ctx.cfg, seed);
    for (const auto& r : roots)
      for (int k = 0; k < 2; ++k) out.push_back({r, BigComplex(1)});
    return out;
  }
  // Generic fiber: H^3 - 1728 X f^5, degree 60 in the affine chart.
  const Polynomial h = dehomogenize(ctx.H_form);
  const Polynomial f = dehomogenize(ctx.f);
  const Polynomial h3 = poly_mul(poly_mul(h, h), h);
  Polynomial f5 = poly_mul(poly_mul(f, f), poly_mul(f, f));
  f5 = poly_mul(f5, f);
  for (auto& c : f5) c *= BigComplex(-1728) * X;
  const Polynomial target = poly_add(h3, f5);
  const auto roots = find_roots(target, ctx.cfg, seed);
  for (const auto& r : roots) out.push_back({r, BigComplex(1)});
  return out;
}

Polynomial jacobi_resolvent(const QuinticInstance& instance,
                            const IcosaContext& ctx) {
  std::vector<BigComplex> values;
  for (int m = 0; m < 6; ++m) {
    QuinticInstance shifted = instance;
    shifted.roots = perm5_apply(ctx.coset_reps[m], instance.roots);
    const CovariantQuadratic q =
        covariant_quadratic(metacyclic_u(shifted, ctx));
    values.push_back(BigComplex(5) * q.A0 * q.A0);
  }
  return poly_from_roots(values);
}

BigFloat chordal_distance(const ProjectivePoint2& a, const ProjectivePoint2& b) {
  const BigFloat num = abs(a.first * b.second - a.second * b.first);
  const BigFloat na = boost::multiprecision::sqrt(norm(a.first) + norm(a.second));
  const BigFloat nb = boost::multiprecision::sqrt(norm(b.first) + norm(b.second));
  return num / (na * nb);
}

}  // namespace covres
