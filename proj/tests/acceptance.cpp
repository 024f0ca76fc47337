// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// Tolerances are the pinned contract values, not derived from configuration.

#include "covres/cli.hpp"

#include <cstdint>
#include <functional>
#include <iostream>
#include <vector>

using namespace covres;

namespace {

double dabs(const BigFloat& x) { return static_cast<double>(x); }
double dist(const BigComplex& a, const BigComplex& b) { return dabs(abs(a - b)); }

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t rand_index(std::uint64_t& state, std::uint64_t bound) {
  return splitmix64(state) % bound;
}

BigComplex rand_complex(std::uint64_t& state) {
  const double re = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1;
  const double im = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1;
  return {BigFloat(re), BigFloat(im)};
}

std::vector<BigComplex> rand_roots(std::uint64_t& state, int n) {
  std::vector<BigComplex> z;
  for (int i = 0; i < n; ++i) z.push_back(rand_complex(state));
  return z;
}

Perm5 random_even_perm5(std::uint64_t& state) {
  Perm5 p{0, 1, 2, 3, 4};
  for (int i = 4; i > 0; --i) std::swap(p[i], p[rand_index(state, i + 1)]);
  if (!perm5_is_even(p)) std::swap(p[0], p[1]);
  return p;
}

Perm6 random_even_perm6(std::uint64_t& state) {
  Perm6 p{0, 1, 2, 3, 4, 5};
  for (int i = 5; i > 0; --i) std::swap(p[i], p[rand_index(state, i + 1)]);
  if (!perm6_is_even(p)) std::swap(p[0], p[1]);
  return p;
}

int sort_sign(std::array<int, 3> t) {
  int s = 1;
  if (t[0] > t[1]) { std::swap(t[0], t[1]); s = -s; }
  if (t[1] > t[2]) { std::swap(t[1], t[2]); s = -s; }
  if (t[0] > t[1]) { std::swap(t[0], t[1]); s = -s; }
  return s;
}

BigComplex delta_of(const std::vector<BigComplex>& z, int i, int j, int k) {
  return (z[j] - z[k]) * (z[k] - z[i]) * (z[i] - z[j]);
}

std::size_t distinct_count(const std::vector<ProjectivePoint2>& pts,
                           double tol) {
  std::vector<ProjectivePoint2> reps;
  for (const auto& p : pts) {
    bool found = false;
    for (const auto& r : reps)
      if (dabs(chordal_distance(p, r)) < tol) {
        found = true;
        break;
      }
    if (!found) reps.push_back(p);
  }
  return reps.size();
}

bool same_point_set3(const std::vector<ProjectivePoint3>& a,
                     const std::vector<ProjectivePoint3>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    double best = 1e9;
    for (const auto& q : b) best = std::min(best, dabs(chordal_distance3(p, q)));
    if (best > tol) return false;
  }
  return true;
}

struct Gate {
  int failures = 0;
  int index = 0;

  void criterion(const std::string& name, const std::function<bool()>& body) {
    ++index;
    bool ok = false;
    std::string note;
    try {
      ok = body();
    } catch (const std::exception& e) {
      note = std::string(" (exception: ") + e.what() + ")";
    }
    std::cout << "criterion " << (index < 10 ? "0" : "") << index << " " << name
              << ": " << (ok ? "PASS" : "FAIL") << note << std::endl;
    if (!ok) ++failures;
  }
};

}  // namespace

int main() {
  ToleranceConfig cfg;
  set_working_precision_bits(cfg.precision_bits);
  const IcosaContext ic = build_icosahedral_context(cfg);
  const ValentinerContext vc =
      build_valentiner_context(valentiner_generators(cfg), cfg);
  Gate gate;

  gate.criterion("group cardinalities 120/60 and 1080/360", [&] {
    return ic.binary_group.order() == 120 && ic.quotient.quotient_size == 60 &&
           vc.ternary_group.order() == 1080 && vc.quotient.quotient_size == 360;
  });

  gate.criterion("Klein four-group lifting obstruction", [&] {
    const KleinFourObstruction cert = klein_four_obstruction(ic);
    if (cert.cases.size() != 16 || cert.any_homomorphic) return false;
    if (cert.order_two_elements != 1 || cert.order60_subgroup_found)
      return false;
    for (std::size_t order : cert.transversal_closure_orders)
      if (order != 120) return false;
    return true;
  });

  gate.criterion("syzygy T^2+H^3-1728f^5 and fiber multiplicities", [&] {
    HomogeneousForm f5 = ic.f * ic.f;
    f5 = f5 * f5 * ic.f;
    const HomogeneousForm resid =
        ic.T * ic.T + ic.H_form * ic.H_form * ic.H_form - BigComplex(1728) * f5;
    if (resid.max_abs() >= pow(BigFloat(2), -100) * (ic.T * ic.T).max_abs())
      return false;
    const auto fiber0 = solve_icosahedral(ic, BigComplex(0));
    const auto fiber1 = solve_icosahedral(ic, BigComplex(1));
    const auto fiber_inf = solve_icosahedral(ic, BigComplex(0), true);
    return fiber0.size() == 60 && fiber1.size() == 60 &&
           fiber_inf.size() == 60 && distinct_count(fiber0, 1e-10) == 20 &&
           distinct_count(fiber1, 1e-10) == 30 &&
           distinct_count(fiber_inf, 1e-10) == 12;
  });

  gate.criterion("quintic equivariance, X invariance, transposition", [&] {
    std::uint64_t rng = 0xACCE5501ull;
    int moved = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto z = rand_roots(rng, 5);
      const QuinticInstance inst = QuinticInstance::from_roots(z);
      const QuinticReduction base = reduce_quintic(inst, ic);
      for (const Perm5& g : {ic.gen_a, ic.gen_b}) {
        const QuinticReduction img = reduce_quintic(
            QuinticInstance::from_roots(perm5_apply(g, z)), ic);
        if (dabs(abs(img.x - ic.moebius(g, base.x))) >= 1e-20) return false;
      }
      const BigComplex a_base = quadratic_discriminant(base.quadratic);
      for (int t = 0; t < 20; ++t) {
        const Perm5 sigma = random_even_perm5(rng);
        const QuinticReduction img = reduce_quintic(
            QuinticInstance::from_roots(perm5_apply(sigma, z)), ic);
        if (dist(img.X, base.X) / std::max(1.0, dabs(abs(base.X))) >= 1e-20)
          return false;
        if (dist(quadratic_discriminant(img.quadratic), a_base) >= 1e-20)
          return false;
      }
      auto zt = z;
      std::swap(zt[0], zt[1]);
      const QuinticReduction odd =
          reduce_quintic(QuinticInstance::from_roots(zt), ic);
      if (dist(odd.X, base.X) > 1e-17) ++moved;
    }
    return moved >= 18;
  });

  gate.criterion("solve_icosahedral orbit property", [&] {
    std::uint64_t rng = 0x0B17ull;
    for (int trial = 0; trial < 5; ++trial) {
      const BigComplex X = rand_complex(rng);
      const auto roots = solve_icosahedral(ic, X);
      if (roots.size() != 60) return false;
      const ProjectivePoint2& seed = roots[0];
      for (const auto& cls : ic.binary_group.projective_classes) {
        const LinearSubstitution& m = ic.binary_group.elements[cls.front()];
        const ProjectivePoint2 img{
            m.at(0, 0) * seed.first + m.at(0, 1) * seed.second,
            m.at(1, 0) * seed.first + m.at(1, 1) * seed.second};
        BigFloat best = 2;
        for (const auto& p : roots) {
          const BigFloat d = chordal_distance(img, p);
          if (d < best) best = d;
        }
        if (best >= BigFloat(1e-20)) return false;
      }
    }
    return true;
  });

  gate.criterion("Jacobi resolvent degree and invariance", [&] {
    std::uint64_t rng = 0x6ACBull;
    const auto z = rand_roots(rng, 5);
    const Polynomial jac =
        jacobi_resolvent(QuinticInstance::from_roots(z), ic);
    if (poly_degree(jac) != 6) return false;
    for (int t = 0; t < 10; ++t) {
      const Perm5 sigma = random_even_perm5(rng);
      const Polynomial moved = jacobi_resolvent(
          QuinticInstance::from_roots(perm5_apply(sigma, z)), ic);
      for (std::size_t i = 0; i < jac.size(); ++i)
        if (dist(jac[i], moved[i]) >= 1e-20) return false;
    }
    return true;
  });

  gate.criterion("Gerbaldi determinants and conic permutations", [&] {
    const BigFloat bound = pow(BigFloat(2), -100);
    for (int i = 0; i < 6; ++i) {
      std::array<BigComplex, 9> m;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m[r * 3 + c] = vc.conics.mat(i, r, c);
      const BigComplex det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                             m[1] * (m[3] * m[8] - m[5] * m[6]) +
                             m[2] * (m[3] * m[7] - m[4] * m[6]);
      if (abs(det - BigComplex(1)) >= bound) return false;
    }
    const BigFloat tol = boost::multiprecision::sqrt(cfg.eq_tolerance);
    std::size_t passing = 0;
    for (const auto& e : vc.ternary_group.elements)
      if (conic_action_of(e, vc.conics, tol)) ++passing;
    return passing == 1080;
  });

  gate.criterion("sign equivariance of the 20 quotients", [&] {
    std::vector<BigComplex> z;
    for (int i = 1; i <= 6; ++i) z.push_back(BigComplex(i));
    std::vector<std::size_t> elements;
    for (const auto& g : vc.ternary_group.generators) {
      const auto idx = vc.ternary_group.find(g, BigFloat(1e-40));
      if (!idx) return false;
      elements.push_back(*idx);
    }
    std::uint64_t rng = 0x516Eull;
    for (int t = 0; t < 10; ++t) elements.push_back(rand_index(rng, 1080));
    for (std::size_t idx : elements) {
      const LinearSubstitution& e = vc.ternary_group.elements[idx];
      const Perm6& pi = vc.conic_action[idx].perm;
      const auto sz = perm6_apply(pi, z);
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 5; ++j)
          for (int k = j + 1; k < 6; ++k) {
            std::array<int, 3> image{pi[i], pi[j], pi[k]};
            const int s = sort_sign(image);
            std::sort(image.begin(), image.end());
            const TripleInvariant src = triple_invariants(vc, i, j, k);
            const TripleInvariant dst =
                triple_invariants(vc, image[0], image[1], image[2]);
            const HomogeneousForm lhs =
                (BigComplex(1) / src.c) * act_on_form(e, src.J);
            const HomogeneousForm rhs = (BigComplex(s) / dst.c) * dst.J;
            if ((lhs - rhs).max_abs() >= BigFloat(1e-40) * rhs.max_abs())
              return false;
            if (dist(delta_of(sz, image[0], image[1], image[2]) /
                         delta_of(z, i, j, k),
                     BigComplex(s)) >= 1e-40)
              return false;
          }
    }
    return true;
  });

  gate.criterion("Omega simultaneous invariance", [&] {
    std::uint64_t rng = 0x03E6Aull;
    std::vector<std::size_t> gens;
    for (const auto& g : vc.ternary_group.generators) {
      const auto idx = vc.ternary_group.find(g, BigFloat(1e-40));
      if (!idx) return false;
      gens.push_back(*idx);
    }
    for (int trial = 0; trial < 10; ++trial) {
      const auto inst = SexticInstance::from_roots(rand_roots(rng, 6));
      const CubicCovariant omega = omega_cubic(inst, vc);
      const BigFloat scale = omega.cubic.max_abs();
      for (std::size_t idx : gens) {
        const LinearSubstitution& e = vc.ternary_group.elements[idx];
        const Perm6& pi = vc.conic_action[idx].perm;
        const CubicCovariant moved = omega_cubic(
            SexticInstance::from_roots(perm6_apply(pi, inst.roots)), vc);
        if ((act_on_form(e, omega.cubic) - moved.cubic).max_abs() >=
            BigFloat(1e-20) * scale)
          return false;
      }
    }
    return true;
  });

  gate.criterion("inflection machinery", [&] {
    // Fermat fixture with its analytic points.
    HomogeneousForm fermat(3, 3);
    fermat.at(3, 0) = BigComplex(1);
    fermat.at(0, 3) = BigComplex(1);
    fermat.at(0, 0) = BigComplex(1);
    const auto fpts = inflection_points(CubicCovariant{fermat}, cfg);
    if (fpts.size() != 9) return false;
    for (const ProjectivePoint3& analytic :
         {ProjectivePoint3{BigComplex(1), BigComplex(-1), BigComplex(0)},
          ProjectivePoint3{BigComplex(0), BigComplex(1), BigComplex(-1)},
          ProjectivePoint3{BigComplex(1), BigComplex(0), BigComplex(-1)}}) {
      BigFloat best = 2;
      for (const auto& p : fpts) {
        const BigFloat d = chordal_distance3(p, analytic);
        if (d < best) best = d;
      }
      if (best >= BigFloat(1e-20)) return false;
    }
    // Random nondegenerate cubic: count, residuals, covariance.
    std::uint64_t rng = 0x1F1Ec7ull;
    const CubicCovariant cubic =
        omega_cubic(SexticInstance::from_roots(rand_roots(rng, 6)), vc);
    const auto pts = inflection_points(cubic, cfg);
    if (pts.size() != 9) return false;
    const HomogeneousForm hs = hessian_form(cubic.cubic);
    for (const auto& p : pts) {
      const std::vector<BigComplex> v{p[0], p[1], p[2]};
      if (abs(evaluate_form(cubic.cubic, v)) >=
          BigFloat(1e-20) * cubic.cubic.max_abs())
        return false;
      if (abs(evaluate_form(hs, v)) >= BigFloat(1e-20) * hs.max_abs())
        return false;
    }
    for (int t = 0; t < 5; ++t) {
      LinearSubstitution s(3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) s.at(r, c) = rand_complex(rng);
      s = s.unimodularized();
      const auto moved_pts =
          inflection_points(CubicCovariant{act_on_form(s, cubic.cubic)}, cfg);
      const LinearSubstitution sinv = s.inverse();
      std::vector<ProjectivePoint3> image;
      for (const auto& p : pts) {
        const auto ip = sinv.apply({p[0], p[1], p[2]});
        image.push_back(normalize_point({ip[0], ip[1], ip[2]}));
      }
      if (!same_point_set3(moved_pts, image, 1e-20)) return false;
    }
    return true;
  });

  gate.criterion("invariant degrees 6/12/30 and orbit constancy", [&] {
    if (vc.F.degree() != 6 || vc.H6.degree() != 12 || vc.Phi.degree() != 30)
      return false;
    // Pointwise invariance across all 1080 matrices at two sample points.
    std::uint64_t rng = 0x1722ull;
    const BigFloat bound = pow(BigFloat(2), -80);
    for (int t = 0; t < 2; ++t) {
      const std::vector<BigComplex> p{rand_complex(rng), rand_complex(rng),
                                      rand_complex(rng)};
      const BigComplex f0 = evaluate_form(vc.F, p);
      const BigComplex h0 = evaluate_form(vc.H6, p);
      const BigComplex phi0 = evaluate_form(vc.Phi, p);
      for (const auto& e : vc.ternary_group.elements) {
        const auto q = e.apply(p);
        if (abs(evaluate_form(vc.F, q) - f0) >= bound * vc.F.max_abs())
          return false;
        if (abs(evaluate_form(vc.H6, q) - h0) >= bound * vc.H6.max_abs())
          return false;
        if (abs(evaluate_form(vc.Phi, q) - phi0) >= bound * vc.Phi.max_abs())
          return false;
      }
    }
    // (v, w) constant on a full 360-point orbit.
    const ProjectivePoint3 p{rand_complex(rng), rand_complex(rng),
                             rand_complex(rng)};
    const auto [v0, w0] = absolute_invariants(vc, p);
    for (const auto& cls : vc.ternary_group.projective_classes) {
      const auto img =
          vc.ternary_group.elements[cls.front()].apply({p[0], p[1], p[2]});
      const auto [v, w] = absolute_invariants(vc, {img[0], img[1], img[2]});
      if (dist(v, v0) >= 1e-20 || dist(w, w0) >= 1e-20) return false;
    }
    return true;
  });

  gate.criterion("ninth-degree structure of nu", [&] {
    std::uint64_t rng = 0x919ull;
    const auto z = rand_roots(rng, 6);
    const Polynomial nu = nu_ninth_degree(SexticInstance::from_roots(z), vc);
    if (poly_degree(nu) != 9) return false;
    BigFloat scale = 1;
    for (const auto& c : nu)
      if (abs(c) > scale) scale = abs(c);
    for (int t = 0; t < 10; ++t) {
      const Perm6 sigma = random_even_perm6(rng);
      const Polynomial moved = nu_ninth_degree(
          SexticInstance::from_roots(perm6_apply(sigma, z)), vc);
      for (std::size_t i = 0; i < nu.size(); ++i)
        if (dist(nu[i], moved[i]) >= 1e-15 * dabs(scale)) return false;
    }
    return true;
  });

  gate.criterion("Normalproblem round trip at 1024 bits", [&] {
    std::vector<BigComplex> z;
    for (int i = 1; i <= 6; ++i) z.push_back(BigComplex(i));
    const NormalproblemInstance np =
        normalproblem_forward(SexticInstance::from_roots(z), vc);
    const auto sols = solve_normalproblem(vc, np.v, np.w, 1024);
    if (sols.size() != 360) return false;
    BigFloat best = 2;
    for (const auto& s : sols) {
      const BigFloat d = chordal_distance3(s, np.inflection_point);
      if (d < best) best = d;
    }
    if (best >= BigFloat(1e-10)) return false;
    std::uint64_t rng = 0xC0FFEEull;
    for (int t = 0; t < 10; ++t) {
      const auto& e = vc.ternary_group.elements[rand_index(rng, 1080)];
      for (const auto& s : sols) {
        const auto img = e.apply({s[0], s[1], s[2]});
        const ProjectivePoint3 ip{img[0], img[1], img[2]};
        BigFloat b = 2;
        for (const auto& q : sols) {
          const BigFloat d = chordal_distance3(q, ip);
          if (d < b) b = d;
        }
        if (b >= BigFloat(1e-10)) return false;
      }
    }
    return true;
  });

  gate.criterion("covariant line restriction degree 6", [&] {
    std::uint64_t rng = 0x11EEull;
    const ProjectivePoint3 p{rand_complex(rng), rand_complex(rng),
                             rand_complex(rng)};
    const HomogeneousForm g = covariant_line_demo(vc, p);
    return g.degree() == 6 && abs(g.at(6)) > BigFloat(1e-10);
  });

  gate.criterion("byte-identical reports", [&] {
    RunRequest request;
    request.pipeline = "quintic";
    for (int i = 0; i < 5; ++i) request.roots.push_back(BigComplex(i));
    request.seed = 42;
    const RunReport first = run(request);
    const RunReport second = run(request);
    return first.status == "ok" && first.to_text() == second.to_text() &&
           !first.to_text().empty();
  });

  std::cout << (gate.failures == 0 ? "acceptance: all criteria passed"
                                   : "acceptance: FAILURES present")
            << std::endl;
  return gate.failures == 0 ? 0 : 1;
}
