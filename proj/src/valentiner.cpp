#include "covres/valentiner.hpp"

#include "covres/resultant.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
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

BigComplex principal_nth_root(const BigComplex& a, int n) {
  if (is_zero(a)) return BigComplex(0);
  const BigFloat m = boost::multiprecision::pow(abs(a), BigFloat(1) / n);
  return BigComplex(m) * unit_phase(arg(a) / n);
}

BigComplex det3(const std::array<BigComplex, 9>& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) -
         m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// x^T K x as a ternary quadratic form.
HomogeneousForm form_from_symmetric(const std::array<BigComplex, 9>& k) {
  HomogeneousForm q(3, 2);
  q.at(2, 0) = k[0];
  q.at(0, 2) = k[4];
  q.at(0, 0) = k[8];
  q.at(1, 1) = BigComplex(2) * k[1];
  q.at(1, 0) = BigComplex(2) * k[2];
  q.at(0, 1) = BigComplex(2) * k[5];
  return q;
}

// Largest-modulus coefficient position of a ternary quadratic.
std::pair<int, int> argmax_coeff(const HomogeneousForm& f) {
  std::pair<int, int> best{0, 0};
  BigFloat m = -1;
  for (int a = 0; a <= f.degree(); ++a)
    for (int b = 0; a + b <= f.degree(); ++b) {
      const BigFloat v = abs(f.at(a, b));
      if (v > m) {
        m = v;
        best = {a, b};
      }
    }
  return best;
}

// Does s permute the conics up to cube roots of unity?  Returns the action or
// nullopt; tol is relative to the coefficient scale.
std::optional<ConicAction> try_conic_action(const LinearSubstitution& s,
                                            const ConicSystem& conics,
                                            const BigFloat& tol) {
  ConicAction out;
  std::array<bool, 6> hit{};
  for (int i = 0; i < 6; ++i) {
    const HomogeneousForm img = act_on_form(s, conics.k[i]);
    bool found = false;
    for (int j = 0; j < 6 && !found; ++j) {
      const auto [a, b] = argmax_coeff(conics.k[j]);
      const BigComplex w = img.at(a, b) / conics.k[j].at(a, b);
      if (abs(pow_int(w, 3) - BigComplex(1)) > tol) continue;
      if ((img - w * conics.k[j]).max_abs() <= tol * conics.k[j].max_abs()) {
        out.perm[i] = j;
        out.factors[i] = w;
        found = true;
        if (hit[j]) return std::nullopt;
        hit[j] = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return out;
}

struct Eigen3 {
  std::array<BigComplex, 3> values;   // sorted by phase
  LinearSubstitution vectors;         // matching eigenvectors as columns
};

// Eigen-decomposition of a diagonalizable 3x3 via the characteristic
// polynomial and row-space cross products for the null vectors.
Eigen3 eig3(const LinearSubstitution& m, const ToleranceConfig& cfg) {
  const BigComplex tr = m.at(0, 0) + m.at(1, 1) + m.at(2, 2);
  const BigComplex m2 = (m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0)) +
                        (m.at(0, 0) * m.at(2, 2) - m.at(0, 2) * m.at(2, 0)) +
                        (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1));
  const BigComplex det = m.determinant();
  std::vector<BigComplex> vals =
      find_roots(Polynomial{-det, m2, -tr, BigComplex(1)}, cfg);
  if (vals.size() != 3) throw std::runtime_error("eig3: characteristic roots");
  std::sort(vals.begin(), vals.end(), [](const BigComplex& a, const BigComplex& b) {
    return arg(a) < arg(b);
  });

  Eigen3 out;
  out.vectors = LinearSubstitution(3);
  for (int e = 0; e < 3; ++e) {
    out.values[e] = vals[e];
    std::array<std::array<BigComplex, 3>, 3> rows;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        rows[r][c] = m.at(r, c) - (r == c ? vals[e] : BigComplex(0));
    auto cross = [](const std::array<BigComplex, 3>& u,
                    const std::array<BigComplex, 3>& v) {
      return std::array<BigComplex, 3>{u[1] * v[2] - u[2] * v[1],
                                       u[2] * v[0] - u[0] * v[2],
                                       u[0] * v[1] - u[1] * v[0]};
    };
    std::array<BigComplex, 3> best{};
    BigFloat best_norm = -1;
    for (auto [r1, r2] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      const auto cand = cross(rows[r1], rows[r2]);
      const BigFloat n = norm(cand[0]) + norm(cand[1]) + norm(cand[2]);
      if (n > best_norm) {
        best_norm = n;
        best = cand;
      }
    }
    if (best_norm <= 0) throw std::runtime_error("eig3: null space not found");
    // Scale the entry of largest modulus to 1 for conditioning; overall
    // column scaling is absorbed downstream.
    int big = 0;
    for (int c = 1; c < 3; ++c)
      if (abs(best[c]) > abs(best[big])) big = c;
    for (int r = 0; r < 3; ++r) out.vectors.at(r, e) = best[r] / best[big];
  }
  return out;
}

// Deterministic unimodular frame shifts used when a coordinate frame is
// unlucky for elimination (k = 0 is the identity).  The image of the second
// basis vector is (k, 1, k^2), generic in all three coordinates, so pure-x2
// leading coefficients survive for some small k.
LinearSubstitution frame_shift_matrix(int k) {
  LinearSubstitution s = LinearSubstitution::identity(3);
  s.at(0, 1) = BigComplex(k);
  s.at(2, 1) = BigComplex(k * k);
  return s;
}

BigComplex eval3(const HomogeneousForm& f, const ProjectivePoint3& p) {
  return evaluate_form(f, {p[0], p[1], p[2]});
}

bool point_less(const ProjectivePoint3& x, const ProjectivePoint3& y) {
  for (int i = 0; i < 3; ++i) {
    if (x[i].re != y[i].re) return x[i].re < y[i].re;
    if (x[i].im != y[i].im) return x[i].im < y[i].im;
  }
  return false;
}

// Coefficientwise inner product with the second argument conjugated.
BigComplex form_ip(const HomogeneousForm& a, const HomogeneousForm& b) {
  BigComplex s(0);
  for (std::size_t i = 0; i < a.raw().size(); ++i) s += a.raw()[i] * conj(b.raw()[i]);
  return s;
}

HomogeneousForm lex_normalized(const HomogeneousForm& f, const BigFloat& tol) {
  const BigFloat scale = f.max_abs();
  if (scale == 0) throw std::runtime_error("lex_normalized: zero form");
  for (int a = f.degree(); a >= 0; --a)
    for (int b = f.degree() - a; b >= 0; --b)
      if (abs(f.at(a, b)) > tol * scale) return f * (BigComplex(1) / f.at(a, b));
  throw std::runtime_error("lex_normalized: zero form");
}

}  // namespace

Perm6 perm6_compose(const Perm6& p, const Perm6& q) {
  Perm6 r;
  for (int i = 0; i < 6; ++i) r[i] = p[q[i]];
  return r;
}

Perm6 perm6_inverse(const Perm6& p) {
  Perm6 r;
  for (int i = 0; i < 6; ++i) r[p[i]] = i;
  return r;
}

bool perm6_is_even(const Perm6& p) {
  int inversions = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

std::vector<BigComplex> perm6_apply(const Perm6& p,
                                    const std::vector<BigComplex>& z) {
  std::vector<BigComplex> r(6);
  for (int i = 0; i < 6; ++i) r[p[i]] = z[i];
  return r;
}

std::optional<ConicAction> conic_action_of(const LinearSubstitution& s,
                                           const ConicSystem& conics,
                                           const BigFloat& tol) {
  return try_conic_action(s, conics, tol);
}

ConicSystem gerbaldi_conics() {
  const BigComplex j = omega3(), j2 = omega3(2);
  // t = (-3 + sqrt(-15))/4, the complex root of 2t^3 + t^2 = 3 in the upper
  // half plane; the off-diagonal entry of the non-diagonal conics.
  const BigComplex t = (BigComplex(-3) + sqrt_m15()) / BigComplex(4);

  ConicSystem sys;
  for (auto& m : sys.mats) m.fill(BigComplex(0));
  sys.mats[0] = {BigComplex(1), {}, {}, {}, j, {}, {}, {}, j2};
  sys.mats[1] = {BigComplex(1), {}, {}, {}, j2, {}, {}, {}, j};
  const int signs[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  for (int c = 0; c < 4; ++c) {
    auto& m = sys.mats[2 + c];
    m[0] = m[4] = m[8] = BigComplex(1);
    m[5] = m[7] = BigComplex(signs[c][0]) * t;  // (1,2) pair
    m[2] = m[6] = BigComplex(signs[c][1]) * t;  // (0,2) pair
    m[1] = m[3] = BigComplex(signs[c][2]) * t;  // (0,1) pair
  }
  // Scale each matrix to determinant exactly 1 (principal cube root).
  for (int i = 0; i < 6; ++i) {
    const BigComplex r = principal_nth_root(det3(sys.mats[i]), 3);
    for (auto& e : sys.mats[i]) e /= r;
    sys.k[i] = form_from_symmetric(sys.mats[i]);
  }
  return sys;
}

BigComplex mixed_discriminant(const std::array<BigComplex, 9>& a,
                              const std::array<BigComplex, 9>& b,
                              const std::array<BigComplex, 9>& c) {
  const std::array<const std::array<BigComplex, 9>*, 3> mats{&a, &b, &c};
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  BigComplex sum(0);
  for (const auto& perm : perms) {
    std::array<BigComplex, 9> m;
    for (int col = 0; col < 3; ++col)
      for (int row = 0; row < 3; ++row)
        m[row * 3 + col] = (*mats[perm[col]])[row * 3 + col];
    sum += det3(m);
  }
  return sum;
}

std::vector<LinearSubstitution> valentiner_generators(const ToleranceConfig& cfg) {
  ScopedPrecision guard(cfg.precision_bits);
  const ConicSystem conics = gerbaldi_conics();
  auto kmat = [&](int i) {
    LinearSubstitution s(3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) s.at(r, c) = conics.mat(i, r, c);
    return s;
  };

  // Three integer collineations: the coordinate 3-cycle, a double sign flip,
  // and a signed swap.  All have determinant 1.
  LinearSubstitution c_mat(3), p_mat(3), s_mat(3);
  c_mat.at(0, 1) = c_mat.at(1, 2) = c_mat.at(2, 0) = BigComplex(1);
  p_mat.at(0, 0) = BigComplex(1);
  p_mat.at(1, 1) = p_mat.at(2, 2) = BigComplex(-1);
  s_mat.at(0, 0) = BigComplex(-1);
  s_mat.at(1, 2) = s_mat.at(2, 1) = BigComplex(1);

  // The mixing substitution: transport the eigenframe of the (k1, k2) conic
  // pencil onto the frame of (k1, k3).  The eigenvalue triples agree up to a
  // cube root of unity and an ordering; the remaining diagonal freedom is a
  // cube root of unity and three signs, fixed by requiring the full
  // conic-permutation property.  The search order is deterministic, so the
  // first passing candidate is reproducible.
  const LinearSubstitution k0 = kmat(0);
  const Eigen3 fr1 = eig3(k0.inverse() * kmat(1), cfg);
  const Eigen3 fr2 = eig3(k0.inverse() * kmat(2), cfg);
  auto diag_of = [&](const LinearSubstitution& b, int col) {
    // (b^T K1 b)_{col,col} with b's col-th column.
    BigComplex acc(0);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        acc += b.at(r, col) * k0.at(r, c) * b.at(c, col);
    return acc;
  };

  const BigFloat match_tol(1e-8);
  std::array<int, 3> perm{0, 1, 2};
  std::vector<std::pair<int, std::array<int, 3>>> candidates;
  do {
    for (int rk = 0; rk < 3; ++rk) {
      bool match = true;
      for (int i = 0; i < 3 && match; ++i)
        if (abs(fr1.values[i] - omega3(rk) * fr2.values[perm[i]]) > match_tol)
          match = false;
      if (match) candidates.push_back({rk, perm});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  // Restore lexicographic candidate order (rho-major within each perm is
  // how they were collected; sort for a stable overall order).
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second < b.second;
              return a.first < b.first;
            });

  for (const auto& [rk, pm] : candidates) {
    LinearSubstitution bq(3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) bq.at(r, c) = fr2.vectors.at(r, pm[c]);
    std::array<BigComplex, 3> p, pp;
    for (int i = 0; i < 3; ++i) {
      p[i] = diag_of(fr1.vectors, i);
      pp[i] = diag_of(bq, i);
    }
    for (int wk = 0; wk < 3; ++wk)
      for (int bits = 0; bits < 8; ++bits) {
        LinearSubstitution d(3);
        for (int i = 0; i < 3; ++i) {
          const int sign = ((bits >> (2 - i)) & 1) ? -1 : 1;
          d.at(i, i) = BigComplex(sign) * sqrt(omega3(wk) * pp[i] / p[i]);
        }
        LinearSubstitution t = (fr1.vectors * d * bq.inverse()).unimodularized();
        if (try_conic_action(t, conics, BigFloat(1e-10)))
          return {c_mat, p_mat, s_mat, t};
      }
  }
  throw std::runtime_error("valentiner_generators: no mixing substitution found");
}

namespace {

// Average of (c . (E x))^d over one representative per projective class.
// Valid for d divisible by 3: the scalar kernel is cube roots of unity, which
// act trivially on such powers.
HomogeneousForm reynolds_average(const MatrixGroup& group,
                                 const std::array<BigComplex, 3>& c, int d) {
  HomogeneousForm acc(3, d);
  std::size_t reps = 0;
  for (const auto& cls : group.projective_classes) {
    const LinearSubstitution& e = group.elements[cls.front()];
    std::vector<BigComplex> l(3, BigComplex(0));
    for (int col = 0; col < 3; ++col)
      for (int row = 0; row < 3; ++row) l[col] += c[row] * e.at(row, col);
    const HomogeneousForm lf = linear_form(l);
    HomogeneousForm pw = lf;
    for (int k = 1; k < d; ++k) pw = pw * lf;
    acc += pw;
    ++reps;
  }
  return acc * BigComplex(BigFloat(1) / static_cast<int>(reps));
}

HomogeneousForm subtract_span(const HomogeneousForm& f,
                              const std::vector<HomogeneousForm>& basis) {
  // Gram-Schmidt the basis, then project f off it.
  std::vector<HomogeneousForm> ortho;
  for (HomogeneousForm b : basis) {
    for (const auto& e : ortho) b -= (form_ip(b, e) / form_ip(e, e)) * e;
    ortho.push_back(b);
  }
  HomogeneousForm r = f;
  for (const auto& e : ortho) r -= (form_ip(r, e) / form_ip(e, e)) * e;
  return r;
}

}  // namespace

ValentinerContext build_valentiner_context(
    const std::vector<LinearSubstitution>& generator_data,
    const ToleranceConfig& cfg) {
  ScopedPrecision guard(cfg.precision_bits);
  ValentinerContext ctx;
  ctx.cfg = cfg;
  ctx.conics = gerbaldi_conics();
  const BigFloat tol = boost::multiprecision::sqrt(cfg.eq_tolerance);

  for (const auto& g : generator_data) {
    if (g.dim() != 3)
      throw std::invalid_argument("build_valentiner_context: need 3x3 matrices");
    if (abs(g.determinant() - BigComplex(1)) > tol)
      throw std::runtime_error("build_valentiner_context: generator not unimodular");
  }

  ctx.ternary_group = close_group(generator_data, 1200, cfg);
  if (ctx.ternary_group.order() != 1080)
    throw std::runtime_error("Valentiner closure order is not 1080");
  ctx.quotient = projectivize(ctx.ternary_group, cfg);
  if (ctx.quotient.quotient_size != 360 || ctx.quotient.kernel.size() != 3)
    throw std::runtime_error("Valentiner projective quotient is not 360 + kernel 3");
  for (const auto& s : ctx.quotient.kernel)
    if (abs(pow_int(s.at(0, 0), 3) - BigComplex(1)) > tol)
      throw std::runtime_error("Valentiner kernel scalar is not a cube root of 1");

  // Conic action of every element, verified.
  ctx.conic_action.reserve(1080);
  for (const auto& e : ctx.ternary_group.elements) {
    auto act = try_conic_action(e, ctx.conics, tol);
    if (!act)
      throw std::runtime_error("a group element fails the conic-permutation property");
    ctx.conic_action.push_back(*act);
  }

  // Correspondence: label each projective class by the inverse of its conic
  // permutation.  The conic action is contravariant (act composes right to
  // left), so the inverse labeling is what makes lift() a homomorphism:
  // lift(p) * lift(q) ~ lift(p o q) up to the scalar kernel.
  for (const auto& cls : ctx.ternary_group.projective_classes) {
    const std::size_t rep = cls.front();
    const Perm6 p = perm6_inverse(ctx.conic_action[rep].perm);
    if (!perm6_is_even(p))
      throw std::runtime_error("conic action produced an odd permutation");
    if (!ctx.correspondence.emplace(p, rep).second)
      throw std::runtime_error("conic action is not faithful on projective classes");
  }
  if (ctx.correspondence.size() != 360)
    throw std::runtime_error("correspondence does not enumerate 360 permutations");

  // Invariants by Reynolds averaging.  The degree-12 and degree-30 averages
  // are orthogonalized against the lower-degree products so H6 and Phi are
  // genuinely new invariants, then lex-normalized.
  const std::array<std::array<BigComplex, 3>, 4> seeds{
      std::array<BigComplex, 3>{BigComplex(1), BigComplex(0), BigComplex(0)},
      std::array<BigComplex, 3>{BigComplex(0), BigComplex(1), BigComplex(0)},
      std::array<BigComplex, 3>{BigComplex(0), BigComplex(0), BigComplex(1)},
      std::array<BigComplex, 3>{BigComplex(1), BigComplex(1), BigComplex(0)}};
  bool have = false;
  for (const auto& c : seeds) {
    const HomogeneousForm r6 = reynolds_average(ctx.ternary_group, c, 6);
    if (r6.max_abs() > tol) {
      ctx.F = lex_normalized(r6, tol);
      have = true;
      break;
    }
  }
  if (!have) throw std::runtime_error("degree-6 Reynolds average vanished");
  const HomogeneousForm f2 = ctx.F * ctx.F;
  have = false;
  for (const auto& c : seeds) {
    const HomogeneousForm r12 = reynolds_average(ctx.ternary_group, c, 12);
    const HomogeneousForm h = subtract_span(r12, {f2});
    if (h.max_abs() > tol * r12.max_abs()) {
      ctx.H6 = lex_normalized(h, tol);
      have = true;
      break;
    }
  }
  if (!have) throw std::runtime_error("degree-12 Reynolds average lies in F^2");
  const HomogeneousForm f3 = f2 * ctx.F;
  const HomogeneousForm f5 = f3 * f2;
  have = false;
  for (const auto& c : seeds) {
    const HomogeneousForm r30 = reynolds_average(ctx.ternary_group, c, 30);
    const HomogeneousForm phi =
        subtract_span(r30, {f5, f3 * ctx.H6, ctx.F * ctx.H6 * ctx.H6});
    if (phi.max_abs() > tol * r30.max_abs()) {
      ctx.Phi = lex_normalized(phi, tol);
      have = true;
      break;
    }
  }
  if (!have)
    throw std::runtime_error("degree-30 Reynolds average lies in the known span");

  // Invariance: coefficientwise under the generators (which implies the whole
  // group), plus a pointwise sweep over all 1080 elements.
  const BigFloat inv_tol = pow(BigFloat(2), -80);
  for (const auto& g : ctx.ternary_group.generators)
    for (const HomogeneousForm* phi : {&ctx.F, &ctx.H6, &ctx.Phi})
      if ((act_on_form(g, *phi) - *phi).max_abs() > inv_tol * phi->max_abs())
        throw std::runtime_error("Valentiner invariant not generator-invariant");
  {
    std::uint64_t rng = 0xB16B00B5ull;
    for (int trial = 0; trial < 2; ++trial) {
      const std::vector<BigComplex> p{rand_unit(rng), rand_unit(rng), rand_unit(rng)};
      for (const HomogeneousForm* phi : {&ctx.F, &ctx.H6, &ctx.Phi}) {
        const BigComplex ref = evaluate_form(*phi, p);
        BigFloat scale = abs(ref);
        std::vector<BigComplex> vals;
        vals.reserve(1080);
        for (const auto& e : ctx.ternary_group.elements) {
          vals.push_back(evaluate_form(*phi, e.apply(p)));
          scale = std::max(scale, abs(vals.back()));
        }
        for (const auto& v : vals)
          if (abs(v - ref) > inv_tol * scale)
            throw std::runtime_error("Valentiner invariant fails pointwise sweep");
      }
    }
  }
  return ctx;
}

TripleInvariant triple_invariants(const ValentinerContext& ctx, int i, int j,
                                  int k) {
  if (i < 0 || j < 0 || k < 0 || i > 5 || j > 5 || k > 5 || i == j || j == k ||
      i == k)
    throw std::invalid_argument("triple_invariants: indices must be distinct in 0..5");
  TripleInvariant out;
  out.J = jacobian_det(ctx.conics.k[i], ctx.conics.k[j], ctx.conics.k[k]);
  out.c = mixed_discriminant(ctx.conics.mats[i], ctx.conics.mats[j],
                             ctx.conics.mats[k]);
  if (abs(out.c) < BigFloat(1e-6))
    throw std::logic_error("triple_invariants: mixed discriminant vanished");
  return out;
}

SexticInstance SexticInstance::from_roots(const std::vector<BigComplex>& roots) {
  if (roots.size() != 6)
    throw std::invalid_argument("SexticInstance: expected 6 roots");
  SexticInstance inst;
  inst.roots = roots;
  inst.coefficients = poly_from_roots(roots);
  inst.sqrt_discriminant = BigComplex(1);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      inst.sqrt_discriminant *= roots[i] - roots[j];
  return inst;
}

SexticInstance SexticInstance::from_coefficients(
    const std::vector<BigComplex>& monic, const ToleranceConfig& cfg) {
  if (monic.size() != 7)
    throw std::invalid_argument("SexticInstance: expected degree-6 polynomial");
  std::vector<BigComplex> roots = find_roots(monic, cfg);
  std::sort(roots.begin(), roots.end(), [](const BigComplex& a, const BigComplex& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return from_roots(roots);
}

namespace {

void require_distinct_roots(const std::vector<BigComplex>& z,
                            const ToleranceConfig& cfg) {
  if (z.size() != 6) throw std::invalid_argument("expected 6 roots");
  BigFloat scale = 1;
  for (const auto& v : z) scale = std::max(scale, abs(v));
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (abs(z[i] - z[j]) < cfg.eq_tolerance * scale)
        throw std::domain_error("omega cubic: repeated roots");
}

CubicCovariant omega_with_delta(
    const ValentinerContext& ctx, const std::vector<BigComplex>& z,
    const std::function<BigComplex(const BigComplex&, const BigComplex&,
                                   const BigComplex&)>& delta_fn) {
  require_distinct_roots(z, ctx.cfg);
  HomogeneousForm omega(3, 3);
  BigFloat scale = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = j + 1; k < 6; ++k) {
        const TripleInvariant ti = triple_invariants(ctx, i, j, k);
        const BigComplex coeff = delta_fn(z[i], z[j], z[k]) / ti.c;
        omega += coeff * ti.J;
        scale = std::max(scale, abs(coeff) * ti.J.max_abs());
      }
  if (omega.max_abs() <= ctx.cfg.eq_tolerance * scale)
    throw std::domain_error("omega cubic: degenerate (covariant vanishes)");
  return CubicCovariant{omega};
}

}  // namespace

CubicCovariant omega_cubic(const SexticInstance& instance,
                           const ValentinerContext& ctx) {
  return omega_with_delta(
      ctx, instance.roots,
      [](const BigComplex& zi, const BigComplex& zj, const BigComplex& zk) {
        return (zj - zk) * (zk - zi) * (zi - zj);
      });
}

CubicCovariant generalized_omega(const SexticInstance& instance,
                                 const ValentinerContext& ctx,
                                 const std::array<int, 3>& exponents) {
  const auto [a, b, c] = exponents;
  if (a < 0 || b < 0 || c < 0 || a == b || b == c || a == c)
    throw std::invalid_argument(
        "generalized_omega: exponents must be distinct nonnegative integers");
  return omega_with_delta(
      ctx, instance.roots,
      [a = a, b = b, c = c](const BigComplex& zi, const BigComplex& zj,
                            const BigComplex& zk) {
        const std::array<std::array<BigComplex, 3>, 3> m{
            std::array<BigComplex, 3>{pow_int(zi, a), pow_int(zi, b), pow_int(zi, c)},
            std::array<BigComplex, 3>{pow_int(zj, a), pow_int(zj, b), pow_int(zj, c)},
            std::array<BigComplex, 3>{pow_int(zk, a), pow_int(zk, b), pow_int(zk, c)}};
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
      });
}

namespace {

// One 2D Newton step chart: x3 fixed at 1, variables (x1, x2).
void newton_polish_chart(const HomogeneousForm& a, const HomogeneousForm& b,
                         const HomogeneousForm& a1, const HomogeneousForm& a2,
                         const HomogeneousForm& b1, const HomogeneousForm& b2,
                         ProjectivePoint3& p, unsigned precision_bits) {
  const BigFloat stop = pow(BigFloat(2), 16 - static_cast<int>(precision_bits));
  for (int it = 0; it < 64; ++it) {
    const BigComplex va = eval3(a, p), vb = eval3(b, p);
    const BigComplex j00 = eval3(a1, p), j01 = eval3(a2, p);
    const BigComplex j10 = eval3(b1, p), j11 = eval3(b2, p);
    const BigComplex det = j00 * j11 - j01 * j10;
    if (abs(det) == 0) break;
    const BigComplex dx = (va * j11 - vb * j01) / det;
    const BigComplex dy = (vb * j00 - va * j10) / det;
    p[0] -= dx;
    p[1] -= dy;
    if (boost::multiprecision::hypot(abs(dx), abs(dy)) <
        stop * (1 + abs(p[0]) + abs(p[1])))
      break;
  }
}

}  // namespace

std::vector<ProjectivePoint3> inflection_points(
    const CubicCovariant& cubic, const ToleranceConfig& cfg,
    std::vector<std::string>* branch_log) {
  ScopedPrecision guard(cfg.precision_bits);
  const HomogeneousForm& f = cubic.cubic;
  if (f.num_vars() != 3 || f.degree() != 3)
    throw std::invalid_argument("inflection_points: expected a ternary cubic");
  const BigFloat tol = boost::multiprecision::sqrt(cfg.eq_tolerance);
  const BigFloat fscale = f.max_abs();
  if (fscale == 0) throw std::domain_error("inflection_points: zero cubic");
  const HomogeneousForm hs = hessian_form(f);
  if (hs.max_abs() < tol * fscale * fscale * fscale)
    throw std::domain_error("inflection_points: degenerate cubic (Hessian vanishes)");

  for (int frame = 0; frame < 12; ++frame) {
    const LinearSubstitution shift = frame_shift_matrix(frame);
    const HomogeneousForm fs = frame ? act_on_form(shift, f) : f;
    const HomogeneousForm hss = frame ? act_on_form(shift, hs) : hs;
    if (degree_in_x2(fs, tol) != 3 || degree_in_x2(hss, tol) != 3) continue;

    HomogeneousForm res;
    try {
      res = resultant_x2(fs, hss, cfg);
    } catch (const std::domain_error&) {
      continue;
    }
    Polynomial pr(res.degree() + 1);
    for (int c = 0; c <= res.degree(); ++c) pr[c] = res.at(c);
    pr = trim_poly(pr, tol);
    if (poly_degree(pr) != 9) continue;  // intersections at infinity: reframe

    const auto roots1 = find_roots(pr, cfg, 1);
    const HomogeneousForm fd1 = fs.derivative(0), fd2 = fs.derivative(1);
    const HomogeneousForm hd1 = hss.derivative(0), hd2 = hss.derivative(1);

    std::vector<ProjectivePoint3> pts;
    std::vector<std::string> log;
    if (frame) log.push_back("frame shift k=" + std::to_string(frame));
    bool ok = true;
    for (std::size_t ri = 0; ri < roots1.size() && ok; ++ri) {
      const BigComplex& r1 = roots1[ri];
      Polynomial q(4, BigComplex(0));
      for (int b = 0; b <= 3; ++b)
        for (int a = 0; a + b <= 3; ++a) q[b] += fs.at(a, b) * pow_int(r1, a);
      std::vector<BigComplex> r2s;
      try {
        r2s = find_roots(q, cfg, 1);
      } catch (const std::exception&) {
        ok = false;
        break;
      }
      if (r2s.empty()) {
        ok = false;
        break;
      }
      std::size_t best = 0;
      BigFloat best_res = -1;
      for (std::size_t c = 0; c < r2s.size(); ++c) {
        const BigFloat r = abs(eval3(hss, {r1, r2s[c], BigComplex(1)}));
        if (best_res < 0 || r < best_res) {
          best_res = r;
          best = c;
        }
      }
      log.push_back("x1 root " + std::to_string(ri) + ": x2 branch " +
                    std::to_string(best + 1) + " of " + std::to_string(r2s.size()));
      ProjectivePoint3 p{r1, r2s[best], BigComplex(1)};
      newton_polish_chart(fs, hss, fd1, fd2, hd1, hd2, p, cfg.precision_bits);
      const std::vector<BigComplex> mapped =
          frame ? shift.apply({p[0], p[1], p[2]})
                : std::vector<BigComplex>{p[0], p[1], p[2]};
      const ProjectivePoint3 np = normalize_point({mapped[0], mapped[1], mapped[2]});
      if (abs(eval3(f, np)) > tol * fscale ||
          abs(eval3(hs, np)) > tol * hs.max_abs()) {
        ok = false;
        break;
      }
      bool dup = false;
      for (const auto& existing : pts)
        if (chordal_distance3(np, existing) < BigFloat(1e-10)) {
          dup = true;
          break;
        }
      if (!dup) pts.push_back(np);
    }
    if (!ok || pts.size() != 9) continue;
    std::sort(pts.begin(), pts.end(), point_less);
    if (branch_log)
      branch_log->insert(branch_log->end(), log.begin(), log.end());
    return pts;
  }
  throw std::runtime_error("inflection_points: no usable coordinate frame");
}

std::pair<BigComplex, BigComplex> absolute_invariants(
    const ValentinerContext& ctx, const ProjectivePoint3& point) {
  const ProjectivePoint3 p = normalize_point(point);
  const BigComplex fv = eval3(ctx.F, p);
  if (abs(fv) <
      boost::multiprecision::sqrt(ctx.cfg.eq_tolerance) * ctx.F.max_abs())
    throw std::domain_error(
        "absolute_invariants: point lies on the invariant sextic F = 0");
  const BigComplex hv = eval3(ctx.H6, p);
  const BigComplex pv = eval3(ctx.Phi, p);
  return {pv / pow_int(fv, 5), hv / (fv * fv)};
}

NormalproblemInstance normalproblem_forward(const SexticInstance& instance,
                                            const ValentinerContext& ctx) {
  NormalproblemInstance out;
  out.cubic = omega_cubic(instance, ctx);
  const auto pts = inflection_points(out.cubic, ctx.cfg, &out.branch_log);
  out.inflection_point = pts.front();
  out.branch_log.push_back("chosen inflection point: first in canonical order");
  std::tie(out.v, out.w) = absolute_invariants(ctx, out.inflection_point);
  return out;
}

Polynomial nu_ninth_degree(const SexticInstance& instance,
                           const ValentinerContext& ctx) {
  const CubicCovariant cubic = omega_cubic(instance, ctx);
  const auto pts = inflection_points(cubic, ctx.cfg);
  std::vector<BigComplex> values;
  values.reserve(9);
  for (const auto& p : pts) values.push_back(absolute_invariants(ctx, p).first);
  return poly_from_roots(values);
}

std::vector<ProjectivePoint3> solve_normalproblem(const ValentinerContext& ctx,
                                                  const BigComplex& v,
                                                  const BigComplex& w,
                                                  unsigned escalated_bits) {
  if (escalated_bits < ctx.cfg.precision_bits)
    escalated_bits = ctx.cfg.precision_bits;
  ScopedPrecision guard(escalated_bits);
  ToleranceConfig ecfg(escalated_bits, -static_cast<int>(escalated_bits) + 128,
                       ctx.cfg.root_polish_iterations);

  // The two curves cut out by the known absolute invariants.  The context's
  // invariant coefficients define the curves; all arithmetic below runs at
  // the escalated precision.
  const HomogeneousForm f2 = ctx.F * ctx.F;
  const HomogeneousForm f5 = f2 * f2 * ctx.F;
  const HomogeneousForm curve_a = ctx.Phi - v * f5;   // degree 30
  const HomogeneousForm curve_b = ctx.H6 - w * f2;    // degree 12
  const BigFloat tol = boost::multiprecision::sqrt(ecfg.eq_tolerance);

  for (int frame = 0; frame < 8; ++frame) {
    const LinearSubstitution shift = frame_shift_matrix(frame);
    const HomogeneousForm as = frame ? act_on_form(shift, curve_a) : curve_a;
    const HomogeneousForm bs = frame ? act_on_form(shift, curve_b) : curve_b;
    if (degree_in_x2(as, tol) != 30 || degree_in_x2(bs, tol) != 12) continue;

    HomogeneousForm res;
    try {
      res = resultant_x2(as, bs, ecfg);
    } catch (const std::domain_error&) {
      continue;
    }
    Polynomial pr(res.degree() + 1);
    for (int c = 0; c <= res.degree(); ++c) pr[c] = res.at(c);
    pr = trim_poly(pr, tol);
    if (poly_degree(pr) != 360) continue;

    const auto roots1 = find_roots(pr, ecfg, 1);
    const HomogeneousForm ad1 = as.derivative(0), ad2 = as.derivative(1);
    const HomogeneousForm bd1 = bs.derivative(0), bd2 = bs.derivative(1);

    std::vector<ProjectivePoint3> pts;
    for (const BigComplex& r1 : roots1) {
      Polynomial q(13, BigComplex(0));
      for (int b = 0; b <= 12; ++b)
        for (int a = 0; a + b <= 12; ++a) q[b] += bs.at(a, b) * pow_int(r1, a);
      std::vector<BigComplex> r2s;
      try {
        r2s = find_roots(q, ecfg, 1);
      } catch (const std::exception&) {
        continue;
      }
      if (r2s.empty()) continue;
      std::size_t best = 0;
      BigFloat best_res = -1;
      for (std::size_t c = 0; c < r2s.size(); ++c) {
        const BigFloat r = abs(eval3(as, {r1, r2s[c], BigComplex(1)}));
        if (best_res < 0 || r < best_res) {
          best_res = r;
          best = c;
        }
      }
      ProjectivePoint3 p{r1, r2s[best], BigComplex(1)};
      newton_polish_chart(as, bs, ad1, ad2, bd1, bd2, p, escalated_bits);
      const std::vector<BigComplex> mapped =
          frame ? shift.apply({p[0], p[1], p[2]})
                : std::vector<BigComplex>{p[0], p[1], p[2]};
      const ProjectivePoint3 np = normalize_point({mapped[0], mapped[1], mapped[2]});
      bool dup = false;
      for (const auto& existing : pts)
        if (chordal_distance3(np, existing) < BigFloat(1e-15)) {
          dup = true;
          break;
        }
      if (!dup) pts.push_back(np);
    }
    if (pts.empty()) continue;
    std::sort(pts.begin(), pts.end(), point_less);
    return pts;
  }
  throw std::runtime_error("solve_normalproblem: no usable coordinate frame");
}

HomogeneousForm covariant_line_demo(const ValentinerContext& ctx,
                                    const ProjectivePoint3& point,
                                    std::array<ProjectivePoint3, 2>* line_out) {
  ScopedPrecision guard(ctx.cfg.precision_bits);
  const ProjectivePoint3 p = normalize_point(point);
  if (abs(eval3(ctx.F, p)) <
      boost::multiprecision::sqrt(ctx.cfg.eq_tolerance) * ctx.F.max_abs())
    throw std::domain_error("covariant_line_demo: F vanishes at the point");

  // Chord from the point to its image under the first group element (in the
  // fixed enumeration order) that moves it projectively.
  ProjectivePoint3 q{};
  bool found = false;
  for (std::size_t idx = 1; idx < ctx.ternary_group.order() && !found; ++idx) {
    const auto img = ctx.ternary_group.elements[idx].apply({p[0], p[1], p[2]});
    const ProjectivePoint3 cand = normalize_point({img[0], img[1], img[2]});
    if (chordal_distance3(p, cand) > BigFloat(1e-6)) {
      q = cand;
      found = true;
    }
  }
  if (!found)
    throw std::runtime_error("covariant_line_demo: degenerate line construction");

  // Restriction g(s, t) = F(s p + t q), a binary sextic; recovered exactly
  // from 7 evaluations at roots of unity.
  const BigFloat two_pi = 2 * big_pi();
  std::array<BigComplex, 7> vals;
  for (int k = 0; k < 7; ++k) {
    const BigComplex s = unit_phase(two_pi * k / 7);
    vals[k] = evaluate_form(
        ctx.F, {s * p[0] + q[0], s * p[1] + q[1], s * p[2] + q[2]});
  }
  HomogeneousForm g(2, 6);
  const BigComplex inv7(BigFloat(1) / 7);
  for (int a = 0; a <= 6; ++a) {
    BigComplex acc(0);
    for (int k = 0; k < 7; ++k)
      acc += vals[k] * unit_phase(-two_pi * ((k * a) % 7) / 7);
    g.at(a) = acc * inv7;
  }
  if (line_out) *line_out = {p, q};
  return g;
}

BigFloat chordal_distance3(const ProjectivePoint3& a, const ProjectivePoint3& b) {
  const BigComplex c0 = a[1] * b[2] - a[2] * b[1];
  const BigComplex c1 = a[2] * b[0] - a[0] * b[2];
  const BigComplex c2 = a[0] * b[1] - a[1] * b[0];
  const BigFloat num =
      boost::multiprecision::sqrt(norm(c0) + norm(c1) + norm(c2));
  const BigFloat na =
      boost::multiprecision::sqrt(norm(a[0]) + norm(a[1]) + norm(a[2]));
  const BigFloat nb =
      boost::multiprecision::sqrt(norm(b[0]) + norm(b[1]) + norm(b[2]));
  return num / (na * nb);
}

ProjectivePoint3 normalize_point(const ProjectivePoint3& p) {
  BigFloat m = 0;
  for (const auto& e : p) m = std::max(m, abs(e));
  if (m == 0) throw std::invalid_argument("normalize_point: zero vector");
  const BigFloat slack = m * (1 - pow(BigFloat(2), -40));
  for (const auto& e : p)
    if (abs(e) >= slack) {
      ProjectivePoint3 out;
      for (int i = 0; i < 3; ++i) out[i] = p[i] / e;
      return out;
    }
  throw std::logic_error("normalize_point: unreachable");
}

}  // namespace covres
