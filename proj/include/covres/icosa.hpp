#pragma once

// The quintic pipeline: binary icosahedral group, the forms f, H, T and
// their syzygy, the Klein-four lifting obstruction, the metacyclic u-vector
// and covariant quadratic, reduction of a quintic to the icosahedral
// parameter X, the Jacobi resolvent, and the numeric solution of the
// icosahedral equation.

#include "covres/form.hpp"
#include "covres/matrix.hpp"
#include "covres/roots.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

namespace covres {

// Even permutation of {0..4}; perm[i] is the image of i.
using Perm5 = std::array<int, 5>;

Perm5 perm5_compose(const Perm5& p, const Perm5& q);  // (p*q)(i) = p(q(i))
Perm5 perm5_inverse(const Perm5& p);
bool perm5_is_even(const Perm5& p);
// Place values: (sigma . z)[sigma(i)] = z[i].
std::vector<BigComplex> perm5_apply(const Perm5& p,
                                    const std::vector<BigComplex>& z);

// Signed permutation of the six quadratics of Eq. (9): symbol index and a
// +/-1 factor per symbol.  Symbols 0..4 are the nu-quadratics, 5 is infinity.
using SignedPerm6 = std::array<std::pair<int, int>, 6>;

struct IcosaContext {
  ToleranceConfig cfg;
  MatrixGroup binary_group;            // order 120, det 1
  ProjectiveQuotient quotient;         // 60 classes, kernel {+-Id}
  HomogeneousForm f;                   // degree 12
  HomogeneousForm H_form;              // degree 20
  HomogeneousForm T;                   // degree 30
  std::array<HomogeneousForm, 6> quadratics;  // q_0..q_4, q_inf

  // Fixed generators: a = (01234) cyclic, b = (01)(23), with their binary
  // lifts (the S and T matrices).
  Perm5 gen_a, gen_b;
  LinearSubstitution mat_a, mat_b;

  // One chosen lift per even permutation, built by breadth-first word
  // enumeration; a group homomorphism up to sign.
  std::map<Perm5, LinearSubstitution> correspondence;

  // Coset representatives sigma_m whose lift sends q_inf to +-q_m, and the
  // resolved sign pattern for the u-vector (item 4b).
  std::array<Perm5, 6> coset_reps;
  std::array<int, 6> u_signs;

  const LinearSubstitution& lift(const Perm5& p) const {
    return correspondence.at(p);
  }
  // The projective Moebius action of the lift of p.
  BigComplex moebius(const Perm5& p, const BigComplex& x) const;
  SignedPerm6 quadratic_action(const LinearSubstitution& m) const;
};

struct QuinticInstance {
  std::vector<BigComplex> roots;         // z_1..z_5
  std::vector<BigComplex> coefficients;  // monic expansion, ascending powers
  BigComplex sqrt_discriminant;          // the difference product

  static QuinticInstance from_roots(const std::vector<BigComplex>& roots);
  // Roots recovered by find_roots and ordered lexicographically by (re, im);
  // the difference-product sign follows that convention.
  static QuinticInstance from_coefficients(const std::vector<BigComplex>& monic,
                                           const ToleranceConfig& cfg);
};

struct MetacyclicVector {
  BigComplex u_infinity;
  std::array<BigComplex, 5> u;
  std::array<int, 6> sign_pattern;
};

struct CovariantQuadratic {
  BigComplex A0, A1, A2;
};

struct KleinFourCase {
  int det_value;           // -1 or +1
  unsigned sign_choice;    // 3 bits, one per lifted substitution
  bool product_is_identity;
  bool all_order_two;
};

struct KleinFourObstruction {
  // All 16 lift cases (two determinant values x 8 sign choices); in none of
  // them do the lifts form a homomorphic image of the four-group.
  std::vector<KleinFourCase> cases;
  bool any_homomorphic;      // must be false
  // Binary-group side: -Id is the unique element of order two, so no
  // order-60 subgroup can project isomorphically.
  std::size_t order_two_elements;
  // Closures of the four generator-lift transversal choices; each is forced
  // back to the full group of order 120.
  std::array<std::size_t, 4> transversal_closure_orders;
  bool order60_subgroup_found;  // must be false
};

IcosaContext build_icosahedral_context(const ToleranceConfig& cfg);

// X = H^3 / (1728 f^5) at the projective point (x : 1).
BigComplex icosa_parameter(const IcosaContext& ctx, const BigComplex& x);

KleinFourObstruction klein_four_obstruction(const IcosaContext& ctx);

MetacyclicVector metacyclic_u(const QuinticInstance& instance,
                              const IcosaContext& ctx);

CovariantQuadratic covariant_quadratic(const MetacyclicVector& u);

// A = A0^2 + A1 A2.
BigComplex quadratic_discriminant(const CovariantQuadratic& q);

// x = (-A0 + sqrt(A)) / A1 (principal branch), with the conjugate form
// A2 / (A0 + sqrt(A)) when |A1| is small.
BigComplex icosahedral_point(const CovariantQuadratic& q,
                             const ToleranceConfig& cfg);

struct QuinticReduction {
  BigComplex x;
  BigComplex X;
  MetacyclicVector u;
  CovariantQuadratic quadratic;
};

QuinticReduction reduce_quintic(const QuinticInstance& instance,
                                const IcosaContext& ctx);

// Projective point (x1 : x2).
using ProjectivePoint2 = std::pair<BigComplex, BigComplex>;

// The 60 roots of H^3 - 1728 X f^5 as projective points, with multiplicity;
// the fibers X = 0, 1 and the infinite fiber are returned by construction
// from the factorizations H^3, T^2, f^5.
std::vector<ProjectivePoint2> solve_icosahedral(const IcosaContext& ctx,
                                                const BigComplex& X,
                                                bool X_is_infinite = false,
                                                std::uint64_t seed = 1);

// Monic degree-6 polynomial with roots 5 A0^2 over the six metacyclic
// cosets.
Polynomial jacobi_resolvent(const QuinticInstance& instance,
                            const IcosaContext& ctx);

// Chordal distance on the projective line; the metric used for orbit and
// root-set comparisons.
BigFloat chordal_distance(const ProjectivePoint2& a, const ProjectivePoint2& b);

}  // namespace covres
