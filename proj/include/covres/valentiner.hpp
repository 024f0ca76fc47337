#pragma once

// The sextic pipeline: Gerbaldi conics, the 1080-element ternary Valentiner
// group and its conic action, triple invariants and the Omega covariant
// cubic, inflection points, the invariants F, H6, Phi, the absolute
// invariants (v, w), and the Normalproblem in both directions.

#include "covres/form.hpp"
#include "covres/matrix.hpp"
#include "covres/roots.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace covres {

// Even permutation of {0..5}; perm[i] is the image of i.
using Perm6 = std::array<int, 6>;

Perm6 perm6_compose(const Perm6& p, const Perm6& q);
Perm6 perm6_inverse(const Perm6& p);
bool perm6_is_even(const Perm6& p);
std::vector<BigComplex> perm6_apply(const Perm6& p,
                                    const std::vector<BigComplex>& z);

struct ConicSystem {
  std::array<HomogeneousForm, 6> k;               // k_1..k_6 (0-based storage)
  std::array<std::array<BigComplex, 9>, 6> mats;  // symmetric 3x3, row-major

  const BigComplex& mat(int conic, int r, int c) const {
    return mats[conic][r * 3 + c];
  }
};

// Per-element action on the conics: conic i maps to factor * conic perm[i],
// factor a cube root of unity.
struct ConicAction {
  Perm6 perm;
  std::array<BigComplex, 6> factors;
};

struct ValentinerContext {
  ToleranceConfig cfg;
  MatrixGroup ternary_group;    // order 1080, det 1
  ProjectiveQuotient quotient;  // 360 classes, kernel {Id, jId, j^2 Id}
  ConicSystem conics;
  std::vector<ConicAction> conic_action;  // indexed like ternary_group.elements
  // Projective-class representative element index for each even permutation
  // of the six conic symbols; labeled so that lift() is a homomorphism up to
  // the scalar kernel.
  std::map<Perm6, std::size_t> correspondence;
  HomogeneousForm F;    // degree 6
  HomogeneousForm H6;   // degree 12
  HomogeneousForm Phi;  // degree 30

  const LinearSubstitution& lift(const Perm6& p) const {
    return ternary_group.elements[correspondence.at(p)];
  }
};

struct SexticInstance {
  std::vector<BigComplex> roots;  // z_1..z_6
  std::vector<BigComplex> coefficients;
  BigComplex sqrt_discriminant;

  static SexticInstance from_roots(const std::vector<BigComplex>& roots);
  static SexticInstance from_coefficients(const std::vector<BigComplex>& monic,
                                          const ToleranceConfig& cfg);
};

// Ternary cubic attached to sextic roots (Eq. 19 / 20).
struct CubicCovariant {
  HomogeneousForm cubic;  // 3 vars, degree 3
};

using ProjectivePoint3 = std::array<BigComplex, 3>;

struct NormalproblemInstance {
  BigComplex v, w;
  ProjectivePoint3 inflection_point;
  CubicCovariant cubic;
  std::vector<std::string> branch_log;
};

// The six conics of Eq. (18), determinant-1 normalized.
ConicSystem gerbaldi_conics();

// Build the full context: closure to order 1080, conic action for every
// element, invariants by Reynolds averaging, correspondence via the conic
// permutation.  generator_data supplies candidate unimodular matrices
// (normally valentiner_generators()); everything is re-verified here.
ValentinerContext build_valentiner_context(
    const std::vector<LinearSubstitution>& generator_data,
    const ToleranceConfig& cfg);

// The shipped generator set: three integer collineations plus a mixing
// substitution derived from the conic pencils at working precision.
std::vector<LinearSubstitution> valentiner_generators(const ToleranceConfig& cfg);

// Does the substitution permute the conics up to cube roots of unity?
// nullopt if not; tol is relative to the coefficient scale.  Used by
// build_valentiner_context and by cache re-verification.
std::optional<ConicAction> conic_action_of(const LinearSubstitution& s,
                                           const ConicSystem& conics,
                                           const BigFloat& tol);

// J = jacobian determinant of (k_i, k_j, k_k); c = mixed discriminant, the
// lambda' lambda'' lambda''' coefficient of det(lambda' K + ...).
struct TripleInvariant {
  HomogeneousForm J;  // cubic
  BigComplex c;
};

TripleInvariant triple_invariants(const ValentinerContext& ctx, int i, int j,
                                  int k);

// Mixed discriminant of three symmetric 3x3 matrices (row-major arrays).
BigComplex mixed_discriminant(const std::array<BigComplex, 9>& a,
                              const std::array<BigComplex, 9>& b,
                              const std::array<BigComplex, 9>& c);

CubicCovariant omega_cubic(const SexticInstance& instance,
                           const ValentinerContext& ctx);

// Item 8g: difference product replaced by the generalized power determinant
// det(z^a, z^b, z^c); (0,1,2) reproduces omega_cubic.
CubicCovariant generalized_omega(const SexticInstance& instance,
                                 const ValentinerContext& ctx,
                                 const std::array<int, 3>& exponents);

// The 9 common zeros of the cubic and its Hessian, via resultant
// elimination; points are phase-normalized and sorted deterministically, so
// the first entry is the canonical "chosen" point.
std::vector<ProjectivePoint3> inflection_points(const CubicCovariant& cubic,
                                                const ToleranceConfig& cfg,
                                                std::vector<std::string>* branch_log = nullptr);

// v = Phi/F^5, w = H6/F^2 (degree-zero ratios), constant on projective
// orbits.
std::pair<BigComplex, BigComplex> absolute_invariants(
    const ValentinerContext& ctx, const ProjectivePoint3& point);

NormalproblemInstance normalproblem_forward(const SexticInstance& instance,
                                            const ValentinerContext& ctx);

// Monic degree-9 polynomial with roots the 9 values of v at the inflection
// points.
Polynomial nu_ninth_degree(const SexticInstance& instance,
                           const ValentinerContext& ctx);

// Intersection of Phi - v F^5 = 0 and H6 - w F^2 = 0 (Bezout 360) by
// resultant elimination at escalated precision.
std::vector<ProjectivePoint3> solve_normalproblem(const ValentinerContext& ctx,
                                                  const BigComplex& v,
                                                  const BigComplex& w,
                                                  unsigned escalated_bits = 1024);

// Restriction of F to the chord joining the point to its first group image:
// the degree-6 auxiliary equation of the Eq. (24) discussion.
HomogeneousForm covariant_line_demo(const ValentinerContext& ctx,
                                    const ProjectivePoint3& point,
                                    std::array<ProjectivePoint3, 2>* line_out = nullptr);

// Chordal (Fubini-Study) distance between projective points.
BigFloat chordal_distance3(const ProjectivePoint3& a, const ProjectivePoint3& b);

// Divide by the entry of largest modulus (first within a relative 2^-40
// slack), giving a canonical representative.
ProjectivePoint3 normalize_point(const ProjectivePoint3& p);

}  // namespace covres
