#pragma once

// Univariate polynomials over BigComplex and an Aberth-Ehrlich simultaneous
// root finder.  Coefficients are stored in ascending order: p(x) = c[0] +
// c[1] x + ... + c[n] x^n.

#include "covres/bigcomplex.hpp"

#include <cstdint>
#include <vector>

namespace covres {

using Polynomial = std::vector<BigComplex>;

// Drop (numerically) zero leading coefficients.
Polynomial trim_poly(const Polynomial& p, const BigFloat& tol);

int poly_degree(const Polynomial& p);

BigComplex poly_eval(const Polynomial& p, const BigComplex& x);
// Value and derivative together (one Horner pass).
void poly_eval2(const Polynomial& p, const BigComplex& x, BigComplex& value,
                BigComplex& deriv);

Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
// Monic polynomial with the given roots.
Polynomial poly_from_roots(const std::vector<BigComplex>& roots);
Polynomial poly_derivative(const Polynomial& p);

// All n roots (with multiplicity) of a degree-n polynomial, via
// Aberth-Ehrlich iteration started on Bini's initial circles, with
// deterministic seeded perturbation restarts.  Each root r satisfies
// |p(r)| < tol * scale where scale is the coefficient magnitude near r.
// Throws on non-convergence.
std::vector<BigComplex> find_roots(const Polynomial& poly,
                                   const ToleranceConfig& cfg,
                                   std::uint64_t seed = 0x9e3779b97f4a7c15ull);

}  // namespace covres
