#pragma once

// Resultant elimination for ternary forms, by evaluation at scaled roots of
// unity and inverse DFT interpolation.

#include "covres/form.hpp"
#include "covres/roots.hpp"

namespace covres {

// Determinant of a dense complex matrix by LU with partial pivoting.
BigComplex dense_determinant(std::vector<std::vector<BigComplex>> m);

// Resultant of two ternary forms with respect to x2, returned as a binary
// form in (x1, x3) of degree degx2(A) * degx2(B).  Requires both pure-x2
// leading coefficients to be nonzero (the caller applies a frame shift
// otherwise).
HomogeneousForm resultant_x2(const HomogeneousForm& a, const HomogeneousForm& b,
                             const ToleranceConfig& cfg);

// Degree in x2 (largest b with a nonzero x1^a x2^b x3^c coefficient).
int degree_in_x2(const HomogeneousForm& f, const BigFloat& tol);

}  // namespace covres
