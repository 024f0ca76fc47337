#include "covres/resultant.hpp"

#include <stdexcept>

namespace covres {

BigComplex dense_determinant(std::vector<std::vector<BigComplex>> m) {
  const std::size_t n = m.size();
  BigComplex det(1);
  for (std::size_t col = 0; col < n; ++col) {
    // Partial pivot on modulus.
    std::size_t pivot = col;
    BigFloat best = abs(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const BigFloat a = abs(m[r][col]);
      if (a > best) {
        best = a;
        pivot = r;
      }
    }
    if (best == 0) return BigComplex(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(m[r][col])) continue;
      const BigComplex factor = m[r][col] / m[col][col];
      for (std::size_t c = col + 1; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

int degree_in_x2(const HomogeneousForm& f, const BigFloat& tol) {
  const BigFloat scale = f.max_abs();
  int deg = -1;
  for (int a = 0; a <= f.degree(); ++a)
    for (int b = 0; a + b <= f.degree(); ++b)
      if (abs(f.at(a, b)) > tol * scale && b > deg) deg = b;
  return deg;
}

namespace {

// Coefficient of x2^b as a univariate value at x1 = t, x3 = 1.
BigComplex slice_value(const HomogeneousForm& f, int b, const BigComplex& t) {
  BigComplex acc(0);
  for (int a = f.degree() - b; a >= 0; --a) acc = acc * t + f.at(a, b);
  return acc;
}

}  // namespace

HomogeneousForm resultant_x2(const HomogeneousForm& a, const HomogeneousForm& b,
                             const ToleranceConfig& cfg) {
  if (a.num_vars() != 3 || b.num_vars() != 3)
    throw std::invalid_argument("resultant_x2: expected ternary forms");
  const int da = a.degree(), db = b.degree();
  if (degree_in_x2(a, cfg.eq_tolerance) != da ||
      degree_in_x2(b, cfg.eq_tolerance) != db)
    throw std::domain_error("resultant_x2: pure-x2 leading coefficient vanishes");

  const int m = da * db;       // homogeneous degree of the resultant
  const int n = da + db;       // Sylvester dimension
  const int nodes = m + 1;

  // Evaluate the Sylvester determinant at x1 = omega^k, x3 = 1, where omega
  // runs over the (m+1)-st roots of unity, then invert the DFT.
  std::vector<BigComplex> values(nodes);
  const BigFloat two_pi = 2 * big_pi();
  for (int k = 0; k < nodes; ++k) {
    const BigComplex t = unit_phase(two_pi * k / nodes);
    std::vector<BigComplex> pa(da + 1), pb(db + 1);
    for (int i = 0; i <= da; ++i) pa[i] = slice_value(a, i, t);
    for (int i = 0; i <= db; ++i) pb[i] = slice_value(b, i, t);
    std::vector<std::vector<BigComplex>> syl(n,
                                             std::vector<BigComplex>(n, BigComplex(0)));
    for (int r = 0; r < db; ++r)
      for (int i = 0; i <= da; ++i) syl[r][r + i] = pa[da - i];
    for (int r = 0; r < da; ++r)
      for (int i = 0; i <= db; ++i) syl[db + r][r + i] = pb[db - i];
    values[k] = dense_determinant(std::move(syl));
  }

  HomogeneousForm result(2, m);
  const BigComplex inv_n(BigFloat(1) / nodes);
  for (int c = 0; c <= m; ++c) {
    BigComplex acc(0);
    for (int k = 0; k < nodes; ++k)
      acc += values[k] * unit_phase(-two_pi * ((k * c) % nodes) / nodes);
    result.at(c) = acc * inv_n;
  }
  return result;
}

}  // namespace covres
