#include "covres/form.hpp"

#include "covres/matrix.hpp"

namespace covres {

BigComplex evaluate_form(const HomogeneousForm& form,
                         const std::vector<BigComplex>& point) {
  if (point.size() != static_cast<std::size_t>(form.num_vars()))
    throw std::invalid_argument("evaluate_form: dimension mismatch");
  const int d = form.degree();
  BigComplex acc(0);
  if (form.num_vars() == 2) {
    // Powers of both coordinates, then a straight dot product.
    std::vector<BigComplex> p1(d + 1), p2(d + 1);
    p1[0] = p2[0] = BigComplex(1);
    for (int k = 1; k <= d; ++k) {
      p1[k] = p1[k - 1] * point[0];
      p2[k] = p2[k - 1] * point[1];
    }
    for (int a = 0; a <= d; ++a) {
      const BigComplex& c = form.at(a);
      if (!is_zero(c)) acc += c * p1[a] * p2[d - a];
    }
  } else {
    std::vector<BigComplex> p1(d + 1), p2(d + 1), p3(d + 1);
    p1[0] = p2[0] = p3[0] = BigComplex(1);
    for (int k = 1; k <= d; ++k) {
      p1[k] = p1[k - 1] * point[0];
      p2[k] = p2[k - 1] * point[1];
      p3[k] = p3[k - 1] * point[2];
    }
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b) {
        const BigComplex& c = form.at(a, b);
        if (!is_zero(c)) acc += c * p1[a] * p2[b] * p3[d - a - b];
      }
  }
  return acc;
}

HomogeneousForm linear_form(const std::vector<BigComplex>& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  HomogeneousForm l(n, 1);
  if (n == 2) {
    l.at(1) = coeffs[0];
    l.at(0) = coeffs[1];
  } else {
    l.at(1, 0) = coeffs[0];
    l.at(0, 1) = coeffs[1];
    l.at(0, 0) = coeffs[2];
  }
  return l;
}

namespace {

// Powers 0..max of a linear form.
std::vector<HomogeneousForm> power_table(const HomogeneousForm& l, int max) {
  std::vector<HomogeneousForm> p;
  p.reserve(max + 1);
  HomogeneousForm one(l.num_vars(), 0);
  if (l.num_vars() == 2)
    one.at(0) = BigComplex(1);
  else
    one.at(0, 0) = BigComplex(1);
  p.push_back(one);
  for (int k = 1; k <= max; ++k) p.push_back(p.back() * l);
  return p;
}

HomogeneousForm constant_form(int nvars, const BigComplex& c) {
  HomogeneousForm f(nvars, 0);
  if (nvars == 2)
    f.at(0) = c;
  else
    f.at(0, 0) = c;
  return f;
}

}  // namespace

// Composition phi(S x) by a nested homogeneous Horner scheme: peel off
// powers of x1, and inside each slice peel off powers of x2 against a
// precomputed table of powers of the last row's linear form.
HomogeneousForm act_on_form(const LinearSubstitution& sub,
                            const HomogeneousForm& form) {
  if (sub.dim() != form.num_vars())
    throw std::invalid_argument("act_on_form: dimension mismatch");
  const int d = form.degree();
  const int n = form.num_vars();
  if (d == 0) return form;

  std::vector<HomogeneousForm> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<BigComplex> r;
    for (int j = 0; j < n; ++j) r.push_back(sub.at(i, j));
    rows.push_back(linear_form(r));
  }

  if (n == 2) {
    const auto l2pow = power_table(rows[1], d);
    HomogeneousForm acc = constant_form(2, form.at(d));
    for (int a = d - 1; a >= 0; --a) {
      acc = acc * rows[0];
      if (!is_zero(form.at(a))) acc += form.at(a) * l2pow[d - a];
    }
    return acc;
  }

  const auto l3pow = power_table(rows[2], d);
  // Slice at x1-degree a is a binary form in (x2, x3) of degree d-a.
  auto eval_slice = [&](int a) {
    const int m = d - a;
    HomogeneousForm acc = constant_form(3, form.at(a, m));
    for (int b = m - 1; b >= 0; --b) {
      acc = acc * rows[1];
      if (!is_zero(form.at(a, b))) acc += form.at(a, b) * l3pow[m - b];
    }
    return acc;
  };
  HomogeneousForm acc = constant_form(3, form.at(d, 0));
  for (int a = d - 1; a >= 0; --a) {
    acc = acc * rows[0];
    acc += eval_slice(a);
  }
  return acc;
}

HomogeneousForm hessian_form(const HomogeneousForm& cubic) {
  if (cubic.num_vars() != 3 || cubic.degree() != 3)
    throw std::invalid_argument("hessian_form: expected ternary cubic");
  HomogeneousForm h[3][3];
  for (int i = 0; i < 3; ++i) {
    const HomogeneousForm di = cubic.derivative(i);
    for (int j = 0; j < 3; ++j) h[i][j] = di.derivative(j);
  }
  // 3x3 determinant of degree-1 forms by cofactor expansion.
  auto det2 = [&](int r1, int r2, int c1, int c2) {
    return h[r1][c1] * h[r2][c2] - h[r1][c2] * h[r2][c1];
  };
  return h[0][0] * det2(1, 2, 1, 2) - h[0][1] * det2(1, 2, 0, 2) +
         h[0][2] * det2(1, 2, 0, 1);
}

HomogeneousForm jacobian_det(const HomogeneousForm& f1, const HomogeneousForm& f2,
                             const HomogeneousForm& f3) {
  const HomogeneousForm* fs[3] = {&f1, &f2, &f3};
  for (const auto* f : fs)
    if (f->num_vars() != 3 || f->degree() != 2)
      throw std::invalid_argument("jacobian_det: expected ternary quadratics");
  HomogeneousForm g[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = fs[i]->derivative(j);
  auto det2 = [&](int r1, int r2, int c1, int c2) {
    return g[r1][c1] * g[r2][c2] - g[r1][c2] * g[r2][c1];
  };
  return g[0][0] * det2(1, 2, 1, 2) - g[0][1] * det2(1, 2, 0, 2) +
         g[0][2] * det2(1, 2, 0, 1);
}

}  // namespace covres
