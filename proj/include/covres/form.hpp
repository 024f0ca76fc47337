#pragma once

// Dense homogeneous polynomial in 2 or 3 variables over BigComplex.
//
// Storage: for 2 variables the coefficient of x1^a x2^(d-a) sits at index a;
// for 3 variables the coefficient of x1^a x2^b x3^(d-a-b) sits at
// a*(d+1)+b.  The degree-3 case wastes the a+b>d slots, which are kept at
// zero; for the degrees this library handles (<= 60 binary, <= 30 ternary)
// dense-with-slack is simpler and faster than a sparse map.

#include "covres/bigcomplex.hpp"

#include <stdexcept>
#include <vector>

namespace covres {

class HomogeneousForm {
 public:
  HomogeneousForm() : nvars_(2), degree_(0), c_(1) {}
  HomogeneousForm(int nvars, int degree)
      : nvars_(nvars), degree_(degree) {
    if (nvars != 2 && nvars != 3)
      throw std::invalid_argument("HomogeneousForm: nvars must be 2 or 3");
    if (degree < 0) throw std::invalid_argument("HomogeneousForm: negative degree");
    c_.assign(nvars == 2 ? degree + 1 : (degree + 1) * (degree + 1), BigComplex(0));
  }

  int num_vars() const { return nvars_; }
  int degree() const { return degree_; }

  // Binary access: coefficient of x1^a x2^(d-a).
  BigComplex& at(int a) { return c_[check2(a)]; }
  const BigComplex& at(int a) const { return c_[check2(a)]; }
  // Ternary access: coefficient of x1^a x2^b x3^(d-a-b).
  BigComplex& at(int a, int b) { return c_[check3(a, b)]; }
  const BigComplex& at(int a, int b) const { return c_[check3(a, b)]; }

  bool is_ternary() const { return nvars_ == 3; }

  HomogeneousForm& operator+=(const HomogeneousForm& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  HomogeneousForm& operator-=(const HomogeneousForm& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  HomogeneousForm& operator*=(const BigComplex& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend HomogeneousForm operator+(HomogeneousForm a, const HomogeneousForm& b) {
    return a += b;
  }
  friend HomogeneousForm operator-(HomogeneousForm a, const HomogeneousForm& b) {
    return a -= b;
  }
  friend HomogeneousForm operator*(HomogeneousForm a, const BigComplex& s) {
    return a *= s;
  }
  friend HomogeneousForm operator*(const BigComplex& s, HomogeneousForm a) {
    return a *= s;
  }

  // Graded product.
  friend HomogeneousForm operator*(const HomogeneousForm& a,
                                   const HomogeneousForm& b) {
    if (a.nvars_ != b.nvars_)
      throw std::invalid_argument("form product: variable count mismatch");
    HomogeneousForm r(a.nvars_, a.degree_ + b.degree_);
    if (a.nvars_ == 2) {
      for (int i = 0; i <= a.degree_; ++i) {
        if (is_zero(a.c_[i])) continue;
        for (int j = 0; j <= b.degree_; ++j) {
          if (is_zero(b.c_[j])) continue;
          r.at(i + j) += a.c_[i] * b.c_[j];
        }
      }
    } else {
      for (int i = 0; i <= a.degree_; ++i)
        for (int i2 = 0; i2 + i <= a.degree_; ++i2) {
          const BigComplex& av = a.at(i, i2);
          if (is_zero(av)) continue;
          for (int j = 0; j <= b.degree_; ++j)
            for (int j2 = 0; j2 + j <= b.degree_; ++j2) {
              const BigComplex& bv = b.at(j, j2);
              if (is_zero(bv)) continue;
              r.at(i + j, i2 + j2) += av * bv;
            }
        }
    }
    return r;
  }

  // Largest coefficient modulus; the natural scale for residual checks.
  BigFloat max_abs() const {
    BigFloat m = 0;
    for (const auto& v : c_) {
      BigFloat a = abs(v);
      if (a > m) m = a;
    }
    return m;
  }

  // d/dx_k (k is 0-based).
  HomogeneousForm derivative(int k) const {
    if (degree_ == 0) return HomogeneousForm(nvars_, 0);
    HomogeneousForm r(nvars_, degree_ - 1);
    if (nvars_ == 2) {
      for (int a = 0; a <= degree_; ++a) {
        const int e = (k == 0) ? a : degree_ - a;
        if (e == 0 || is_zero(c_[a])) continue;
        r.at(k == 0 ? a - 1 : a) += BigComplex(e) * c_[a];
      }
    } else {
      for (int a = 0; a <= degree_; ++a)
        for (int b = 0; a + b <= degree_; ++b) {
          const int e = (k == 0) ? a : (k == 1) ? b : degree_ - a - b;
          if (e == 0 || is_zero(at(a, b))) continue;
          r.at(k == 0 ? a - 1 : a, k == 1 ? b - 1 : b) += BigComplex(e) * at(a, b);
        }
    }
    return r;
  }

  const std::vector<BigComplex>& raw() const { return c_; }

 private:
  std::size_t check2(int a) const {
    if (nvars_ != 2 || a < 0 || a > degree_)
      throw std::out_of_range("HomogeneousForm: bad binary index");
    return static_cast<std::size_t>(a);
  }
  std::size_t check3(int a, int b) const {
    if (nvars_ != 3 || a < 0 || b < 0 || a + b > degree_)
      throw std::out_of_range("HomogeneousForm: bad ternary index");
    return static_cast<std::size_t>(a) * (degree_ + 1) + b;
  }
  void require_same_shape(const HomogeneousForm& o) const {
    if (nvars_ != o.nvars_ || degree_ != o.degree_)
      throw std::invalid_argument("form arithmetic: shape mismatch");
  }

  int nvars_;
  int degree_;
  std::vector<BigComplex> c_;
};

// Sum of coeff * monomial(point).
BigComplex evaluate_form(const HomogeneousForm& form,
                         const std::vector<BigComplex>& point);

// Linear form c1*x1 + ... as a degree-1 HomogeneousForm.
HomogeneousForm linear_form(const std::vector<BigComplex>& coeffs);

// Determinant of the matrix of second partials of a ternary cubic (degree 3).
HomogeneousForm hessian_form(const HomogeneousForm& cubic);

// Determinant of the matrix of first partials of three ternary quadratics.
HomogeneousForm jacobian_det(const HomogeneousForm& f1, const HomogeneousForm& f2,
                             const HomogeneousForm& f3);

}  // namespace covres
