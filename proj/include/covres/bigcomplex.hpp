#pragma once

// Arbitrary-precision complex scalar built on BigFloat.  MPC is not assumed
// to be available, so the handful of transcendental helpers (sqrt, exp of a
// pure phase) are written out against the real MPFR functions.

#include "covres/precision.hpp"

#include <boost/math/constants/constants.hpp>

#include <ostream>
#include <string>

namespace covres {

struct BigComplex {
  BigFloat re;
  BigFloat im;

  BigComplex() : re(0), im(0) {}
  BigComplex(const BigFloat& r) : re(r), im(0) {}
  BigComplex(const BigFloat& r, const BigFloat& i) : re(r), im(i) {}
  BigComplex(long r) : re(r), im(0) {}
  BigComplex(int r) : re(r), im(0) {}
  BigComplex(double r) : re(r), im(0) {}

  BigComplex& operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  BigComplex& operator*=(const BigComplex& o) {
    const BigFloat r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  BigComplex& operator/=(const BigComplex& o) {
    const BigFloat d = o.re * o.re + o.im * o.im;
    const BigFloat r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
  }
};

inline BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
inline BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
inline BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
inline BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
inline BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }

inline BigComplex conj(const BigComplex& a) { return {a.re, -a.im}; }
inline BigFloat norm(const BigComplex& a) { return a.re * a.re + a.im * a.im; }
inline BigFloat abs(const BigComplex& a) {
  return boost::multiprecision::hypot(a.re, a.im);
}
inline BigFloat arg(const BigComplex& a) {
  return boost::multiprecision::atan2(a.im, a.re);
}

inline bool is_zero(const BigComplex& a) { return a.re == 0 && a.im == 0; }

// Principal square root: branch cut along the negative real axis.
inline BigComplex sqrt(const BigComplex& a) {
  if (is_zero(a)) return BigComplex(0);
  const BigFloat m = boost::multiprecision::sqrt(abs(a));
  const BigFloat half_arg = arg(a) / 2;
  return {m * boost::multiprecision::cos(half_arg),
          m * boost::multiprecision::sin(half_arg)};
}

// e^{i*theta}
inline BigComplex unit_phase(const BigFloat& theta) {
  return {boost::multiprecision::cos(theta), boost::multiprecision::sin(theta)};
}

inline BigComplex pow_int(BigComplex base, unsigned e) {
  BigComplex acc(1);
  while (e) {
    if (e & 1u) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

// Exact special constants, computed fresh at the working precision.
inline BigFloat big_pi() { return boost::math::constants::pi<BigFloat>(); }
inline BigFloat sqrt5() { return boost::multiprecision::sqrt(BigFloat(5)); }
inline BigFloat sqrt15() { return boost::multiprecision::sqrt(BigFloat(15)); }
// sqrt(-15), principal branch: i*sqrt(15).
inline BigComplex sqrt_m15() { return {BigFloat(0), sqrt15()}; }
// epsilon = e^{2 pi i / 5}
inline BigComplex root_of_unity(unsigned n, unsigned k = 1) {
  return unit_phase(2 * big_pi() * static_cast<int>(k % n) / static_cast<int>(n));
}
inline BigComplex epsilon5(unsigned k = 1) { return root_of_unity(5, k); }
// j = e^{2 pi i / 3}
inline BigComplex omega3(unsigned k = 1) { return root_of_unity(3, k); }

inline std::ostream& operator<<(std::ostream& os, const BigComplex& z) {
  return os << "(" << z.re << ", " << z.im << ")";
}

}  // namespace covres
