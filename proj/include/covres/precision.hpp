#pragma once

// Arbitrary-precision real scalar and the precision/tolerance plumbing used
// throughout the library.  All arithmetic goes through MPFR via
// boost::multiprecision with expression templates disabled, so values behave
// like ordinary value types and stay deterministic for a fixed precision.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>

namespace covres {

using BigFloat = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

// MPFR working precision is configured in decimal digits; convert from bits
// with a little headroom so "256 bits" really carries 256 bits.
inline unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.3010299956639812)) + 2;
}

inline void set_working_precision_bits(unsigned bits) {
  BigFloat::default_precision(digits10_for_bits(bits));
}

// RAII guard: escalate (or reduce) the working precision inside a scope.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned bits)
      : saved_digits_(BigFloat::default_precision()) {
    set_working_precision_bits(bits);
  }
  ~ScopedPrecision() { BigFloat::default_precision(saved_digits_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_digits_;
};

struct ToleranceConfig {
  unsigned precision_bits = 256;
  // Comparisons (dedup, residual checks) use this; defaults to 2^-128.
  BigFloat eq_tolerance;
  int root_polish_iterations = 64;

  ToleranceConfig() { eq_tolerance = pow(BigFloat(2), -128); }
  ToleranceConfig(unsigned bits, int tol_exp2, int polish = 64)
      : precision_bits(bits), root_polish_iterations(polish) {
    eq_tolerance = pow(BigFloat(2), tol_exp2);
    validate();
  }

  // eq_tolerance must sit far above the precision floor (ratio >= 2^32),
  // otherwise dedup would be comparing noise.
  void validate() const {
    const BigFloat floor_ = pow(BigFloat(2), -static_cast<int>(precision_bits) + 32);
    if (eq_tolerance < floor_)
      throw std::invalid_argument(
          "ToleranceConfig: eq_tolerance too tight for precision_bits");
  }
};

}  // namespace covres
