#pragma once

// Unimodular linear substitutions in 2 or 3 variables, finite groups of
// them, group closure and projectivization.

#include "covres/bigcomplex.hpp"
#include "covres/form.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace covres {

class LinearSubstitution {
 public:
  LinearSubstitution() : dim_(2), e_(4, BigComplex(0)) {}
  explicit LinearSubstitution(int dim) : dim_(dim), e_(dim * dim, BigComplex(0)) {
    if (dim != 2 && dim != 3)
      throw std::invalid_argument("LinearSubstitution: dim must be 2 or 3");
  }
  LinearSubstitution(int dim, std::vector<BigComplex> entries)
      : dim_(dim), e_(std::move(entries)) {
    if ((dim != 2 && dim != 3) || e_.size() != static_cast<std::size_t>(dim * dim))
      throw std::invalid_argument("LinearSubstitution: bad entry count");
  }

  static LinearSubstitution identity(int dim) {
    LinearSubstitution s(dim);
    for (int i = 0; i < dim; ++i) s.at(i, i) = BigComplex(1);
    return s;
  }

  int dim() const { return dim_; }
  BigComplex& at(int r, int c) { return e_[r * dim_ + c]; }
  const BigComplex& at(int r, int c) const { return e_[r * dim_ + c]; }
  const std::vector<BigComplex>& entries() const { return e_; }

  BigComplex determinant() const;
  LinearSubstitution inverse() const;

  friend LinearSubstitution operator*(const LinearSubstitution& a,
                                      const LinearSubstitution& b) {
    if (a.dim_ != b.dim_)
      throw std::invalid_argument("substitution product: dim mismatch");
    LinearSubstitution r(a.dim_);
    for (int i = 0; i < a.dim_; ++i)
      for (int j = 0; j < a.dim_; ++j) {
        BigComplex s(0);
        for (int k = 0; k < a.dim_; ++k) s += a.at(i, k) * b.at(k, j);
        r.at(i, j) = s;
      }
    return r;
  }

  std::vector<BigComplex> apply(const std::vector<BigComplex>& p) const {
    if (p.size() != static_cast<std::size_t>(dim_))
      throw std::invalid_argument("substitution apply: dim mismatch");
    std::vector<BigComplex> r(dim_, BigComplex(0));
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r[i] += at(i, j) * p[j];
    return r;
  }

  // Rescale so det becomes exactly 1 (choosing the principal dim-th root).
  LinearSubstitution unimodularized() const;

  // Divide out the phase of the entry of largest modulus; two matrices equal
  // up to a unit scalar then compare entrywise.  Used for stable dedup.
  LinearSubstitution phase_normalized() const;

  BigFloat max_entry_distance(const LinearSubstitution& o) const {
    BigFloat m = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      BigFloat d = abs(e_[i] - o.e_[i]);
      if (d > m) m = d;
    }
    return m;
  }

 private:
  int dim_;
  std::vector<BigComplex> e_;
};

// phi composed with the substitution: evaluate(act(S,phi), p) = evaluate(phi, S.p).
HomogeneousForm act_on_form(const LinearSubstitution& sub,
                            const HomogeneousForm& form);

struct MatrixGroup {
  std::vector<LinearSubstitution> elements;
  std::vector<LinearSubstitution> generators;
  // projective_classes[k] lists indices into elements equal up to scalar.
  std::vector<std::vector<std::size_t>> projective_classes;

  std::size_t order() const { return elements.size(); }
  // Index of the element within tol of m entrywise, if any.  Scalar
  // multiples are distinct elements; use find_projective to ignore phase.
  std::optional<std::size_t> find(const LinearSubstitution& m,
                                  const BigFloat& tol) const;
  // Index of an element equal to m up to a unit scalar factor, if any.
  std::optional<std::size_t> find_projective(const LinearSubstitution& m,
                                             const BigFloat& tol) const;
};

// Breadth-first closure of the generators under products.  Throws if the
// closure exceeds order_bound or if two distinct elements collide inside the
// dedup tolerance.
MatrixGroup close_group(const std::vector<LinearSubstitution>& generators,
                        std::size_t order_bound, const ToleranceConfig& cfg);

struct ProjectiveQuotient {
  std::size_t quotient_size = 0;
  std::vector<LinearSubstitution> kernel;  // scalar substitutions
};

// Partition group elements into scalar-multiple classes (filling
// group.projective_classes) and return the class count plus the scalar
// kernel.  Kernel scalars are verified to be roots of unity.
ProjectiveQuotient projectivize(MatrixGroup& group, const ToleranceConfig& cfg);

}  // namespace covres
