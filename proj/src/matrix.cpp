#include "covres/matrix.hpp"

#include <cmath>
#include <deque>

namespace covres {

BigComplex LinearSubstitution::determinant() const {
  if (dim_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
         at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
         at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

LinearSubstitution LinearSubstitution::inverse() const {
  const BigComplex d = determinant();
  if (abs(d) == 0) throw std::domain_error("inverse: singular substitution");
  LinearSubstitution r(dim_);
  if (dim_ == 2) {
    r.at(0, 0) = at(1, 1) / d;
    r.at(0, 1) = -at(0, 1) / d;
    r.at(1, 0) = -at(1, 0) / d;
    r.at(1, 1) = at(0, 0) / d;
    return r;
  }
  // Adjugate / det.
  auto cof = [&](int i, int j) {
    int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    return at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.at(i, j) = cof(j, i) / d;
  return r;
}

LinearSubstitution LinearSubstitution::unimodularized() const {
  const BigComplex d = determinant();
  if (abs(d) == 0) throw std::domain_error("unimodularized: singular substitution");
  // Principal dim-th root of det, then divide.
  const BigFloat m = pow(abs(d), BigFloat(1) / dim_);
  const BigComplex root = unit_phase(arg(d) / dim_) * BigComplex(m);
  LinearSubstitution r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = at(i, j) / root;
  return r;
}

LinearSubstitution LinearSubstitution::phase_normalized() const {
  // First entry whose modulus is within a relative 2^-40 of the maximum;
  // the slack keeps the choice stable when several entries tie in modulus
  // (common for these groups) and only numerical noise separates them.
  BigFloat maxmod = 0;
  for (const auto& e : e_) {
    BigFloat a = abs(e);
    if (a > maxmod) maxmod = a;
  }
  if (maxmod == 0) return *this;
  const BigFloat threshold = maxmod * (1 - pow(BigFloat(2), -40));
  BigComplex pivot(1);
  for (const auto& e : e_)
    if (abs(e) >= threshold) {
      pivot = e / BigComplex(abs(e));
      break;
    }
  LinearSubstitution r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = at(i, j) / pivot;
  return r;
}

std::optional<std::size_t> MatrixGroup::find(const LinearSubstitution& m,
                                             const BigFloat& tol) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].dim() == m.dim() && elements[i].max_entry_distance(m) < tol)
      return i;
  return std::nullopt;
}

std::optional<std::size_t> MatrixGroup::find_projective(
    const LinearSubstitution& m, const BigFloat& tol) const {
  const LinearSubstitution mn = m.phase_normalized();
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].dim() == m.dim() &&
        elements[i].phase_normalized().max_entry_distance(mn) < tol)
      return i;
  return std::nullopt;
}

MatrixGroup close_group(const std::vector<LinearSubstitution>& generators,
                        std::size_t order_bound, const ToleranceConfig& cfg) {
  if (generators.empty() || order_bound < 1)
    throw std::invalid_argument("close_group: need generators and a bound");
  const int dim = generators[0].dim();
  for (const auto& g : generators) {
    if (g.dim() != dim) throw std::invalid_argument("close_group: mixed dims");
    if (abs(g.determinant() - BigComplex(1)) > cfg.eq_tolerance)
      throw std::invalid_argument("close_group: generator not unimodular");
  }

  MatrixGroup group;
  group.generators = generators;
  group.elements.push_back(LinearSubstitution::identity(dim));

  // Double-precision shadow entries give a cheap reject during dedup; the
  // authoritative comparison is still done at full precision.
  auto shadow = [dim](const LinearSubstitution& s) {
    std::vector<double> v;
    v.reserve(2 * dim * dim);
    for (const auto& e : s.entries()) {
      v.push_back(static_cast<double>(e.re));
      v.push_back(static_cast<double>(e.im));
    }
    return v;
  };
  std::vector<std::vector<double>> shadows{shadow(group.elements[0])};
  auto find_member = [&](const LinearSubstitution& p) -> bool {
    const std::vector<double> ps = shadow(p);
    for (std::size_t i = 0; i < group.elements.size(); ++i) {
      bool near = true;
      for (std::size_t k = 0; k < ps.size() && near; ++k)
        if (std::abs(ps[k] - shadows[i][k]) > 1e-6) near = false;
      if (near && group.elements[i].max_entry_distance(p) < cfg.eq_tolerance)
        return true;
    }
    return false;
  };

  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const std::size_t idx = frontier.front();
    frontier.pop_front();
    for (const auto& g : generators) {
      const LinearSubstitution p = group.elements[idx] * g;
      if (find_member(p)) continue;
      if (group.elements.size() >= order_bound)
        throw std::runtime_error("close_group: closure exceeds order bound");
      group.elements.push_back(p);
      shadows.push_back(shadow(p));
      frontier.push_back(group.elements.size() - 1);
    }
  }
  return group;
}

ProjectiveQuotient projectivize(MatrixGroup& group, const ToleranceConfig& cfg) {
  group.projective_classes.clear();
  std::vector<LinearSubstitution> normalized;
  normalized.reserve(group.order());
  for (const auto& e : group.elements) normalized.push_back(e.phase_normalized());
  std::vector<std::vector<double>> shadows;
  shadows.reserve(group.order());
  for (const auto& e : normalized) {
    std::vector<double> v;
    for (const auto& z : e.entries()) {
      v.push_back(static_cast<double>(z.re));
      v.push_back(static_cast<double>(z.im));
    }
    shadows.push_back(std::move(v));
  }
  auto shadow_near = [&](std::size_t i, std::size_t k) {
    for (std::size_t t = 0; t < shadows[i].size(); ++t)
      if (std::abs(shadows[i][t] - shadows[k][t]) > 1e-6) return false;
    return true;
  };

  std::vector<bool> used(group.order(), false);
  for (std::size_t i = 0; i < group.order(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cls{i};
    used[i] = true;
    for (std::size_t k = i + 1; k < group.order(); ++k) {
      if (used[k]) continue;
      if (shadow_near(i, k) &&
          normalized[i].max_entry_distance(normalized[k]) < cfg.eq_tolerance) {
        // Sanity: the actual scalar ratio must be a root of unity.
        BigComplex ratio(0);
        for (int r = 0; r < group.elements[k].dim() && is_zero(ratio); ++r)
          for (int c = 0; c < group.elements[k].dim() && is_zero(ratio); ++c)
            if (abs(group.elements[k].at(r, c)) > cfg.eq_tolerance)
              ratio = group.elements[i].at(r, c) / group.elements[k].at(r, c);
        if (abs(abs(ratio) - 1) > cfg.eq_tolerance)
          throw std::runtime_error(
              "projectivize: scalar ratio is not a root of unity");
        cls.push_back(k);
        used[k] = true;
      }
    }
    group.projective_classes.push_back(std::move(cls));
  }

  ProjectiveQuotient q;
  q.quotient_size = group.projective_classes.size();
  // The kernel is the class of the identity, read off as scalar matrices.
  const LinearSubstitution id = LinearSubstitution::identity(group.elements[0].dim());
  for (const auto& cls : group.projective_classes) {
    bool has_id = false;
    for (std::size_t idx : cls)
      if (group.elements[idx].max_entry_distance(id) < cfg.eq_tolerance)
        has_id = true;
    if (!has_id) continue;
    for (std::size_t idx : cls) q.kernel.push_back(group.elements[idx]);
    break;
  }
  return q;
}

}  // namespace covres
