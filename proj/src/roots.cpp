#include "covres/roots.hpp"

#include <algorithm>
#include <stdexcept>

namespace covres {

namespace {

// splitmix64: tiny deterministic generator for perturbation angles.
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

int poly_degree(const Polynomial& p) { return static_cast<int>(p.size()) - 1; }

Polynomial trim_poly(const Polynomial& p, const BigFloat& tol) {
  BigFloat scale = 0;
  for (const auto& c : p) {
    BigFloat a = abs(c);
    if (a > scale) scale = a;
  }
  std::size_t n = p.size();
  while (n > 1 && abs(p[n - 1]) <= tol * scale) --n;
  return Polynomial(p.begin(), p.begin() + n);
}

BigComplex poly_eval(const Polynomial& p, const BigComplex& x) {
  BigComplex acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

void poly_eval2(const Polynomial& p, const BigComplex& x, BigComplex& value,
                BigComplex& deriv) {
  value = BigComplex(0);
  deriv = BigComplex(0);
  for (std::size_t i = p.size(); i-- > 0;) {
    deriv = deriv * x + value;
    value = value * x + p[i];
  }
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  Polynomial r(a.size() + b.size() - 1, BigComplex(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  Polynomial r(std::max(a.size(), b.size()), BigComplex(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Polynomial poly_from_roots(const std::vector<BigComplex>& roots) {
  Polynomial p{BigComplex(1)};
  for (const auto& r : roots) p = poly_mul(p, Polynomial{-r, BigComplex(1)});
  return p;
}

Polynomial poly_derivative(const Polynomial& p) {
  if (p.size() <= 1) return Polynomial{BigComplex(0)};
  Polynomial d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = BigComplex(int(i)) * p[i];
  return d;
}

namespace {

// Starting points on Bini's circles: radii from the upper convex hull of
// (i, log|c_i|), one circle per Newton-polygon edge.
std::vector<BigComplex> initial_points(const Polynomial& monic,
                                       std::uint64_t& rng) {
  const int n = poly_degree(monic);
  std::vector<int> idx;
  std::vector<double> logs;
  for (int i = 0; i <= n; ++i) {
    const BigFloat a = abs(monic[i]);
    if (a == 0) continue;
    idx.push_back(i);
    logs.push_back(static_cast<double>(log(a)));
  }
  // Upper hull over the support points.
  std::vector<int> hull;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      const double cross = (idx[b] - idx[a]) * (logs[k] - logs[a]) -
                           (idx[k] - idx[a]) * (logs[b] - logs[a]);
      if (cross >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(static_cast<int>(k));
  }

  std::vector<BigComplex> pts;
  pts.reserve(n);
  const BigFloat two_pi = 2 * big_pi();
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int k = idx[hull[e]], l = idx[hull[e + 1]];
    const int m = l - k;
    const double r = std::exp((logs[hull[e]] - logs[hull[e + 1]]) / m);
    const double offset = unit_double(rng);
    for (int j = 0; j < m; ++j) {
      const BigFloat theta =
          two_pi * (BigFloat(j) / m + BigFloat(offset) + BigFloat(e) / 7);
      pts.push_back(BigComplex(BigFloat(r)) * unit_phase(theta));
    }
  }
  while (static_cast<int>(pts.size()) < n)  // safety, should not trigger
    pts.push_back(unit_phase(two_pi * BigFloat(unit_double(rng))));
  pts.resize(n);
  return pts;
}

// Backward-error scale sum |c_i| |x|^i.
BigFloat error_scale(const Polynomial& p, const BigComplex& x) {
  const BigFloat ax = abs(x);
  BigFloat acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * ax + abs(p[i]);
  return acc;
}

}  // namespace

std::vector<BigComplex> find_roots(const Polynomial& poly,
                                   const ToleranceConfig& cfg,
                                   std::uint64_t seed) {
  Polynomial p = trim_poly(poly, cfg.eq_tolerance);
  const int n = poly_degree(p);
  if (n < 0 || (n == 0 && abs(p[0]) == 0))
    throw std::invalid_argument("find_roots: zero polynomial");
  if (n == 0) return {};

  // Pull out roots at the origin so the remaining polynomial has a nonzero
  // constant term (Bini's construction assumes this).
  BigFloat scale = 0;
  for (const auto& c : p) {
    BigFloat a = abs(c);
    if (a > scale) scale = a;
  }
  std::size_t zeros = 0;
  while (zeros < p.size() - 1 && abs(p[zeros]) <= cfg.eq_tolerance * scale)
    ++zeros;
  std::vector<BigComplex> roots(zeros, BigComplex(0));
  p.erase(p.begin(), p.begin() + zeros);
  const int m = poly_degree(p);
  if (m == 0) return roots;

  // Monic normalization.
  const BigComplex lead = p.back();
  for (auto& c : p) c /= lead;

  if (m == 1) {
    roots.push_back(-p[0]);
    return roots;
  }

  std::uint64_t rng = seed;
  const int max_sweeps = std::max(200, 3 * m);
  const int restarts = 4;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::vector<BigComplex> z = initial_points(p, rng);
    std::vector<bool> done(m, false);
    bool all_done = false;
    for (int sweep = 0; sweep < max_sweeps && !all_done; ++sweep) {
      all_done = true;
      for (int i = 0; i < m; ++i) {
        if (done[i]) continue;
        BigComplex val, der;
        poly_eval2(p, z[i], val, der);
        if (abs(val) <= cfg.eq_tolerance * error_scale(p, z[i])) {
          done[i] = true;
          continue;
        }
        all_done = false;
        BigComplex w = is_zero(der) ? BigComplex(0) : val / der;
        BigComplex repulsion(0);
        for (int j = 0; j < m; ++j) {
          if (j == i) continue;
          const BigComplex diff = z[i] - z[j];
          if (abs(diff) == 0) continue;
          repulsion += BigComplex(1) / diff;
        }
        const BigComplex denom = BigComplex(1) - w * repulsion;
        BigComplex step;
        if (abs(denom) > 0 && !is_zero(w))
          step = w / denom;
        else  // coincident points or zero derivative: jitter away
          step = BigComplex(BigFloat(1e-3 * (unit_double(rng) - 0.5)),
                            BigFloat(1e-3 * (unit_double(rng) - 0.5)));
        z[i] -= step;
      }
    }
    if (all_done) {
      // Newton polish: quadratic convergence pushes simple roots down to
      // the precision floor (multiple roots stall and keep their cluster
      // accuracy, which is the best the precision supports).
      for (auto& r : z) {
        for (int it = 0; it < cfg.root_polish_iterations; ++it) {
          BigComplex val, der;
          poly_eval2(p, r, val, der);
          if (is_zero(val) || abs(der) == 0) break;
          const BigComplex step = val / der;
          r -= step;
          if (abs(step) <
              abs(r) * pow(BigFloat(2), 16 - int(cfg.precision_bits)))
            break;
          if (it >= 8) break;  // multiple root: no quadratic progress
        }
      }
      for (const auto& r : z) roots.push_back(r);
      return roots;
    }
  }
  throw std::runtime_error("find_roots: no convergence at configured precision");
}

}  // namespace covres
