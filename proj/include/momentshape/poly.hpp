#pragma once

// Small helpers for univariate complex polynomials stored as Eigen vectors
// of ascending coefficients: p[0] + p[1] z + ... + p[n] z^n.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "momentshape/common.hpp"

namespace momentshape::poly {

inline Complex eval(const CVector& p, Complex z) {
  Complex acc = 0.0;
  for (Eigen::Index i = p.size() - 1; i >= 0; --i) acc = acc * z + p[i];
  return acc;
}

/// z^k by repeated multiplication; well defined for z = 0, k = 0.
inline Complex cpow(Complex z, int k) {
  Complex acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= z;
  return acc;
}

inline CVector derivative(const CVector& p) {
  if (p.size() <= 1) return CVector::Zero(1);
  CVector d(p.size() - 1);
  for (Eigen::Index i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
  return d;
}

inline CVector multiply(const CVector& a, const CVector& b) {
  CVector out = CVector::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline CVector pow(const CVector& p, int k) {
  CVector out = CVector::Ones(1);
  for (int i = 0; i < k; ++i) out = multiply(out, p);
  return out;
}

inline CVector monic_from_roots(const CVector& roots) {
  CVector out = CVector::Ones(1);
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    CVector factor(2);
    factor << -roots[i], 1.0;
    out = multiply(out, factor);
  }
  return out;
}

/// Coefficients of p(z + a): exact Taylor shift by synthetic evaluation.
inline CVector taylor_shift(const CVector& p, Complex a) {
  const Eigen::Index n = p.size();
  CVector out = p;
  // Repeated synthetic division by (z - (-a)) accumulates the shifted
  // coefficients in place.
  for (Eigen::Index k = 0; k < n - 1; ++k)
    for (Eigen::Index i = n - 2; i >= k; --i) out[i] += a * out[i + 1];
  return out;
}

struct RootResult {
  CVector roots;
  bool converged = false;
  int iterations = 0;
  double max_residual = 0.0;
};

/// Simultaneous-iteration (Durand-Kerner) roots of a polynomial with
/// nonzero leading coefficient. Residual target |p(root)| <= tol * (1 + max
/// coefficient magnitude); non-convergence is reported with the best
/// iterate, not thrown.
inline RootResult roots(const CVector& p, int max_iter = 500, double tol = 1e-10) {
  Eigen::Index deg = p.size() - 1;
  while (deg > 0 && p[deg] == Complex(0.0)) --deg;
  if (deg < 1) throw std::invalid_argument("poly::roots: degree must be >= 1");

  CVector monic = p.head(deg + 1) / p[deg];
  const double scale = 1.0 + p.cwiseAbs().maxCoeff();

  RootResult res;
  res.roots = CVector(deg);
  if (deg == 1) {
    res.roots[0] = -monic[0];
    res.converged = true;
    res.max_residual = std::abs(eval(p, res.roots[0])) / scale;
    return res;
  }

  // Spread the starting points on a circle that encloses all roots.
  double radius = 1.0 + monic.head(deg).cwiseAbs().maxCoeff();
  const Complex seed(0.4, 0.9);
  Complex point = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) {
    point *= seed;
    res.roots[i] = radius * point;
  }

  for (res.iterations = 1; res.iterations <= max_iter; ++res.iterations) {
    double shift = 0.0;
    for (Eigen::Index i = 0; i < deg; ++i) {
      Complex denom = 1.0;
      for (Eigen::Index j = 0; j < deg; ++j)
        if (j != i) denom *= res.roots[i] - res.roots[j];
      if (denom == Complex(0.0)) denom = Complex(1e-300, 0.0);
      Complex delta = eval(monic, res.roots[i]) / denom;
      res.roots[i] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < 1e-15 * (1.0 + res.roots.cwiseAbs().maxCoeff())) break;
  }

  res.max_residual = 0.0;
  for (Eigen::Index i = 0; i < deg; ++i)
    res.max_residual = std::max(res.max_residual, std::abs(eval(p, res.roots[i])));
  res.converged = res.max_residual <= tol * scale;
  return res;
}

}  // namespace momentshape::poly
