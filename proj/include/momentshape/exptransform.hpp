#pragma once

// The exponential transform in both directions: the universal triangular
// coefficient maps s <-> b (2D) and s <-> t (1D) through series exp/log,
// and pointwise evaluation of E_g by grid quadrature.

#include "momentshape/common.hpp"
#include "momentshape/domains.hpp"
#include "momentshape/hermitian_poly.hpp"

namespace momentshape {

/// Coefficients b_{kl} of 1 - E on the index box 0..d.
struct ExpCoeffTable2D {
  int d = 0;
  CMatrix b;

  bool is_hermitian(double tol = 1e-10) const;
};

/// Coefficients t_k of the univariate transform, k = 0..m.
struct ExpCoeffTable1D {
  RVector t;
};

/// b_{kl} from exp[-(1/pi) sum s_{kl} u^{k+1} v^{l+1}]; triangular in the
/// moment indices. Throws on non-Hermitian input.
ExpCoeffTable2D s_to_b(const MomentTable2D& s);

/// Exact inverse of s_to_b on the index box (log route).
MomentTable2D b_to_s(const ExpCoeffTable2D& b);

/// t_k from exp[- sum s_k u^{k+1}]; no 1/pi in one dimension.
ExpCoeffTable1D s_to_t(const MomentTable1D& s);

/// E_g(z, conj(z)) by midpoint quadrature on the shade's grid; value in
/// (0, 1]. Throws when z is closer than two grid cells to the support.
double eval_diagonal(const ShadeFunction& g, Complex z);

/// Polarized transform E_g(z, conj(w)); Hermitian in (z, w).
Complex eval_polarized(const ShadeFunction& g, Complex z, Complex w);

/// Rational closed form Q(z, conj(w)) / (P(z) conj(P(w))). Throws when
/// evaluated at a zero of P (a node).
Complex rational_E(const HermitianBivarPoly& Q, const CVector& P, Complex z, Complex w);

namespace detail {
/// exp(-x) extended by exp(-inf) = 0: clamps to 0 once the exponent
/// magnitude passes 700 (underflow-safe).
double exp_neg_clamped(double x);
}  // namespace detail

}  // namespace momentshape
