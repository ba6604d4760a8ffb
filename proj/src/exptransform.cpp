#include "momentshape/exptransform.hpp"

#include <cmath>
#include <stdexcept>

#include "momentshape/poly.hpp"
#include "momentshape/series.hpp"

namespace momentshape {

bool ExpCoeffTable2D::is_hermitian(double tol) const {
  double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  return (b - b.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

ExpCoeffTable2D s_to_b(const MomentTable2D& s) {
  if (!s.is_hermitian()) throw std::invalid_argument("s_to_b: moment table is not Hermitian");
  const int d = s.d;
  TruncSeries2<Complex> a(d + 1);
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l) a.coeff(k + 1, l + 1) = -s.s(k, l) / kPi;
  TruncSeries2<Complex> e = exp_series(a);

  ExpCoeffTable2D out;
  out.d = d;
  out.b = CMatrix::Zero(d + 1, d + 1);
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l) out.b(k, l) = -e.coeff(k + 1, l + 1);
  return out;
}

MomentTable2D b_to_s(const ExpCoeffTable2D& b) {
  const int d = b.d;
  TruncSeries2<Complex> e = TruncSeries2<Complex>::constant(1.0, d + 1);
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l) e.coeff(k + 1, l + 1) = -b.b(k, l);
  TruncSeries2<Complex> a = log_series(e);

  MomentTable2D out;
  out.d = d;
  out.provenance = MomentProvenance::kClosedForm;
  out.s = CMatrix::Zero(d + 1, d + 1);
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l) out.s(k, l) = -kPi * a.coeff(k + 1, l + 1);
  return out;
}

ExpCoeffTable1D s_to_t(const MomentTable1D& s) {
  const int m = s.m;
  TruncSeries1<Complex> a(m + 1);
  for (int k = 0; k <= m; ++k) a.coeff(k + 1) = -s.s[k];
  TruncSeries1<Complex> e = exp_series(a);

  ExpCoeffTable1D out;
  out.t = RVector::Zero(m + 1);
  for (int k = 0; k <= m; ++k) out.t[k] = -e.coeff(k + 1).real();
  return out;
}

namespace detail {

double exp_neg_clamped(double x) { return x > 700.0 ? 0.0 : std::exp(-x); }

}  // namespace detail

namespace {

void require_exterior(const ShadeFunction& g, Complex z) {
  double min_dist = 2.0 * std::max(g.cell_width(), g.cell_height());
  if (g.distance_to_support(z) < min_dist)
    throw std::invalid_argument("exponential transform: point too close to the support");
}

}  // namespace

double eval_diagonal(const ShadeFunction& g, Complex z) {
  require_exterior(g, z);
  const int n = g.n();
  double integral = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double gij = g.value(i, j);
      if (gij == 0.0) continue;
      integral += gij / std::norm(g.cell_center(i, j) - z);
    }
  integral *= g.cell_area() / kPi;
  return detail::exp_neg_clamped(integral);
}

Complex eval_polarized(const ShadeFunction& g, Complex z, Complex w) {
  require_exterior(g, z);
  require_exterior(g, w);
  const int n = g.n();
  Complex integral = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double gij = g.value(i, j);
      if (gij == 0.0) continue;
      Complex zeta = g.cell_center(i, j);
      integral += gij / ((zeta - z) * (std::conj(zeta) - std::conj(w)));
    }
  integral *= g.cell_area() / kPi;
  return std::exp(-integral);
}

Complex rational_E(const HermitianBivarPoly& Q, const CVector& P, Complex z, Complex w) {
  Complex pz = poly::eval(P, z);
  Complex pw = poly::eval(P, w);
  if (pz == Complex(0.0) || pw == Complex(0.0))
    throw std::invalid_argument("rational_E: evaluation at a node of P");
  return Q.eval(z, w) / (pz * std::conj(pw));
}

}  // namespace momentshape
