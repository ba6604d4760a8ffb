#pragma once

#include <stdexcept>

#include "momentshape/common.hpp"

namespace momentshape {

/// Hermitian bivariate polynomial Q(z, conj(w)) = sum q_{kl} z^k conj(w)^l
/// with q_{kl} = conj(q_{lk}); the defining polynomial of a shape.
class HermitianBivarPoly {
 public:
  explicit HermitianBivarPoly(CMatrix q) : q_(std::move(q)) {
    if (q_.rows() != q_.cols())
      throw std::invalid_argument("HermitianBivarPoly: coefficient matrix must be square");
    double scale = std::max(1.0, q_.cwiseAbs().maxCoeff());
    if ((q_ - q_.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
      throw std::invalid_argument("HermitianBivarPoly: coefficients are not Hermitian");
    q_ = 0.5 * (q_ + q_.adjoint().eval());  // symmetrize rounding residue
  }

  int degree() const { return static_cast<int>(q_.rows()) - 1; }
  const CMatrix& coeffs() const { return q_; }
  Complex coeff(int k, int l) const { return q_(k, l); }

  Complex eval(Complex z, Complex w) const {
    const Eigen::Index n = q_.rows();
    Complex acc = 0.0;
    Complex zp = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      Complex inner = 0.0;
      for (Eigen::Index l = n - 1; l >= 0; --l) inner = inner * std::conj(w) + q_(k, l);
      acc += zp * inner;
      zp *= z;
    }
    return acc;
  }

  /// Q(z, conj(z)); real by Hermitian symmetry.
  double eval_diag(Complex z) const { return eval(z, z).real(); }

 private:
  CMatrix q_;
};

}  // namespace momentshape
