#pragma once

// One-dimensional pipeline: interval-union moments -> t coefficients ->
// Hankel rank test -> Pade recovery of the rational transform -> endpoints.

#include <string>

#include "momentshape/common.hpp"
#include "momentshape/domains.hpp"
#include "momentshape/exptransform.hpp"
#include "momentshape/reconstruct.hpp"

namespace momentshape {

/// Hankel matrix H_{jl} = t_{j+l}, 0 <= j, l <= m (needs 2m+1 coefficients).
RMatrix hankel_from(const ExpCoeffTable1D& t, int m);

/// Smallest d whose (d+1)x(d+1) Hankel block has a relative smallest
/// eigenvalue below tol; candidates are limited by the available t's.
DegeneracyResult hankel_rank(const ExpCoeffTable1D& t, double tol = 1e-8);

/// Rational exponential transform Q/P with both polynomials monic of equal
/// degree, so the transform tends to 1 at infinity.
struct RationalE1D {
  RVector q;  // ascending coefficients
  RVector p;

  double eval(double z) const;
};

struct PadeResult {
  bool ok = false;
  RationalE1D rat;
  double null_gap = 0.0;  // separation of the two smallest Hankel eigenvalues
  std::string message;
};

/// P from the Hankel null vector, Q as the polynomial part of
/// P(z) (1 - sum t_k z^{-k-1}). Requires 2d+1 coefficients.
PadeResult pade_recover(const ExpCoeffTable1D& t, int d);

struct EndpointResult {
  bool ok = false;
  IntervalUnionSpec intervals;
  std::string message;
};

/// Pairs the sorted interlacing roots of P and Q into intervals
/// [root of P, root of Q]. Non-real or non-interlacing roots are a failure
/// report, not an exception.
EndpointResult endpoints(const RationalE1D& rat);

struct Markov1DReport {
  ExpCoeffTable1D t;
  DegeneracyResult rank;
  PadeResult pade;
  EndpointResult ends;
};

/// Full pipeline from 1D moments.
Markov1DReport run_markov1d(const MomentTable1D& s, double tol = 1e-8);

}  // namespace momentshape
