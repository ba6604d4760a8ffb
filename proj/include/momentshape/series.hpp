#pragma once

// Truncated formal power series in one or two "inverse" variables
// (u = 1/z, v = 1/conj(w)). Coefficients live on a fixed index box; every
// operation discards terms falling outside it. A series with zero constant
// term is nilpotent on the box, so exp/log are finite sums and exact up to
// rounding.

#include <cmath>
#include <stdexcept>

#include "momentshape/common.hpp"

namespace momentshape {

/// Univariate truncated series: coefficients of u^k, k = 0..M.
template <class Scalar = Complex>
class TruncSeries1 {
 public:
  explicit TruncSeries1(Eigen::Index order)
      : c_(Eigen::VectorX<Scalar>::Zero(order + 1)) {
    if (order < 0) throw std::invalid_argument("TruncSeries1: order < 0");
  }

  static TruncSeries1 constant(Scalar c0, Eigen::Index order) {
    TruncSeries1 s(order);
    s.c_[0] = c0;
    return s;
  }

  Eigen::Index order() const { return c_.size() - 1; }

  Scalar coeff(Eigen::Index k) const {
    check_index(k);
    return c_[k];
  }
  Scalar& coeff(Eigen::Index k) {
    check_index(k);
    return c_[k];
  }

  const Eigen::VectorX<Scalar>& coeffs() const { return c_; }

  TruncSeries1& operator+=(const TruncSeries1& o) {
    require_same_order(o);
    c_ += o.c_;
    return *this;
  }
  TruncSeries1& operator-=(const TruncSeries1& o) {
    require_same_order(o);
    c_ -= o.c_;
    return *this;
  }
  TruncSeries1& operator*=(Scalar a) {
    c_ *= a;
    return *this;
  }

  friend TruncSeries1 operator+(TruncSeries1 a, const TruncSeries1& b) { return a += b; }
  friend TruncSeries1 operator-(TruncSeries1 a, const TruncSeries1& b) { return a -= b; }
  friend TruncSeries1 operator*(Scalar a, TruncSeries1 s) { return s *= a; }

  bool is_zero() const { return c_.isZero(0.0); }

  void require_same_order(const TruncSeries1& o) const {
    if (order() != o.order())
      throw std::invalid_argument("TruncSeries1: mismatched truncation orders");
  }

 private:
  void check_index(Eigen::Index k) const {
    if (k < 0 || k > order())
      throw std::out_of_range("TruncSeries1: index beyond truncation order");
  }

  Eigen::VectorX<Scalar> c_;
};

/// Bivariate truncated series on the box (0..M) x (0..M): coefficients of
/// u^k v^l. Box truncation, not total degree: the index set matches the
/// b-coefficient matrix the reconstruction consumes.
template <class Scalar = Complex>
class TruncSeries2 {
 public:
  explicit TruncSeries2(Eigen::Index order)
      : c_(Eigen::MatrixX<Scalar>::Zero(order + 1, order + 1)) {
    if (order < 0) throw std::invalid_argument("TruncSeries2: order < 0");
  }

  static TruncSeries2 constant(Scalar c0, Eigen::Index order) {
    TruncSeries2 s(order);
    s.c_(0, 0) = c0;
    return s;
  }

  Eigen::Index order() const { return c_.rows() - 1; }

  Scalar coeff(Eigen::Index k, Eigen::Index l) const {
    check_index(k, l);
    return c_(k, l);
  }
  Scalar& coeff(Eigen::Index k, Eigen::Index l) {
    check_index(k, l);
    return c_(k, l);
  }

  const Eigen::MatrixX<Scalar>& coeffs() const { return c_; }

  TruncSeries2& operator+=(const TruncSeries2& o) {
    require_same_order(o);
    c_ += o.c_;
    return *this;
  }
  TruncSeries2& operator-=(const TruncSeries2& o) {
    require_same_order(o);
    c_ -= o.c_;
    return *this;
  }
  TruncSeries2& operator*=(Scalar a) {
    c_ *= a;
    return *this;
  }

  friend TruncSeries2 operator+(TruncSeries2 a, const TruncSeries2& b) { return a += b; }
  friend TruncSeries2 operator-(TruncSeries2 a, const TruncSeries2& b) { return a -= b; }
  friend TruncSeries2 operator*(Scalar a, TruncSeries2 s) { return s *= a; }

  bool is_zero() const { return c_.isZero(0.0); }

  void require_same_order(const TruncSeries2& o) const {
    if (order() != o.order())
      throw std::invalid_argument("TruncSeries2: mismatched truncation orders");
  }

 private:
  void check_index(Eigen::Index k, Eigen::Index l) const {
    if (k < 0 || l < 0 || k > order() || l > order())
      throw std::out_of_range("TruncSeries2: index beyond truncation box");
  }

  Eigen::MatrixX<Scalar> c_;
};

namespace detail {

template <class Scalar>
void require_finite(const TruncSeries1<Scalar>& a) {
  if (!a.coeffs().allFinite())
    throw std::invalid_argument("TruncSeries1: non-finite coefficient");
}

template <class Scalar>
void require_finite(const TruncSeries2<Scalar>& a) {
  if (!a.coeffs().allFinite())
    throw std::invalid_argument("TruncSeries2: non-finite coefficient");
}

}  // namespace detail

/// Cauchy product truncated to the common order.
template <class Scalar>
TruncSeries1<Scalar> mul(const TruncSeries1<Scalar>& a, const TruncSeries1<Scalar>& b) {
  a.require_same_order(b);
  detail::require_finite(a);
  detail::require_finite(b);
  const Eigen::Index m = a.order();
  TruncSeries1<Scalar> out(m);
  for (Eigen::Index k = 0; k <= m; ++k) {
    Scalar acc{};
    for (Eigen::Index i = 0; i <= k; ++i) acc += a.coeffs()[i] * b.coeffs()[k - i];
    out.coeff(k) = acc;
  }
  return out;
}

/// Cauchy product on the truncation box, terms outside discarded.
template <class Scalar>
TruncSeries2<Scalar> mul(const TruncSeries2<Scalar>& a, const TruncSeries2<Scalar>& b) {
  a.require_same_order(b);
  detail::require_finite(a);
  detail::require_finite(b);
  const Eigen::Index m = a.order();
  TruncSeries2<Scalar> out(m);
  for (Eigen::Index k = 0; k <= m; ++k)
    for (Eigen::Index l = 0; l <= m; ++l) {
      Scalar acc{};
      for (Eigen::Index i = 0; i <= k; ++i)
        for (Eigen::Index j = 0; j <= l; ++j)
          acc += a.coeffs()(i, j) * b.coeffs()(k - i, l - j);
      out.coeff(k, l) = acc;
    }
  return out;
}

namespace detail {

// exp of a series with zero constant term by Taylor summation. Such a
// series is nilpotent on the box, so the loop terminates once the running
// power vanishes (at most order^2 + 1 terms).
template <class Series, class Scalar>
Series exp_nilpotent(const Series& a, const Scalar& const_term) {
  if (const_term != Scalar{})
    throw std::invalid_argument("exp_series: nonzero constant term");
  require_finite(a);
  Series result = Series::constant(Scalar(1), a.order());
  Series term = Series::constant(Scalar(1), a.order());
  for (Eigen::Index j = 1;; ++j) {
    term = mul(term, a);
    term *= Scalar(1.0 / static_cast<double>(j));
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

// log of a series with constant term one: log(1 + x) = sum (-1)^{j+1} x^j / j,
// again a finite sum by nilpotency of x.
template <class Series, class Scalar>
Series log_nilpotent(const Series& a, const Scalar& const_term) {
  if (const_term != Scalar(1))
    throw std::invalid_argument("log_series: constant coefficient must be 1");
  require_finite(a);
  Series x = a;
  x -= Series::constant(Scalar(1), a.order());
  Series result(a.order());
  Series power = Series::constant(Scalar(1), a.order());
  double sign = 1.0;
  for (Eigen::Index j = 1;; ++j) {
    power = mul(power, x);
    if (power.is_zero()) break;
    Series term = power;
    term *= Scalar(sign / static_cast<double>(j));
    result += term;
    sign = -sign;
  }
  return result;
}

}  // namespace detail

template <class Scalar>
TruncSeries1<Scalar> exp_series(const TruncSeries1<Scalar>& a) {
  return detail::exp_nilpotent<TruncSeries1<Scalar>, Scalar>(a, a.coeffs()[0]);
}

template <class Scalar>
TruncSeries2<Scalar> exp_series(const TruncSeries2<Scalar>& a) {
  return detail::exp_nilpotent<TruncSeries2<Scalar>, Scalar>(a, a.coeffs()(0, 0));
}

template <class Scalar>
TruncSeries1<Scalar> log_series(const TruncSeries1<Scalar>& a) {
  return detail::log_nilpotent<TruncSeries1<Scalar>, Scalar>(a, a.coeffs()[0]);
}

template <class Scalar>
TruncSeries2<Scalar> log_series(const TruncSeries2<Scalar>& a) {
  return detail::log_nilpotent<TruncSeries2<Scalar>, Scalar>(a, a.coeffs()(0, 0));
}

}  // namespace momentshape
