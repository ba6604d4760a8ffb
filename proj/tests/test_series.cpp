#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "momentshape/series.hpp"

using namespace momentshape;
using S1 = TruncSeries1<Complex>;
using S2 = TruncSeries2<Complex>;

namespace {

// Reference convolution, independent of mul().
S2 conv_ref(const S2& a, const S2& b) {
  S2 out(a.order());
  for (Eigen::Index k = 0; k <= a.order(); ++k)
    for (Eigen::Index l = 0; l <= a.order(); ++l)
      for (Eigen::Index i = 0; i <= a.order(); ++i)
        for (Eigen::Index j = 0; j <= a.order(); ++j)
          if (k + i <= a.order() && l + j <= a.order())
            out.coeff(k + i, l + j) += a.coeffs()(k, l) * b.coeffs()(i, j);
  return out;
}

// Term-by-term Taylor composition oracle for exp, built on conv_ref only.
S2 exp_ref(const S2& a) {
  S2 result = S2::constant(1.0, a.order());
  S2 term = S2::constant(1.0, a.order());
  for (int j = 1; j <= static_cast<int>(2 * a.order() + 1); ++j) {
    term = conv_ref(term, a);
    term *= Complex(1.0 / j);
    result += term;
  }
  return result;
}

double max_dev(const S2& a, const S2& b) {
  return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff();
}

S2 random_series2(int order, std::mt19937_64& rng, bool zero_const) {
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  S2 s(order);
  for (int k = 0; k <= order; ++k)
    for (int l = 0; l <= order; ++l) s.coeff(k, l) = Complex(u(rng), u(rng));
  if (zero_const) s.coeff(0, 0) = 0.0;
  return s;
}

S1 random_series1(int order, std::mt19937_64& rng, bool zero_const) {
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  S1 s(order);
  for (int k = 0; k <= order; ++k) s.coeff(k) = Complex(u(rng), u(rng));
  if (zero_const) s.coeff(0) = 0.0;
  return s;
}

}  // namespace

TEST_CASE("mul: distributivity on (1+u)(1+v)") {
  S2 a = S2::constant(1.0, 1);
  a.coeff(1, 0) = 1.0;  // 1 + u
  S2 b = S2::constant(1.0, 1);
  b.coeff(0, 1) = 1.0;  // 1 + v
  S2 p = mul(a, b);
  CHECK(p.coeff(0, 0) == Complex(1.0));
  CHECK(p.coeff(1, 0) == Complex(1.0));
  CHECK(p.coeff(0, 1) == Complex(1.0));
  CHECK(p.coeff(1, 1) == Complex(1.0));
}

TEST_CASE("mul: zero annihilates") {
  std::mt19937_64 rng(7);
  S2 a = random_series2(4, rng, false);
  S2 zero(4);
  CHECK(mul(a, zero).is_zero());
}

TEST_CASE("mul: geometric series telescopes against (1-u)") {
  const int m = 5;
  S2 geo(m);
  for (int k = 0; k <= m; ++k) geo.coeff(k, 0) = 1.0;  // sum u^k
  S2 one_minus_u = S2::constant(1.0, m);
  one_minus_u.coeff(1, 0) = -1.0;
  S2 p = mul(geo, one_minus_u);
  S2 q = conv_ref(geo, one_minus_u);
  CHECK(max_dev(p, q) == 0.0);
  CHECK(p.coeff(0, 0) == Complex(1.0));
  p.coeff(0, 0) = 0.0;
  CHECK(p.is_zero());
}

TEST_CASE("exp: identity and Taylor expansion") {
  CHECK(exp_series(S2(3)).coeff(0, 0) == Complex(1.0));

  S2 upv(2);
  upv.coeff(1, 0) = 1.0;
  upv.coeff(0, 1) = 1.0;
  S2 e = exp_series(upv);
  CHECK(e.coeff(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.coeff(1, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.coeff(0, 1).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.coeff(2, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(e.coeff(1, 1).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.coeff(0, 2).real() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("exp: exp(log(1-u)) telescopes to 1 - u") {
  const int m = 6;
  S2 a(m);
  for (int k = 1; k <= m; ++k) a.coeff(k, 0) = -1.0 / k;
  S2 e = exp_series(a);
  S2 ref = exp_ref(a);
  CHECK(max_dev(e, ref) < 1e-15);

  S2 expected(m);
  expected.coeff(0, 0) = 1.0;
  expected.coeff(1, 0) = -1.0;
  CHECK(max_dev(e, expected) < 1e-14);
}

TEST_CASE("log: identity, Mercator series, inverse pair") {
  CHECK(log_series(S2::constant(1.0, 3)).is_zero());

  S2 a = S2::constant(1.0, 4);
  a.coeff(1, 0) = -1.0;  // 1 - u
  S2 l = log_series(a);
  for (int k = 1; k <= 4; ++k)
    CHECK(l.coeff(k, 0).real() == doctest::Approx(-1.0 / k).epsilon(1e-14));

  S2 uv(3);
  uv.coeff(1, 1) = 1.0;
  S2 roundtrip = log_series(exp_series(uv));
  CHECK(max_dev(roundtrip, uv) < 1e-14);
}

TEST_CASE("univariate analogues share the contracts") {
  const int m = 5;
  S1 geo(m);
  for (int k = 0; k <= m; ++k) geo.coeff(k) = 1.0;
  S1 one_minus_u = S1::constant(1.0, m);
  one_minus_u.coeff(1) = -1.0;
  S1 p = mul(geo, one_minus_u);
  CHECK(p.coeff(0) == Complex(1.0));
  p.coeff(0) = 0.0;
  CHECK(p.is_zero());

  S1 a(4);
  for (int k = 1; k <= 4; ++k) a.coeff(k) = -1.0 / k;
  S1 e = exp_series(a);
  CHECK(std::abs(e.coeff(0) - 1.0) < 1e-15);
  CHECK(std::abs(e.coeff(1) + 1.0) < 1e-14);
  CHECK(std::abs(e.coeff(2)) < 1e-14);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    S1 x = random_series1(12, rng, true);
    S1 back = log_series(exp_series(x));
    CHECK((back.coeffs() - x.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("property: exp is a homomorphism from + to *") {
  std::mt19937_64 rng(42);
  for (int order : {2, 5, 8, 12}) {
    for (int trial = 0; trial < 10; ++trial) {
      S2 a = random_series2(order, rng, true);
      S2 b = random_series2(order, rng, true);
      S2 lhs = exp_series(a + b);
      S2 rhs = mul(exp_series(a), exp_series(b));
      CHECK(max_dev(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("property: exp and log invert each other") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    S2 a = random_series2(6, rng, true);
    CHECK(max_dev(log_series(exp_series(a)), a) < 1e-12);

    S2 b = random_series2(6, rng, true);
    b.coeff(0, 0) = 1.0;
    CHECK(max_dev(exp_series(log_series(b)), b) < 1e-12);
  }
}

TEST_CASE("property: mul commutes and associates on the box") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 25; ++trial) {
    S2 a = random_series2(5, rng, false);
    S2 b = random_series2(5, rng, false);
    S2 c = random_series2(5, rng, false);
    CHECK(max_dev(mul(a, b), mul(b, a)) < 1e-13);
    CHECK(max_dev(mul(mul(a, b), c), mul(a, mul(b, c))) < 1e-13);
  }
}

TEST_CASE("errors: order mismatch, bad constant terms, bad indices") {
  S2 a(3), b(4);
  CHECK_THROWS_AS(mul(a, b), std::invalid_argument);
  CHECK_THROWS_AS((void)a.coeff(4, 0), std::out_of_range);

  S2 c(3);
  c.coeff(0, 0) = 0.5;
  CHECK_THROWS_AS(exp_series(c), std::invalid_argument);
  CHECK_THROWS_AS(log_series(c), std::invalid_argument);

  S1 d(2);
  d.coeff(0) = 1e-3;
  CHECK_THROWS_AS(exp_series(d), std::invalid_argument);
}
