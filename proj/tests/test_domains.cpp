#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "momentshape/domains.hpp"

using namespace momentshape;

namespace {

// Independent oracle: moments of D(a, r) by polar quadrature (trapezoid in
// theta is spectrally accurate for periodic integrands, Simpson in rho).
Complex disk_moment_polar(Complex a, double r, int k, int l) {
  const int nr = 401, nt = 512;
  Complex acc = 0.0;
  for (int ir = 0; ir < nr; ++ir) {
    double rho = r * ir / (nr - 1.0);
    double wr = (ir == 0 || ir == nr - 1) ? 1.0 : (ir % 2 == 1 ? 4.0 : 2.0);
    Complex ring = 0.0;
    for (int it = 0; it < nt; ++it) {
      double th = 2.0 * kPi * it / nt;
      Complex z = a + rho * Complex(std::cos(th), std::sin(th));
      ring += std::pow(z, k) * std::pow(std::conj(z), l);
    }
    acc += wr * rho * ring;
  }
  double hr = r / (nr - 1.0);
  return acc * (hr / 3.0) * (2.0 * kPi / nt);
}

}  // namespace

TEST_CASE("disk_moments: unit disk basics") {
  auto t = disk_moments(0.0, 1.0, 2);
  CHECK(t.s(0, 0).real() == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(std::abs(t.s(1, 0)) < 1e-15);
  CHECK(t.s(2, 2).real() == doctest::Approx(kPi / 3.0).epsilon(1e-14));
  CHECK(std::abs(t.s(2, 2) - disk_moment_polar(0.0, 1.0, 2, 2)) < 1e-8);
}

TEST_CASE("disk_moments: shifted disk matches the polar oracle") {
  Complex a(0.2, 0.1);
  auto t = disk_moments(a, 0.5, 3);
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; l <= 3; ++l)
      CHECK(std::abs(t.s(k, l) - disk_moment_polar(a, 0.5, k, l)) < 1e-9);
  CHECK(t.is_hermitian(1e-15));
}

TEST_CASE("conformal_moments: identity map reproduces the unit disk") {
  CVector phi(2);
  phi << 0.0, 1.0;
  auto conf = conformal_moments(phi, 3);
  auto disk = disk_moments(0.0, 1.0, 3);
  CHECK((conf.s - disk.s).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("conformal_moments: quadratic map against grid quadrature") {
  const Complex c(0.3, 0.0);
  CVector phi(3);
  phi << 0.0, 1.0, c;
  auto t = conformal_moments(phi, 2);
  CHECK(t.s(0, 0).real() == doctest::Approx(kPi * (1.0 + 2.0 * std::norm(c))).epsilon(1e-14));
  CHECK(t.is_hermitian(1e-14));

  auto g = sample_shade(ConformalSpec{phi}, 1024);
  auto grid = grid_moments(g, 2);
  for (int k = 0; k <= 2; ++k)
    for (int l = 0; l <= 2; ++l)
      CHECK(std::abs(grid.s(k, l) - t.s(k, l)) < 1e-2 * std::max(1.0, std::abs(t.s(k, l))));
  // s_10 specifically, to the spec'd grid tolerance.
  CHECK(std::abs(grid.s(1, 0) - t.s(1, 0)) < 1e-2);
}

TEST_CASE("conformal_moments: non-injective map is rejected") {
  CVector phi(3);
  phi << 0.0, 1.0, 0.7;  // |c| > 1/2 folds the boundary
  CHECK_THROWS_AS(conformal_moments(phi, 2), std::invalid_argument);
}

TEST_CASE("grid_moments: zero shade, disk indicator, exact linearity") {
  ShadeFunction zero(16, {-1.0, 1.0, -1.0, 1.0});
  CHECK(grid_moments(zero, 3).s.cwiseAbs().maxCoeff() == 0.0);

  auto g = sample_shade(DiskSpec{0.0, 0.8}, 1024, {-1.0, 1.0, -1.0, 1.0});
  auto grid = grid_moments(g, 4);
  auto exact = disk_moments(0.0, 0.8, 4);
  for (int k = 0; k <= 4; ++k)
    for (int l = 0; l <= 4; ++l) {
      double scale = std::max(1e-2, std::abs(exact.s(k, l)));
      CHECK(std::abs(grid.s(k, l) - exact.s(k, l)) / scale < 5e-3);
    }

  ShadeFunction half = g;
  for (int i = 0; i < half.n(); ++i)
    for (int j = 0; j < half.n(); ++j)
      if (half.value(i, j) > 0.0) half.set_value(i, j, 0.5);
  auto grid_half = grid_moments(half, 4);
  CHECK((grid_half.s - 0.5 * grid.s).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grid_moments: convergence to closed form is at least first order") {
  std::vector<double> errs;
  for (int n : {64, 128, 256, 512}) {
    auto g = sample_shade(DiskSpec{Complex(0.1, 0.0), 0.6}, n, {-1.0, 1.0, -1.0, 1.0});
    auto grid = grid_moments(g, 2);
    auto exact = disk_moments(Complex(0.1, 0.0), 0.6, 2);
    errs.push_back((grid.s - exact.s).cwiseAbs().maxCoeff());
  }
  // least-squares slope of log err against log n
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> ns{64, 128, 256, 512};
  for (int i = 0; i < 4; ++i) {
    double lx = std::log(ns[i]), ly = std::log(errs[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
  CHECK(-slope >= 0.9);  // error decays at least like 1/N
  CHECK(errs.back() < errs.front());
}

TEST_CASE("grid_moments: Hermitian symmetry and monotone mass") {
  auto g = random_shade(128, 5);
  auto t = grid_moments(g, 3);
  CHECK(t.is_hermitian(1e-12));

  ShadeFunction bigger = g;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      bigger.set_value(i, j, std::min(1.0, g.value(i, j) + 0.1));
  CHECK(grid_moments(bigger, 0).s(0, 0).real() >= t.s(0, 0).real());
}

TEST_CASE("grid_moments: parallel reduction is bit-identical to serial") {
  auto g = random_shade(256, 17);
  setenv("MOMENTSHAPE_THREADS", "1", 1);
  auto serial = grid_moments(g, 4);
  setenv("MOMENTSHAPE_THREADS", "4", 1);
  auto parallel = grid_moments(g, 4);
  unsetenv("MOMENTSHAPE_THREADS");
  CHECK((serial.s - parallel.s).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("interval_moments: power rule, odd symmetry, two intervals") {
  auto t = interval_moments(IntervalUnionSpec{{{0.0, 1.0}}}, 3);
  CHECK(t.s[0] == doctest::Approx(1.0));
  CHECK(t.s[1] == doctest::Approx(0.5));
  CHECK(t.s[2] == doctest::Approx(1.0 / 3.0));
  CHECK(t.s[3] == doctest::Approx(0.25));

  CHECK(interval_moments(IntervalUnionSpec{{{-1.0, 1.0}}}, 1).s[1] == doctest::Approx(0.0));

  auto two = interval_moments(IntervalUnionSpec{{{-1.0, -0.5}, {0.5, 1.0}}}, 2);
  CHECK(two.s[2] == doctest::Approx(7.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("sample_shade: disk membership by cell centers") {
  auto g = sample_shade(DiskSpec{0.0, 1.0}, 4, {-1.0, 1.0, -1.0, 1.0});
  int inside = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      bool expect = std::abs(g.cell_center(i, j)) < 1.0;
      CHECK(g.value(i, j) == (expect ? 1.0 : 0.0));
      inside += expect;
    }
  CHECK(inside > 0);
}

TEST_CASE("sample_shade: the sublevel set xy >= 0 is the opposed quadrants") {
  auto g = sample_shade(SublevelSpec{polys::xy()}, 64, {-1.0, 1.0, -1.0, 1.0});
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      Complex z = g.cell_center(i, j);
      CHECK(g.value(i, j) == (z.real() * z.imag() >= 0.0 ? 1.0 : 0.0));
    }
}

TEST_CASE("sample_shade_perturbed: dilation L1 mass matches the annulus area") {
  DiskSpec base{0.0, 0.5};
  Perturbation pert{Perturbation::Family::kBoundaryDilation, 0.05};
  const int n = 1024;
  auto chi = sample_shade(DomainSpec{base}, n, {-1.0, 1.0, -1.0, 1.0});
  auto g = sample_shade_perturbed(base, pert, n, {-1.0, 1.0, -1.0, 1.0});
  double measured = l1_distance(chi, g);
  double exact = kPi * (0.55 * 0.55 - 0.25);
  CHECK(measured == doctest::Approx(exact).epsilon(0.02));
  CHECK(perturbation_l1(base, pert) == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("perturbation_l1: translation and smudge closed forms") {
  DiskSpec base{0.0, 0.5};
  const int n = 1024;
  for (auto family : {Perturbation::Family::kTranslation, Perturbation::Family::kGraySmudge}) {
    Perturbation pert{family, 0.08};
    auto chi = sample_shade(DomainSpec{base}, n, {-1.0, 1.0, -1.0, 1.0});
    auto g = sample_shade_perturbed(base, pert, n, {-1.0, 1.0, -1.0, 1.0});
    CHECK(l1_distance(chi, g) ==
          doctest::Approx(perturbation_l1(base, pert)).epsilon(0.03));
  }
}

TEST_CASE("validate: interval and disk invariants") {
  CHECK_THROWS_AS(validate(DomainSpec{IntervalUnionSpec{{{0.5, 0.2}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(DomainSpec{IntervalUnionSpec{{{-0.5, 0.2}, {0.1, 0.4}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(DomainSpec{IntervalUnionSpec{{{-1.5, -1.2}}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(DomainSpec{DiskSpec{0.0, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(sample_shade(DomainSpec{IntervalUnionSpec{{{0.0, 0.5}}}}, 16),
                  std::invalid_argument);
}

TEST_CASE("distance_to_support: rectangles, interior points, empty shade") {
  ShadeFunction g(8, {-1.0, 1.0, -1.0, 1.0});
  CHECK(std::isinf(g.distance_to_support(Complex(0.0, 0.0))));
  g.set_value(3, 3, 1.0);  // cell [-0.25, 0] x [-0.25, 0]
  CHECK(g.distance_to_support(Complex(-0.1, -0.1)) == 0.0);
  CHECK(g.distance_to_support(Complex(1.0, -0.1)) == doctest::Approx(1.0));
  CHECK(g.distance_to_support(Complex(-0.1, 0.5)) == doctest::Approx(0.5));
}
