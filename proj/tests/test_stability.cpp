#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "momentshape/stability.hpp"

using namespace momentshape;

TEST_CASE("lambda_f: constant function, bathtub on |x|, saturated mass") {
  RealPoly c{1, {{{0}, 0.7}}};
  auto f = sample_abs_poly_on_cube(c, 1000);
  CHECK(lambda_f(f, 0.5) == doctest::Approx(0.7 * 0.5).epsilon(1e-12));

  auto fx = sample_abs_poly_on_cube(polys::x_1d(), 100000);
  CHECK(lambda_f(fx, 1.0) == doctest::Approx(0.25).epsilon(1e-3));

  CHECK(lambda_f(fx, 2.0) == doctest::Approx(1.0).epsilon(1e-3));  // int |x| over [-1,1]
  CHECK_THROWS_AS(lambda_f(fx, 2.5), std::invalid_argument);
}

TEST_CASE("fenchel_check: duality margins and the s^2 slope for |x|") {
  std::vector<double> eps_grid{0.2, 0.5, 1.0};
  std::vector<double> s_grid{0.05, 0.1, 0.2, 0.4};
  auto report = fenchel_check(polys::x_1d(), eps_grid, s_grid, 100000);
  CHECK(report.violations == 0);
  CHECK(report.expected_slope == doctest::Approx(2.0));
  CHECK(std::abs(report.slope - 2.0) < 0.05);
  for (const auto& row : report.rows) CHECK(row.margin >= -report.tolerance);
}

TEST_CASE("fenchel_check: s = 0 lower bound is never above lambda") {
  auto report = fenchel_check(polys::xy(), {0.3, 1.0}, {0.0, 0.1}, 512);
  for (const auto& row : report.rows)
    if (row.s == 0.0) CHECK(row.lambda >= -report.tolerance);
}

TEST_CASE("holder closed forms agree with grid moment gaps at visible eps") {
  const double eps = 0.1;
  // xy translation family on the cube.
  auto chi = sample_shade(SublevelSpec{polys::xy()}, 2048, {-1.0, 1.0, -1.0, 1.0});
  RealPoly shifted{2, {{{1, 1}, 1.0}, {{0, 1}, -eps}}};  // (x - eps) y
  auto g = sample_shade(SublevelSpec{shifted}, 2048, {-1.0, 1.0, -1.0, 1.0});
  double grid_l1 = l1_distance(chi, g);
  double grid_gap = std::abs(polynomial_moment_gap(polys::xy(), chi, g));
  CHECK(grid_l1 ==
        doctest::Approx(holder_l1_closed_form(HolderConfig::Family::kXyTranslation, eps))
            .epsilon(0.02));
  CHECK(grid_gap ==
        doctest::Approx(holder_gap_closed_form(HolderConfig::Family::kXyTranslation, eps))
            .epsilon(0.02));

  // circle dilation family.
  auto chi_c = sample_shade(SublevelSpec{polys::circle(0.25)}, 2048, {-1.0, 1.0, -1.0, 1.0});
  auto g_c = sample_shade(SublevelSpec{polys::circle((0.5 + eps) * (0.5 + eps))}, 2048,
                          {-1.0, 1.0, -1.0, 1.0});
  CHECK(l1_distance(chi_c, g_c) ==
        doctest::Approx(holder_l1_closed_form(HolderConfig::Family::kCircleDilation, eps))
            .epsilon(0.02));
  CHECK(std::abs(polynomial_moment_gap(polys::circle(0.25), chi_c, g_c)) ==
        doctest::Approx(holder_gap_closed_form(HolderConfig::Family::kCircleDilation, eps))
            .epsilon(0.02));
}

TEST_CASE("run_holder_experiment: xy family is bounded with vanishing ratio") {
  HolderConfig cfg;
  cfg.family = HolderConfig::Family::kXyTranslation;
  cfg.eps_grid = {0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};
  auto exp = run_holder_experiment(cfg);
  CHECK(exp.alpha_order == 2);
  CHECK(exp.bounded);
  CHECK(exp.max_ratio <= 16.0 * 0.1 + 1e-12);  // ratio = 16 eps
  for (std::size_t i = 1; i < exp.records.size(); ++i)
    CHECK(exp.records[i].ratio <= exp.records[i - 1].ratio);
}

TEST_CASE("run_holder_experiment: smooth level set slope stays under |a|+1") {
  HolderConfig cfg;
  cfg.family = HolderConfig::Family::kCircleDilation;
  cfg.eps_grid = {0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};
  auto exp = run_holder_experiment(cfg);
  CHECK(exp.alpha_order == 2);
  CHECK(exp.bounded);
  CHECK(std::abs(exp.slope - 2.0) < 0.1);  // gap ~ l1^2 for the annulus
  CHECK(exp.slope <= exp.alpha_order + 1.0);
}

TEST_CASE("run_holder_experiment: eps = 0 gives the all-zero record") {
  HolderConfig cfg;
  cfg.family = HolderConfig::Family::kXyTranslation;
  cfg.eps_grid = {0.01, 0.0};
  auto exp = run_holder_experiment(cfg);
  CHECK(exp.records.back().l1 == 0.0);
  CHECK(exp.records.back().gap == 0.0);
  CHECK(exp.records.back().ratio == 0.0);
}

TEST_CASE("check_diagonal_bound: identical shades and concentric disks") {
  auto f = random_shade(128, 3);
  auto zero = check_diagonal_bound(f, f, {Complex(1.5, 0.0), Complex(0.0, -1.2)});
  for (const auto& row : zero.rows) {
    CHECK(row.left == 0.0);
    CHECK(row.margin >= 0.0);
  }

  BoundingBox box{-1.0, 1.0, -1.0, 1.0};
  auto d1 = sample_shade(DiskSpec{0.0, 0.4}, 1024, box);
  auto d2 = sample_shade(DiskSpec{0.0, 0.5}, 1024, box);
  auto rec = check_diagonal_bound(d1, d2, {Complex(2.0, 0.0)});
  REQUIRE(rec.rows.size() == 1);
  // left = |r1^2 - r2^2| / |z|^2 = 0.0225, right = 2/(pi 1.5^2) * l1 ~ 0.08
  CHECK(rec.rows[0].left == doctest::Approx(0.0225).epsilon(0.02));
  CHECK(rec.rows[0].right == doctest::Approx(0.08).epsilon(0.03));
  CHECK(rec.rows[0].margin > 0.0);
  CHECK(rec.violations == 0);
}

TEST_CASE("check_diagonal_bound: rejects points too close to the support") {
  auto f = sample_shade(DiskSpec{0.0, 0.5}, 64, {-1.0, 1.0, -1.0, 1.0});
  CHECK_THROWS_AS(check_diagonal_bound(f, f, {Complex(0.55, 0.0)}), std::invalid_argument);
}

TEST_CASE("check_diagonal_bound: random shade pairs have no violations") {
  for (int pair = 0; pair < 5; ++pair) {
    auto f = random_shade(256, 100 + pair);
    auto g = random_shade(256, 200 + pair);
    std::vector<Complex> zs;
    for (int k = 0; k < 20; ++k) {
      double th = 2.0 * kPi * k / 20.0;
      zs.push_back((1.1 + 0.03 * k) * Complex(std::cos(th), std::sin(th)));
    }
    auto rec = check_diagonal_bound(f, g, zs, 1e-3);
    CHECK(rec.violations == 0);
  }
}

TEST_CASE("bgap_constant: C3(2) = (2/pi) e^{4/pi}") {
  CHECK(bgap_constant(2.0) == doctest::Approx((2.0 / kPi) * std::exp(4.0 / kPi)).epsilon(1e-14));
  CHECK(bgap_constant(2.0) == doctest::Approx(2.2737).epsilon(1e-3));
  CHECK_THROWS_AS(bgap_constant(1.0), std::invalid_argument);
}

TEST_CASE("check_bgap_bound: equal shades and concentric disks") {
  auto f = random_shade(128, 50);
  auto same = check_bgap_bound(f, f, 2.0, 3);
  for (const auto& row : same.rows) {
    CHECK(row.left == 0.0);
    CHECK(row.margin == row.right);
  }

  BoundingBox box{-1.0, 1.0, -1.0, 1.0};
  auto d1 = sample_shade(DiskSpec{0.0, 0.4}, 512, box);
  auto d2 = sample_shade(DiskSpec{0.0, 0.5}, 512, box);
  auto rec = check_bgap_bound(d1, d2, 2.0, 4);
  CHECK(rec.violations == 0);
  for (const auto& row : rec.rows) CHECK(row.margin > 0.0);
}

TEST_CASE("two_domains_experiment: concentric disks 0.4 / 0.5") {
  auto report = two_domains_experiment(DiskSpec{0.0, 0.4}, DiskSpec{0.0, 0.5}, 4, 512);
  CHECK(report.degree == 1);
  CHECK(report.left_sup == doctest::Approx(0.09).epsilon(1e-9));
  // Closed polar form: int (|u|^2 - 0.16)(chi1 - chi2) dA = -2 pi * 0.002025.
  CHECK(report.integral == doctest::Approx(-2.0 * kPi * 0.002025).epsilon(0.01));
  CHECK(report.right_core ==
        doctest::Approx(std::pow(2.0 * kPi * 0.002025, 1.0 / 3.0)).epsilon(0.01));
  CHECK(report.implied_constant <= report.consistency_bound);
  CHECK(report.consistency_bound == doctest::Approx(72.0));
  CHECK_FALSE(report.same_weights);
  CHECK(report.difference_bidegree == 0);  // (d-1, d-1) when weights differ
}

TEST_CASE("two_domains_experiment: equal domains give 0 = 0") {
  auto report = two_domains_experiment(DiskSpec{0.0, 0.45}, DiskSpec{0.0, 0.45}, 4, 256);
  CHECK(report.left_sup == 0.0);
  CHECK(report.right_core == 0.0);
  CHECK(report.implied_constant == 0.0);
  CHECK(report.same_weights);
  CHECK(report.difference_bidegree <= report.degree - 2);
}

TEST_CASE("two_domains_experiment: same-node conformal pair inside the disk") {
  // Both maps share the double node at phi(0) = 0 and stay inside the
  // unit disk; weights differ, so the difference keeps bidegree d-1.
  CVector phi1(3), phi2(3);
  phi1 << 0.0, 0.6, 0.1;
  phi2 << 0.0, 0.6, 0.05;
  auto report = two_domains_experiment(ConformalSpec{phi1}, ConformalSpec{phi2}, 4, 256);
  CHECK(report.degree == 2);
  CHECK(report.left_sup > 0.0);
  CHECK(report.right_core > 0.0);
  CHECK(report.consistency_bound == doctest::Approx(4.0 * 2.0 * 81.0));
  CHECK(report.implied_constant <= report.consistency_bound);
  CHECK_FALSE(report.same_weights);
  CHECK(report.difference_bidegree <= report.degree - 1);
}

TEST_CASE("two_domains_experiment: node mismatch is rejected") {
  CHECK_THROWS_AS(
      two_domains_experiment(DiskSpec{0.0, 0.4}, DiskSpec{Complex(0.3, 0.0), 0.4}, 4, 128),
      std::invalid_argument);
}

TEST_CASE("rational_approx_experiment: perturbed disk reports a finite constant") {
  auto report = rational_approx_experiment(DiskSpec{0.0, 0.5},
                                           {Perturbation::Family::kBoundaryDilation, 0.05},
                                           2.0, 16, 512);
  CHECK(report.l1 > 0.0);
  CHECK(report.max_left > 0.0);
  CHECK(report.right_core > 0.0);
  CHECK(report.implied_c5 < bgap_constant(2.0) * std::exp(1.0 / std::exp(1.0)) * 4.0);
}
