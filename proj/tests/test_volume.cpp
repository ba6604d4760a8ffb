#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "momentshape/volume.hpp"

using namespace momentshape;

namespace {

bool has_alpha(const std::vector<AdmissibleIndex>& list, const std::vector<int>& alpha) {
  for (const auto& a : list)
    if (a.alpha == alpha) return true;
  return false;
}

}  // namespace

TEST_CASE("find_admissible: single-term supports are trivially admissible") {
  auto xy = find_admissible(polys::xy());
  REQUIRE(xy.size() == 1);
  CHECK(xy[0].alpha == std::vector<int>{1, 1});
  CHECK(xy[0].total_degree == 2);

  auto x = find_admissible(polys::x_1d());
  REQUIRE(x.size() == 1);
  CHECK(x[0].alpha == std::vector<int>{1});
}

TEST_CASE("find_admissible: circle polynomial admits both quadratic indices") {
  auto list = find_admissible(polys::circle(1.0));
  CHECK(has_alpha(list, {2, 0}));
  CHECK(has_alpha(list, {0, 2}));
  CHECK_FALSE(has_alpha(list, {0, 0}));
}

TEST_CASE("find_admissible: exhaustive definition check on a mixed support") {
  // p = x^2 y + x y^2 + x: under (x first) lexmax is (2,1); under (y first)
  // lexmax is (1,2).
  RealPoly p{2, {{{2, 1}, 1.0}, {{1, 2}, 1.0}, {{1, 0}, 1.0}}};
  auto list = find_admissible(p);
  CHECK(has_alpha(list, {2, 1}));
  CHECK(has_alpha(list, {1, 2}));
  CHECK_FALSE(has_alpha(list, {1, 0}));
}

TEST_CASE("find_admissible: nonempty for random supports up to n = 6") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> expo(0, 3);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      RealPoly p;
      p.n = n;
      for (int t = 0; t < 4; ++t) {
        RealPoly::Term term;
        term.coeff = coeff(rng);
        if (term.coeff == 0.0) term.coeff = 0.5;
        for (int i = 0; i < n; ++i) term.alpha.push_back(expo(rng));
        bool dup = false;
        for (const auto& other : p.terms) dup |= other.alpha == term.alpha;
        if (!dup) p.terms.push_back(term);
      }
      CHECK_FALSE(find_admissible(p).empty());
    }
  }
  CHECK_THROWS_AS(find_admissible(RealPoly{2, {}}), std::invalid_argument);
}

TEST_CASE("mc_sublevel_volume: exact slabs within 3 sigma") {
  auto est1 = mc_sublevel_volume(polys::x_1d(), 0.1, 1.0, 200000, 42);
  CHECK(std::abs(est1.volume - 0.2) <= 3.0 * est1.std_error);

  auto est2 = mc_sublevel_volume(polys::x_2d(), 0.1, 1.0, 200000, 43);
  CHECK(std::abs(est2.volume - 0.4) <= 3.0 * est2.std_error);
}

TEST_CASE("mc_sublevel_volume: saturated delta fills the cube exactly") {
  auto est = mc_sublevel_volume(polys::x_1d(), 2.0, 1.0, 10000, 7);
  CHECK(est.volume == doctest::Approx(2.0));
  CHECK(est.std_error == 0.0);
}

TEST_CASE("mc_sublevel_volume: deterministic for a fixed seed") {
  auto a = mc_sublevel_volume(polys::xy(), 0.01, 1.0, 300000, 99);
  auto b = mc_sublevel_volume(polys::xy(), 0.01, 1.0, 300000, 99);
  CHECK(a.hits == b.hits);
  auto c = mc_sublevel_volume(polys::xy(), 0.01, 1.0, 300000, 100);
  CHECK(a.hits != c.hits);
}

TEST_CASE("check_vol_ratio: affine ratio is 2^n for every delta") {
  auto adm = find_admissible(polys::x_1d());
  auto table = check_vol_ratio(polys::x_1d(), adm[0], {1e-2, 1e-3, 1e-4}, 400000, 11);
  for (const auto& row : table.rows)
    CHECK(std::abs(row.ratio - 2.0) <= 4.0 * row.std_error / row.delta);

  auto adm2 = find_admissible(polys::x_2d());
  auto table2 = check_vol_ratio(polys::x_2d(), adm2[0], {1e-2, 1e-3}, 400000, 12);
  for (const auto& row : table2.rows)
    CHECK(std::abs(row.ratio - 4.0) <= 4.0 * row.std_error / row.delta);
  CHECK(table2.bounded);
}

TEST_CASE("check_vol_ratio: xy volumes match the logarithmic closed form") {
  auto adm = find_admissible(polys::xy());
  std::vector<double> deltas{1e-2, 1e-3, 1e-4, 1e-5};
  auto table = check_vol_ratio(polys::xy(), adm[0], deltas, 1000000, 4242);
  CHECK(table.bounded);
  for (const auto& row : table.rows) {
    double exact = 4.0 * (row.delta + row.delta * std::log(1.0 / row.delta));
    CHECK(std::abs(row.volume - exact) <= 4.0 * row.std_error);
  }
  // delta ln(1/delta) = o(sqrt(delta)): the ratio decays along the grid.
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    CHECK(table.rows[i].ratio < table.rows[i - 1].ratio);
  CHECK(table.rows.back().ratio < 0.5 * table.rows.front().ratio);
}

TEST_CASE("check_vol_ratio: square-root slab has ratio exactly 2") {
  auto adm = find_admissible(polys::x_squared_1d());
  REQUIRE(adm[0].total_degree == 2);
  auto table = check_vol_ratio(polys::x_squared_1d(), adm[0], {1e-2, 1e-3, 1e-4}, 400000, 5);
  for (const auto& row : table.rows)
    CHECK(std::abs(row.ratio - 2.0) <= 4.0 * row.std_error / std::sqrt(row.delta));
}

TEST_CASE("check_vol_ratio: rejects deltas above the validity threshold") {
  auto adm = find_admissible(polys::xy());
  // threshold = 1/(4*2)^2 = 1/64
  CHECK_THROWS_AS(check_vol_ratio(polys::xy(), adm[0], {0.1}, 1000, 1),
                  std::invalid_argument);
}
