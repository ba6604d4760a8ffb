#pragma once

// Experiment harness for the quantitative inequalities: Holder ratios of
// the truncated moment map, the Fenchel/Lambda machinery, and perturbation
// bounds for the exponential transform.

#include <cstdint>
#include <string>
#include <vector>

#include "momentshape/common.hpp"
#include "momentshape/domains.hpp"
#include "momentshape/real_poly.hpp"

namespace momentshape {

/// Nonnegative function sampled at cell centers of [-1,1]^dim.
struct SampledFunction {
  int dim = 1;
  int cells = 0;  // per axis
  Eigen::ArrayXd values;
  double cell_volume = 0.0;
  double total_volume = 0.0;
};

SampledFunction sample_abs_poly_on_cube(const RealPoly& p, int cells);

/// Bathtub-principle minimum of int f g over 0 <= g <= 1, int g >= eps:
/// fill mass eps from the smallest values of f. Throws when eps exceeds the
/// total volume.
double lambda_f(const SampledFunction& f, double eps);

struct FenchelRow {
  double eps = 0.0;
  double s = 0.0;
  double lambda = 0.0;
  double rhs = 0.0;  // s*eps - int (s - f)_+
  double margin = 0.0;
};

struct FenchelReport {
  std::vector<FenchelRow> rows;
  int violations = 0;      // margins below -tolerance
  double tolerance = 0.0;  // grid-resolution allowance
  double slope = 0.0;      // log-log slope of int (s-f)_+ against s
  double expected_slope = 0.0;  // 1 + 1/|alpha| for the binding index
};

/// Verifies the convex-duality inequality for f = |p| at each (eps, s) and
/// measures the small-s growth of int (s - |p|)_+.
FenchelReport fenchel_check(const RealPoly& p, const std::vector<double>& eps_grid,
                            const std::vector<double>& s_grid, int cells);

struct HolderConfig {
  enum class Family { kXyTranslation, kCircleDilation };
  Family family = Family::kXyTranslation;
  std::vector<double> eps_grid;  // strictly decreasing
  double validity_radius = 0.0;  // 0: use |p_a|^{1/|a|}/(4d) * 2
};

struct HolderRecord {
  double eps = 0.0;
  double l1 = 0.0;   // ||chi - g||_1, closed form
  double gap = 0.0;  // |sum p_b (s_b(chi) - s_b(g))|, closed form
  double ratio = 0.0;  // l1^{|a|+1} / gap
  bool in_validity_ball = true;
};

struct HolderExperiment {
  HolderConfig config;
  RealPoly poly;
  std::vector<int> alpha;
  int alpha_order = 0;
  std::vector<HolderRecord> records;
  double max_ratio = 0.0;  // over in-ball records
  bool bounded = false;    // no monotone blow-up as eps -> 0
  double slope = 0.0;      // log-log slope of gap against l1
};

HolderExperiment run_holder_experiment(const HolderConfig& cfg);

/// Closed forms behind the designed families (exposed for oracle tests).
double holder_l1_closed_form(HolderConfig::Family family, double eps);
double holder_gap_closed_form(HolderConfig::Family family, double eps);

/// Grid-quadrature moment gap sum p_b (s_b(f) - s_b(g)) on the cube, used
/// to cross-check the closed forms.
double polynomial_moment_gap(const RealPoly& p, const ShadeFunction& f, const ShadeFunction& g);

struct BoundRow {
  Complex z;  // or (k, l) stored in the real/imag parts for coefficient rows
  double left = 0.0;
  double right = 0.0;
  double margin = 0.0;
};

struct PerturbBoundRecord {
  std::vector<BoundRow> rows;
  double l1 = 0.0;
  double tolerance = 0.0;
  int violations = 0;
};

/// |E_f(z, conj z) - E_g(z, conj z)| <= 2/(pi dist(z,K)^2) ||f - g||_1 at
/// each z; every z must be at distance >= 0.1 from the joint support.
PerturbBoundRecord check_diagonal_bound(const ShadeFunction& f, const ShadeFunction& g,
                                        const std::vector<Complex>& z_points,
                                        double tolerance = 1e-3);

/// |b_{kl}(f) - b_{kl}(g)| <= C3(R) R^{k+l} ||f - g||_1 for k, l <= d.
PerturbBoundRecord check_bgap_bound(const ShadeFunction& f, const ShadeFunction& g, double R,
                                    int d);

/// C3(R) = 2/(pi (R-1)^2) exp(4/(pi (R-1)^2)).
double bgap_constant(double R);

struct TwoDomainsReport {
  int degree = 0;
  double left_sup = 0.0;     // sup_{|z|<2} |Q1 - Q2| on the diagonal
  double integral = 0.0;     // int_D Q1 (chi1 - chi2) dA
  double right_core = 0.0;   // |integral|^{1/(2d+1)}
  double implied_constant = 0.0;
  double consistency_bound = 0.0;  // 4 * 2 * 3^{2d}
  bool same_weights = false;
  int difference_bidegree = -1;  // max index with a nonzero Q1-Q2 coefficient
  std::string message;
};

/// Both sides of the two-domain estimate for quadrature domains with
/// matching nodes; throws when the recovered nodes differ beyond 1e-8.
TwoDomainsReport two_domains_experiment(const DomainSpec& omega1, const DomainSpec& omega2,
                                        int moment_order = 4, int grid_n = 512);

struct RationalApproxReport {
  double max_left = 0.0;
  double right_core = 0.0;
  double implied_c5 = 0.0;
  double l1 = 0.0;
};

/// |E_g - Q/(P conj P)| at sample points on |z| = R for a perturbed
/// quadrature-domain indicator, against |int_D Q (chi - g)|^{1/(2d+1)}.
RationalApproxReport rational_approx_experiment(const DiskSpec& base, const Perturbation& pert,
                                                double R, int n_points, int grid_n = 512);

}  // namespace momentshape
