#include "momentshape/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "momentshape/exptransform.hpp"
#include "momentshape/reconstruct.hpp"
#include "momentshape/volume.hpp"

namespace momentshape {

SampledFunction sample_abs_poly_on_cube(const RealPoly& p, int cells) {
  p.validate();
  if (p.n != 1 && p.n != 2)
    throw std::invalid_argument("sample_abs_poly_on_cube: dim must be 1 or 2");
  if (cells < 2) throw std::invalid_argument("sample_abs_poly_on_cube: cells must be >= 2");

  SampledFunction f;
  f.dim = p.n;
  f.cells = cells;
  const double h = 2.0 / cells;
  f.cell_volume = std::pow(h, p.n);
  f.total_volume = std::pow(2.0, p.n);
  if (p.n == 1) {
    f.values = Eigen::ArrayXd(cells);
    for (int i = 0; i < cells; ++i) {
      double x[1] = {-1.0 + (i + 0.5) * h};
      f.values[i] = std::abs(p.eval(x));
    }
  } else {
    f.values = Eigen::ArrayXd(cells * cells);
    for (int i = 0; i < cells; ++i)
      for (int j = 0; j < cells; ++j) {
        double x[2] = {-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h};
        f.values[i * cells + j] = std::abs(p.eval(x));
      }
  }
  return f;
}

double lambda_f(const SampledFunction& f, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("lambda_f: eps must be positive");
  if (eps > f.total_volume + 1e-12)
    throw std::invalid_argument("lambda_f: eps exceeds the total volume");

  std::vector<double> sorted(f.values.data(), f.values.data() + f.values.size());
  std::sort(sorted.begin(), sorted.end());

  double remaining = eps;
  double acc = 0.0;
  for (double v : sorted) {
    double take = std::min(remaining, f.cell_volume);
    acc += v * take;
    remaining -= take;
    if (remaining <= 0.0) break;
  }
  return acc;
}

namespace {

double positive_part_integral(const SampledFunction& f, double s) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.values.size(); ++i)
    acc += std::max(s - f.values[i], 0.0);
  return acc * f.cell_volume;
}

double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
    double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

FenchelReport fenchel_check(const RealPoly& p, const std::vector<double>& eps_grid,
                            const std::vector<double>& s_grid, int cells) {
  if (p.is_zero()) throw std::invalid_argument("fenchel_check: zero polynomial");
  SampledFunction f = sample_abs_poly_on_cube(p, cells);

  FenchelReport report;
  report.tolerance = 4.0 * (2.0 / cells);  // first-order grid allowance

  for (double eps : eps_grid) {
    double lambda = lambda_f(f, eps);
    for (double s : s_grid) {
      FenchelRow row;
      row.eps = eps;
      row.s = s;
      row.lambda = lambda;
      row.rhs = s * eps - positive_part_integral(f, s);
      row.margin = row.lambda - row.rhs;
      if (row.margin < -report.tolerance) ++report.violations;
      report.rows.push_back(row);
    }
  }

  std::vector<double> xs, ys;
  for (double s : s_grid) {
    xs.push_back(s);
    ys.push_back(positive_part_integral(f, s));
  }
  report.slope = fit_loglog_slope(xs, ys);

  auto admissible = find_admissible(p);
  int min_order = admissible.front().total_degree;
  for (const auto& a : admissible) min_order = std::min(min_order, a.total_degree);
  report.expected_slope = min_order > 0 ? 1.0 + 1.0 / min_order : 0.0;
  return report;
}

double holder_l1_closed_form(HolderConfig::Family family, double eps) {
  switch (family) {
    case HolderConfig::Family::kXyTranslation:
      // chi{xy>=0} against chi{(x-eps)y>=0}: the strip 0 < x < eps flips.
      return 2.0 * eps;
    case HolderConfig::Family::kCircleDilation:
      // hole radius 1/2 dilated to 1/2 + eps.
      return kPi * ((0.5 + eps) * (0.5 + eps) - 0.25);
  }
  return 0.0;
}

double holder_gap_closed_form(HolderConfig::Family family, double eps) {
  switch (family) {
    case HolderConfig::Family::kXyTranslation:
      // |int xy (chi - g)| over the flipped strip.
      return eps * eps / 2.0;
    case HolderConfig::Family::kCircleDilation: {
      // int_{1/2<r<1/2+eps} (r^2 - 1/4) dA in polar form.
      auto primitive = [](double r) { return r * r * r * r / 4.0 - r * r / 8.0; };
      return 2.0 * kPi * (primitive(0.5 + eps) - primitive(0.5));
    }
  }
  return 0.0;
}

HolderExperiment run_holder_experiment(const HolderConfig& cfg) {
  HolderExperiment out;
  out.config = cfg;
  out.poly = cfg.family == HolderConfig::Family::kXyTranslation ? polys::xy()
                                                                : polys::circle(0.25);

  auto admissible = find_admissible(out.poly);
  out.alpha = admissible.front().alpha;
  out.alpha_order = admissible.front().total_degree;
  const double alpha_coeff = std::abs(admissible.front().coeff);
  const int d = out.poly.degree();

  double radius = cfg.validity_radius;
  if (radius <= 0.0)
    radius = std::pow(alpha_coeff, 1.0 / out.alpha_order) / (4.0 * d) * 2.0;

  for (double eps : cfg.eps_grid) {
    HolderRecord rec;
    rec.eps = eps;
    rec.l1 = holder_l1_closed_form(cfg.family, eps);
    rec.gap = holder_gap_closed_form(cfg.family, eps);
    rec.ratio = rec.gap > 0.0 ? std::pow(rec.l1, out.alpha_order + 1) / rec.gap : 0.0;
    rec.in_validity_ball = rec.l1 <= radius;
    if (rec.in_validity_ball) out.max_ratio = std::max(out.max_ratio, rec.ratio);
    out.records.push_back(rec);
  }

  // Bounded: the ratio must not keep inflating as eps shrinks (grid is
  // expected strictly decreasing).
  out.bounded = true;
  const auto& r = out.records;
  for (std::size_t i = 2; i < r.size(); ++i)
    if (r[i].ratio > 1.5 * r[i - 1].ratio && r[i - 1].ratio > 1.5 * r[i - 2].ratio)
      out.bounded = false;

  std::vector<double> xs, ys;
  for (const auto& rec : r) {
    xs.push_back(rec.l1);
    ys.push_back(rec.gap);
  }
  out.slope = fit_loglog_slope(xs, ys);
  return out;
}

double polynomial_moment_gap(const RealPoly& p, const ShadeFunction& f, const ShadeFunction& g) {
  double acc = 0.0;
  for (int i = 0; i < f.n(); ++i)
    for (int j = 0; j < f.n(); ++j) {
      double diff = f.value(i, j) - g.value(i, j);
      if (diff == 0.0) continue;
      Complex z = f.cell_center(i, j);
      double x[2] = {z.real(), z.imag()};
      acc += p.eval(x) * diff;
    }
  return acc * f.cell_area();
}

PerturbBoundRecord check_diagonal_bound(const ShadeFunction& f, const ShadeFunction& g,
                                        const std::vector<Complex>& z_points, double tolerance) {
  PerturbBoundRecord out;
  out.tolerance = tolerance;
  out.l1 = l1_distance(f, g);
  for (Complex z : z_points) {
    double dist = std::min(f.distance_to_support(z), g.distance_to_support(z));
    if (dist < 0.1)
      throw std::invalid_argument("check_diagonal_bound: point closer than 0.1 to the support");
    BoundRow row;
    row.z = z;
    row.left = std::abs(eval_diagonal(f, z) - eval_diagonal(g, z));
    row.right = 2.0 / (kPi * dist * dist) * out.l1;
    row.margin = row.right - row.left;
    if (row.margin < -tolerance) ++out.violations;
    out.rows.push_back(row);
  }
  return out;
}

double bgap_constant(double R) {
  if (!(R > 1.0)) throw std::invalid_argument("bgap_constant: R must exceed 1");
  double c = 2.0 / (kPi * (R - 1.0) * (R - 1.0));
  return c * std::exp(2.0 * c);
}

PerturbBoundRecord check_bgap_bound(const ShadeFunction& f, const ShadeFunction& g, double R,
                                    int d) {
  PerturbBoundRecord out;
  out.l1 = l1_distance(f, g);
  out.tolerance = 0.0;
  const double c3 = bgap_constant(R);
  auto bf = s_to_b(grid_moments(f, d));
  auto bg = s_to_b(grid_moments(g, d));
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l) {
      BoundRow row;
      row.z = Complex(k, l);
      row.left = std::abs(bf.b(k, l) - bg.b(k, l));
      row.right = c3 * std::pow(R, k + l) * out.l1;
      row.margin = row.right - row.left;
      if (row.margin < 0.0) ++out.violations;
      out.rows.push_back(row);
    }
  return out;
}

namespace {

MomentTable2D exact_moments(const DomainSpec& spec, int d) {
  if (const auto* disk = std::get_if<DiskSpec>(&spec))
    return disk_moments(disk->center, disk->radius, d);
  if (const auto* conf = std::get_if<ConformalSpec>(&spec))
    return conformal_moments(conf->phi, d);
  throw std::invalid_argument("two_domains_experiment: spec has no exact moment backend");
}

}  // namespace

TwoDomainsReport two_domains_experiment(const DomainSpec& omega1, const DomainSpec& omega2,
                                        int moment_order, int grid_n) {
  auto rec1 = reconstruct_from_moments(exact_moments(omega1, moment_order));
  auto rec2 = reconstruct_from_moments(exact_moments(omega2, moment_order));
  if (!rec1.node_poly.ok || !rec2.node_poly.ok)
    throw std::runtime_error("two_domains_experiment: reconstruction failed");
  if (rec1.chosen_degree != rec2.chosen_degree)
    throw std::invalid_argument("two_domains_experiment: quadrature orders differ");

  const int d = rec1.chosen_degree;
  CVector n1 = rec1.quadrature.data.nodes;
  CVector n2 = rec2.quadrature.data.nodes;
  if (n1.size() != n2.size())
    throw std::invalid_argument("two_domains_experiment: node counts differ");
  std::vector<Complex> s1(n1.data(), n1.data() + n1.size());
  std::vector<Complex> s2(n2.data(), n2.data() + n2.size());
  auto by_parts = [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  };
  std::sort(s1.begin(), s1.end(), by_parts);
  std::sort(s2.begin(), s2.end(), by_parts);
  for (std::size_t i = 0; i < s1.size(); ++i)
    if (std::abs(s1[i] - s2[i]) > 1e-8)
      throw std::invalid_argument("two_domains_experiment: node mismatch beyond 1e-8");

  HermitianBivarPoly q1(rec1.q_coeffs), q2(rec2.q_coeffs);

  TwoDomainsReport out;
  out.degree = d;
  // sup over |z| < 2 on a polar grid.
  for (int ir = 0; ir < 200; ++ir)
    for (int it = 0; it < 128; ++it) {
      double r = 2.0 * (ir + 0.5) / 200.0;
      double th = 2.0 * kPi * it / 128.0;
      Complex z(r * std::cos(th), r * std::sin(th));
      out.left_sup = std::max(out.left_sup, std::abs(q1.eval_diag(z) - q2.eval_diag(z)));
    }

  ShadeFunction f = sample_shade(omega1, grid_n, {-1.0, 1.0, -1.0, 1.0});
  ShadeFunction g = sample_shade(omega2, grid_n, {-1.0, 1.0, -1.0, 1.0});
  double integral = 0.0;
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j) {
      double diff = f.value(i, j) - g.value(i, j);
      if (diff == 0.0) continue;
      integral += q1.eval_diag(f.cell_center(i, j)) * diff;
    }
  out.integral = integral * f.cell_area();

  out.right_core = std::pow(std::abs(out.integral), 1.0 / (2.0 * d + 1.0));
  out.implied_constant = out.right_core > 0.0 ? out.left_sup / out.right_core : 0.0;
  out.consistency_bound = 4.0 * 2.0 * std::pow(3.0, 2 * d);

  // Same weights force the difference to bidegree (d-2, d-2) or lower.
  const RVector& w1 = rec1.quadrature.data.weights;
  const RVector& w2 = rec2.quadrature.data.weights;
  out.same_weights =
      w1.size() == w2.size() && (w1 - w2).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + w1.cwiseAbs().maxCoeff());

  CMatrix diff = q1.coeffs() - q2.coeffs();
  double scale = std::max(1.0, q1.coeffs().cwiseAbs().maxCoeff());
  out.difference_bidegree = -1;
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l)
      if (std::abs(diff(k, l)) > 1e-9 * scale)
        out.difference_bidegree = std::max({out.difference_bidegree, k, l});
  out.message = out.left_sup == 0.0 && out.right_core == 0.0 ? "identical domains: 0 = 0" : "ok";
  return out;
}

RationalApproxReport rational_approx_experiment(const DiskSpec& base, const Perturbation& pert,
                                                double R, int n_points, int grid_n) {
  auto rec = reconstruct_from_moments(disk_moments(base.center, base.radius, 3));
  if (!rec.node_poly.ok) throw std::runtime_error("rational_approx_experiment: pipeline failed");
  HermitianBivarPoly q(rec.q_coeffs);
  const int d = rec.chosen_degree;

  BoundingBox box{-1.0, 1.0, -1.0, 1.0};
  ShadeFunction chi = sample_shade(DomainSpec{base}, grid_n, box);
  ShadeFunction g = sample_shade_perturbed(base, pert, grid_n, box);

  RationalApproxReport out;
  out.l1 = l1_distance(chi, g);
  for (int i = 0; i < n_points; ++i) {
    double th = 2.0 * kPi * i / n_points;
    Complex z = R * Complex(std::cos(th), std::sin(th));
    Complex w = R * Complex(std::cos(th + 1.0), std::sin(th + 1.0));
    double left = std::abs(eval_polarized(g, z, w) -
                           rational_E(q, rec.node_poly.coeffs, z, w));
    out.max_left = std::max(out.max_left, left);
  }

  double integral = 0.0;
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j) {
      double diff = chi.value(i, j) - g.value(i, j);
      if (diff == 0.0) continue;
      integral += q.eval_diag(chi.cell_center(i, j)) * diff;
    }
  integral *= chi.cell_area();

  out.right_core = std::pow(std::abs(integral), 1.0 / (2.0 * d + 1.0));
  out.implied_c5 = out.right_core > 0.0 ? out.max_left / out.right_core : 0.0;
  return out;
}

}  // namespace momentshape
