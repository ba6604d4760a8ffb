#include "momentshape/domains.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>

#include "momentshape/poly.hpp"

namespace momentshape {

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Distance from a point to a closed axis-aligned rectangle.
double rect_distance(Complex z, double x0, double x1, double y0, double y1) {
  double dx = std::max({x0 - z.real(), 0.0, z.real() - x1});
  double dy = std::max({y0 - z.imag(), 0.0, z.imag() - y1});
  return std::hypot(dx, dy);
}

double orient(Complex a, Complex b, Complex c) {
  return (b.real() - a.real()) * (c.imag() - a.imag()) -
         (b.imag() - a.imag()) * (c.real() - a.real());
}

bool segments_cross(Complex p1, Complex p2, Complex q1, Complex q2) {
  double o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  double o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  return o1 * o2 < 0.0 && o3 * o4 < 0.0;
}

// Injectivity on the closed disk is equivalent to the boundary image being
// a simple curve (argument principle); checked on a polygonal sampling.
void check_injective_on_disk(const CVector& phi) {
  if (phi.size() < 2 || phi[phi.size() - 1] == Complex(0.0))
    throw std::invalid_argument("conformal map must have degree >= 1");
  const int k = 720;
  std::vector<Complex> image(k);
  for (int i = 0; i < k; ++i) {
    double th = 2.0 * kPi * i / k;
    image[i] = poly::eval(phi, Complex(std::cos(th), std::sin(th)));
  }
  for (int i = 0; i < k; ++i) {
    Complex p1 = image[i], p2 = image[(i + 1) % k];
    for (int j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;  // adjacent around the wrap
      if (segments_cross(p1, p2, image[j], image[(j + 1) % k]))
        throw std::invalid_argument("conformal map is not injective on the closed disk");
    }
  }
}

}  // namespace

void validate(const DomainSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DiskSpec>) {
          if (!(s.radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
          if (std::abs(s.center) + s.radius > 1.0 + 1e-12)
            std::cerr << "momentshape: warning: disk not contained in the unit disk\n";
        } else if constexpr (std::is_same_v<T, ConformalSpec>) {
          check_injective_on_disk(s.phi);
        } else if constexpr (std::is_same_v<T, IntervalUnionSpec>) {
          double prev = -1.0 - 1e-15;
          for (const auto& [a, b] : s.intervals) {
            if (!(a < b)) throw std::invalid_argument("interval endpoints must satisfy a < b");
            if (a < prev) throw std::invalid_argument("intervals must be sorted and disjoint");
            prev = b;
          }
          if (!s.intervals.empty() &&
              (s.intervals.front().first < -1.0 || s.intervals.back().second > 1.0))
            throw std::invalid_argument("intervals must lie inside [-1, 1]");
        } else if constexpr (std::is_same_v<T, SublevelSpec>) {
          s.poly.validate();
        }
      },
      spec);
}

ShadeFunction::ShadeFunction(int n, BoundingBox box) : n_(n), box_(box) {
  if (n < 2) throw std::invalid_argument("ShadeFunction: grid resolution must be >= 2");
  if (!(box.width() > 0.0) || !(box.height() > 0.0))
    throw std::invalid_argument("ShadeFunction: empty bounding box");
  v_ = RMatrix::Zero(n, n);
}

ShadeFunction& ShadeFunction::operator=(const ShadeFunction& o) {
  n_ = o.n_;
  box_ = o.box_;
  v_ = o.v_;
  cache_dirty_.store(true, std::memory_order_relaxed);
  return *this;
}

void ShadeFunction::set_value(int i, int j, double g) {
  if (!(g >= 0.0 && g <= 1.0))
    throw std::invalid_argument("ShadeFunction: sample outside [0, 1]");
  v_(i, j) = g;
  cache_dirty_.store(true, std::memory_order_relaxed);
}

void ShadeFunction::rebuild_boundary_cache() const {
  boundary_cells_.clear();
  auto empty = [&](int i, int j) {
    return i < 0 || j < 0 || i >= n_ || j >= n_ || v_(i, j) <= 0.0;
  };
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (v_(i, j) <= 0.0) continue;
      if (empty(i - 1, j) || empty(i + 1, j) || empty(i, j - 1) || empty(i, j + 1))
        boundary_cells_.emplace_back(box_.x0 + i * cell_width(), box_.y0 + j * cell_height());
    }
}

double ShadeFunction::distance_to_support(Complex z) const {
  const double hx = cell_width(), hy = cell_height();
  // Cell containing z (when inside the box) settles the interior case.
  int ci = static_cast<int>(std::floor((z.real() - box_.x0) / hx));
  int cj = static_cast<int>(std::floor((z.imag() - box_.y0) / hy));
  if (ci >= 0 && ci < n_ && cj >= 0 && cj < n_ && v_(ci, cj) > 0.0) return 0.0;

  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (cache_dirty_.load(std::memory_order_relaxed)) {
    rebuild_boundary_cache();
    cache_dirty_.store(false, std::memory_order_relaxed);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [x0, y0] : boundary_cells_)
    best = std::min(best, rect_distance(z, x0, x0 + hx, y0, y0 + hy));
  return best;
}

bool ShadeFunction::support_inside_unit_disk() const {
  const double hx = cell_width(), hy = cell_height();
  const double reach = 0.5 * std::hypot(hx, hy);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (v_(i, j) > 0.0 && std::abs(cell_center(i, j)) + reach > 1.0) return false;
  return true;
}

double l1_distance(const ShadeFunction& f, const ShadeFunction& g) {
  if (f.n() != g.n() || f.box().x0 != g.box().x0 || f.box().x1 != g.box().x1 ||
      f.box().y0 != g.box().y0 || f.box().y1 != g.box().y1)
    throw std::invalid_argument("l1_distance: shades must share grid and box");
  return (f.values() - g.values()).cwiseAbs().sum() * f.cell_area();
}

std::string to_string(MomentProvenance p) {
  switch (p) {
    case MomentProvenance::kClosedForm: return "closed-form";
    case MomentProvenance::kBoundaryIntegral: return "boundary-integral";
    case MomentProvenance::kGridQuadrature: return "grid-quadrature";
  }
  return "unknown";
}

bool MomentTable2D::is_hermitian(double tol) const {
  double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  return (s - s.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

MomentTable2D disk_moments(Complex a, double r, int d) {
  if (!(r > 0.0)) throw std::invalid_argument("disk_moments: radius must be positive");
  MomentTable2D out;
  out.d = d;
  out.provenance = MomentProvenance::kClosedForm;
  out.s = CMatrix::Zero(d + 1, d + 1);

  // Centered moments int_{D(0,r)} z^i conj(z)^i dA = pi r^{2i+2} / (i+1).
  std::vector<double> centered(d + 1);
  for (int i = 0; i <= d; ++i) centered[i] = kPi * std::pow(r, 2 * i + 2) / (i + 1);

  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l) {
      Complex acc = 0.0;
      for (int i = 0; i <= std::min(k, l); ++i)
        acc += binomial(k, i) * binomial(l, i) * poly::cpow(a, k - i) *
               poly::cpow(std::conj(a), l - i) * centered[i];
      out.s(k, l) = acc;
    }
  return out;
}

MomentTable2D conformal_moments(const CVector& phi, int d) {
  check_injective_on_disk(phi);
  MomentTable2D out;
  out.d = d;
  out.provenance = MomentProvenance::kClosedForm;
  out.s = CMatrix::Zero(d + 1, d + 1);

  const CVector dphi = poly::derivative(phi);
  std::vector<CVector> f(d + 1);
  for (int k = 0; k <= d; ++k) f[k] = poly::multiply(poly::pow(phi, k), dphi);

  // int_D F conj(G) dA = sum_m F_m conj(G_m) pi/(m+1).
  for (int k = 0; k <= d; ++k)
    for (int l = 0; l <= d; ++l) {
      Complex acc = 0.0;
      Eigen::Index terms = std::min(f[k].size(), f[l].size());
      for (Eigen::Index m = 0; m < terms; ++m)
        acc += f[k][m] * std::conj(f[l][m]) * (kPi / static_cast<double>(m + 1));
      out.s(k, l) = acc;
    }
  return out;
}

MomentTable2D grid_moments(const ShadeFunction& g, int d) {
  if (!g.support_inside_unit_disk())
    std::cerr << "momentshape: warning: shade support extends beyond the closed unit disk\n";

  const int n = g.n();
  std::vector<CMatrix> row_sums(n, CMatrix::Zero(d + 1, d + 1));
  detail::parallel_rows(n, [&](int i) {
    CMatrix acc = CMatrix::Zero(d + 1, d + 1);
    CVector zp(d + 1), wp(d + 1);
    for (int j = 0; j < n; ++j) {
      double gij = g.value(i, j);
      if (gij == 0.0) continue;
      Complex z = g.cell_center(i, j);
      zp[0] = 1.0;
      wp[0] = 1.0;
      for (int k = 1; k <= d; ++k) {
        zp[k] = zp[k - 1] * z;
        wp[k] = wp[k - 1] * std::conj(z);
      }
      for (int k = 0; k <= d; ++k)
        for (int l = 0; l <= d; ++l) acc(k, l) += gij * zp[k] * wp[l];
    }
    row_sums[i] = acc;
  });

  MomentTable2D out;
  out.d = d;
  out.provenance = MomentProvenance::kGridQuadrature;
  out.s = CMatrix::Zero(d + 1, d + 1);
  for (int i = 0; i < n; ++i) out.s += row_sums[i];
  out.s *= g.cell_area();
  return out;
}

MomentTable1D interval_moments(const IntervalUnionSpec& spec, int m) {
  validate(DomainSpec{spec});
  MomentTable1D out;
  out.m = m;
  out.s = RVector::Zero(m + 1);
  for (int k = 0; k <= m; ++k) {
    double acc = 0.0;
    for (const auto& [a, b] : spec.intervals)
      acc += (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
    out.s[k] = acc;
  }
  return out;
}

namespace {

BoundingBox default_box(const DomainSpec& spec) {
  if (const auto* c = std::get_if<ConformalSpec>(&spec)) {
    double radius = 1.0;
    for (int i = 0; i < 360; ++i) {
      double th = 2.0 * kPi * i / 360;
      radius = std::max(radius, std::abs(poly::eval(c->phi, {std::cos(th), std::sin(th)})));
    }
    radius = 1.05 * radius;
    return {-radius, radius, -radius, radius};
  }
  return {-1.0, 1.0, -1.0, 1.0};
}

}  // namespace

bool conformal_contains(const CVector& phi, Complex z) {
  CVector shifted = phi;
  shifted[0] -= z;
  if (shifted.size() == 2) return std::abs(-shifted[0] / shifted[1]) < 1.0;
  auto rr = poly::roots(shifted, 200, 1e-9);
  for (Eigen::Index i = 0; i < rr.roots.size(); ++i)
    if (std::abs(rr.roots[i]) < 1.0) return true;
  return false;
}

ShadeFunction sample_shade(const DomainSpec& spec, int n) {
  return sample_shade(spec, n, default_box(spec));
}

ShadeFunction sample_shade(const DomainSpec& spec, int n, BoundingBox box) {
  validate(spec);
  ShadeFunction g(n, box);
  if (std::holds_alternative<IntervalUnionSpec>(spec))
    throw std::invalid_argument("sample_shade: interval unions have no 2D shade");

  detail::parallel_rows(n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      Complex z = g.cell_center(i, j);
      bool inside = false;
      if (const auto* disk = std::get_if<DiskSpec>(&spec)) {
        inside = std::abs(z - disk->center) < disk->radius;
      } else if (const auto* conf = std::get_if<ConformalSpec>(&spec)) {
        inside = conformal_contains(conf->phi, z);
      } else if (const auto* sub = std::get_if<SublevelSpec>(&spec)) {
        if (sub->poly.n != 2)
          throw std::invalid_argument("sample_shade: sublevel shade needs n = 2");
        double xy[2] = {z.real(), z.imag()};
        inside = sub->poly.eval(xy) >= 0.0 && std::abs(z.real()) <= 1.0 &&
                 std::abs(z.imag()) <= 1.0;
      }
      if (inside) g.set_value(i, j, 1.0);
    }
  });
  return g;
}

ShadeFunction sample_shade_perturbed(const DiskSpec& base, const Perturbation& pert, int n,
                                     BoundingBox box) {
  validate(DomainSpec{base});
  ShadeFunction g(n, box);
  const double eps = pert.epsilon;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex z = g.cell_center(i, j);
      double value = 0.0;
      switch (pert.family) {
        case Perturbation::Family::kBoundaryDilation:
          value = std::abs(z - base.center) < base.radius + eps ? 1.0 : 0.0;
          break;
        case Perturbation::Family::kTranslation:
          value = std::abs(z - base.center - eps) < base.radius ? 1.0 : 0.0;
          break;
        case Perturbation::Family::kGraySmudge: {
          value = std::abs(z - base.center) < base.radius ? 1.0 : 0.0;
          bool in_square = std::abs(z.real() - base.center.real()) < 0.5 * base.radius &&
                           std::abs(z.imag() - base.center.imag()) < 0.5 * base.radius;
          if (value > 0.0 && in_square) value = std::max(0.0, value - eps);
          break;
        }
      }
      if (value > 0.0) g.set_value(i, j, value);
    }
  return g;
}

double perturbation_l1(const DiskSpec& base, const Perturbation& pert) {
  const double r = base.radius, eps = pert.epsilon;
  switch (pert.family) {
    case Perturbation::Family::kBoundaryDilation:
      return kPi * ((r + eps) * (r + eps) - r * r);
    case Perturbation::Family::kTranslation: {
      if (eps >= 2.0 * r) return 2.0 * kPi * r * r;
      double lens = 2.0 * r * r * std::acos(eps / (2.0 * r)) -
                    0.5 * eps * std::sqrt(4.0 * r * r - eps * eps);
      return 2.0 * kPi * r * r - 2.0 * lens;
    }
    case Perturbation::Family::kGraySmudge:
      return eps * r * r;
  }
  return 0.0;
}

ShadeFunction random_shade(int n, std::uint64_t seed, BoundingBox box) {
  std::mt19937_64 rng(detail::mix_seed(seed, 0));
  struct Blob {
    Complex center;
    double radius;
    double level;
  };
  std::vector<Blob> blobs(3);
  for (auto& b : blobs) {
    double angle = 2.0 * kPi * uniform01(rng);
    double dist = 0.45 * uniform01(rng);
    b.center = Complex(dist * std::cos(angle), dist * std::sin(angle));
    b.radius = 0.1 + 0.2 * uniform01(rng);
    b.level = 0.3 + 0.7 * uniform01(rng);
  }
  ShadeFunction g(n, box);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex z = g.cell_center(i, j);
      double v = 0.0;
      for (const auto& b : blobs)
        if (std::abs(z - b.center) < b.radius) v += b.level;
      if (v > 0.0) g.set_value(i, j, std::min(1.0, v));
    }
  return g;
}

}  // namespace momentshape
