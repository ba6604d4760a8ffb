#pragma once

// Test shapes, shade functions and forward moment computation: the
// "measurement" side of the inverse problem.

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "momentshape/common.hpp"
#include "momentshape/real_poly.hpp"

namespace momentshape {

struct DiskSpec {
  Complex center;
  double radius = 0.0;
};

/// Image of the unit disk under a polynomial map, injective on the closed
/// disk (checked numerically on a boundary grid).
struct ConformalSpec {
  CVector phi;  // ascending coefficients, phi(z) = phi[0] + phi[1] z + ...
};

/// Sorted disjoint intervals [a_i, b_i] inside [-1, 1].
struct IntervalUnionSpec {
  std::vector<std::pair<double, double>> intervals;
};

/// Region {p >= 0} intersected with the cube [-1,1]^n.
struct SublevelSpec {
  RealPoly poly;
};

using DomainSpec = std::variant<DiskSpec, ConformalSpec, IntervalUnionSpec, SublevelSpec>;

/// Throws std::invalid_argument when a spec violates its invariants.
void validate(const DomainSpec& spec);

struct BoundingBox {
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

/// Grid-sampled density with values in [0,1] on a regular N x N grid of
/// cell centers over a bounding box.
class ShadeFunction {
 public:
  ShadeFunction(int n, BoundingBox box);

  ShadeFunction(const ShadeFunction& o) : n_(o.n_), box_(o.box_), v_(o.v_) {}
  ShadeFunction& operator=(const ShadeFunction& o);

  int n() const { return n_; }
  const BoundingBox& box() const { return box_; }
  double cell_width() const { return box_.width() / n_; }
  double cell_height() const { return box_.height() / n_; }
  double cell_area() const { return cell_width() * cell_height(); }

  /// Center of cell (i, j): i runs along x, j along y.
  Complex cell_center(int i, int j) const {
    return {box_.x0 + (i + 0.5) * cell_width(), box_.y0 + (j + 0.5) * cell_height()};
  }

  double value(int i, int j) const { return v_(i, j); }
  void set_value(int i, int j, double g);

  const RMatrix& values() const { return v_; }

  double l1_norm() const { return v_.sum() * cell_area(); }

  /// Distance from z to the union of closed cells with positive value;
  /// +infinity when the shade is identically zero.
  double distance_to_support(Complex z) const;

  bool support_inside_unit_disk() const;

 private:
  // For an exterior point the nearest support cell is one with an empty
  // side neighbor, so distance queries only scan those.
  void rebuild_boundary_cache() const;

  int n_;
  BoundingBox box_;
  RMatrix v_;
  mutable std::mutex cache_mutex_;
  mutable std::atomic<bool> cache_dirty_{true};
  mutable std::vector<std::pair<double, double>> boundary_cells_;  // lower-left corners
};

/// L1 distance of two shades on the same grid.
double l1_distance(const ShadeFunction& f, const ShadeFunction& g);

enum class MomentProvenance { kClosedForm, kBoundaryIntegral, kGridQuadrature };

std::string to_string(MomentProvenance p);

/// Complex power moments s_{kl} = int z^k conj(z)^l g dA, 0 <= k, l <= d.
struct MomentTable2D {
  int d = 0;
  CMatrix s;
  MomentProvenance provenance = MomentProvenance::kClosedForm;

  bool is_hermitian(double tol = 1e-10) const;
};

/// Real power moments s_k = int_{-1}^{1} t^k g(t) dt, 0 <= k <= m.
struct MomentTable1D {
  int m = 0;
  RVector s;
};

/// Exact moments of the disk D(a, r) by binomial expansion around the
/// center; s_{kl}(D(0,r)) = pi r^{2k+2}/(k+1) on the diagonal, 0 off it.
MomentTable2D disk_moments(Complex a, double r, int d);

/// Exact moments of phi(unit disk) by expanding
/// int phi^k conj(phi)^l |phi'|^2 dA into centered disk moments.
MomentTable2D conformal_moments(const CVector& phi, int d);

/// Midpoint-rule moments of a sampled shade. Deterministic for a fixed
/// grid; warns (stderr) when the support leaves the closed unit disk.
MomentTable2D grid_moments(const ShadeFunction& g, int d);

MomentTable1D interval_moments(const IntervalUnionSpec& spec, int m);

/// Indicator of the spec sampled at cell centers. The default bounding box
/// is [-1,1]^2, grown automatically for conformal images that spill over.
ShadeFunction sample_shade(const DomainSpec& spec, int n);
ShadeFunction sample_shade(const DomainSpec& spec, int n, BoundingBox box);

/// Perturbation families with closed-form L1 distance from the base disk.
struct Perturbation {
  enum class Family { kBoundaryDilation, kTranslation, kGraySmudge };
  Family family = Family::kBoundaryDilation;
  double epsilon = 0.0;
};

ShadeFunction sample_shade_perturbed(const DiskSpec& base, const Perturbation& pert, int n,
                                     BoundingBox box);

/// Exact L1 distance between the base disk indicator and its perturbation.
double perturbation_l1(const DiskSpec& base, const Perturbation& pert);

/// Deterministic pseudo-random shade: a few gray disks inside |z| <= 0.75.
ShadeFunction random_shade(int n, std::uint64_t seed, BoundingBox box = {-0.8, 0.8, -0.8, 0.8});

/// Membership test used by sample_shade (exposed for tests): true when z
/// has a preimage in the open unit disk under phi.
bool conformal_contains(const CVector& phi, Complex z);

}  // namespace momentshape
