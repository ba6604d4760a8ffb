#include "momentshape/markov1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "momentshape/poly.hpp"

namespace momentshape {

RMatrix hankel_from(const ExpCoeffTable1D& t, int m) {
  if (2 * m + 1 > t.t.size())
    throw std::invalid_argument("hankel_from: needs coefficients up to t_{2m}");
  RMatrix h(m + 1, m + 1);
  for (int j = 0; j <= m; ++j)
    for (int l = 0; l <= m; ++l) h(j, l) = t.t[j + l];
  return h;
}

DegeneracyResult hankel_rank(const ExpCoeffTable1D& t, double tol) {
  DegeneracyResult out;
  const int max_m = static_cast<int>((t.t.size() - 1) / 2);
  for (int m = 0; m <= max_m; ++m) {
    auto eig = hermitian_eigen(hankel_from(t, m).cast<Complex>());
    double lo = eig.eigenvalues[0];
    double hi = eig.eigenvalues[m];
    bool zero_block = std::abs(hi) <= 1e-300;
    if (zero_block || lo < tol * hi) {
      out.degenerate = true;
      out.d_min = m;
      out.spectrum = eig.eigenvalues;
      return out;
    }
    out.spectrum = eig.eigenvalues;
  }
  return out;
}

double RationalE1D::eval(double z) const {
  double qv = 0.0, pv = 0.0;
  for (Eigen::Index i = q.size() - 1; i >= 0; --i) qv = qv * z + q[i];
  for (Eigen::Index i = p.size() - 1; i >= 0; --i) pv = pv * z + p[i];
  return qv / pv;
}

PadeResult pade_recover(const ExpCoeffTable1D& t, int d) {
  PadeResult out;
  if (2 * d + 1 > t.t.size()) {
    out.message = "pade_recover: needs 2d+1 coefficients";
    return out;
  }

  if (d == 0) {
    out.ok = true;
    out.rat.q = RVector::Ones(1);
    out.rat.p = RVector::Ones(1);
    out.message = "degree zero: transform is identically 1";
    return out;
  }

  auto eig = hermitian_eigen(hankel_from(t, d).cast<Complex>());
  out.null_gap = eig.eigenvalues[1] - eig.eigenvalues[0];
  double scale = std::max(1.0, std::abs(eig.eigenvalues[d]));
  if (out.null_gap <= 1e-12 * scale)
    out.message = "ill-conditioned null space (eigenvalue gap near zero)";

  CVector v = eig.eigenvectors.col(0);
  if (std::abs(v[d]) < 1e-10) {
    out.message = "pade_recover: null vector has vanishing leading entry";
    return out;
  }

  out.rat.p = RVector(d + 1);
  for (int i = 0; i <= d; ++i) out.rat.p[i] = (v[i] / v[d]).real();
  out.rat.p[d] = 1.0;

  // Q = polynomial part of P(z) (1 - sum t_k z^{-k-1}):
  // Q_m = P_m - sum_{i > m} P_i t_{i-m-1}.
  out.rat.q = RVector(d + 1);
  for (int m = 0; m <= d; ++m) {
    double acc = out.rat.p[m];
    for (int i = m + 1; i <= d; ++i) acc -= out.rat.p[i] * t.t[i - m - 1];
    out.rat.q[m] = acc;
  }
  out.ok = true;
  if (out.message.empty()) out.message = "ok";
  return out;
}

namespace {

struct TaggedRoot {
  double x;
  bool from_p;
};

bool real_roots(const RVector& coeffs, std::vector<double>& out) {
  if (coeffs.size() <= 1) return true;  // constant: no roots
  auto rr = poly::roots(coeffs.cast<Complex>(), 500, 1e-9);
  if (!rr.converged) return false;
  for (Eigen::Index i = 0; i < rr.roots.size(); ++i) {
    if (std::abs(rr.roots[i].imag()) > 1e-7 * (1.0 + std::abs(rr.roots[i]))) return false;
    out.push_back(rr.roots[i].real());
  }
  return true;
}

}  // namespace

EndpointResult endpoints(const RationalE1D& rat) {
  EndpointResult out;
  std::vector<double> pr, qr;
  if (!real_roots(rat.p, pr) || !real_roots(rat.q, qr)) {
    out.message = "non-real roots: input was not an interval-union moment sequence";
    return out;
  }
  if (pr.size() != qr.size()) {
    out.message = "degree mismatch between numerator and denominator";
    return out;
  }
  if (pr.empty()) {
    out.ok = true;
    out.message = "empty union";
    return out;
  }

  std::vector<TaggedRoot> all;
  for (double x : pr) all.push_back({x, true});
  for (double x : qr) all.push_back({x, false});
  std::sort(all.begin(), all.end(), [](const TaggedRoot& a, const TaggedRoot& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.from_p && !b.from_p;  // coincident pair: left endpoint first
  });

  // Genuine interval data interlaces P, Q, P, Q, ...
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool expect_p = i % 2 == 0;
    if (all[i].from_p != expect_p) {
      out.message = "roots do not interlace";
      return out;
    }
  }

  std::vector<std::pair<double, double>> raw;
  for (std::size_t i = 0; i + 1 < all.size(); i += 2) raw.emplace_back(all[i].x, all[i + 1].x);

  // Drop empty intervals and merge near-touching neighbours.
  const double gap_tol = 1e-8;
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : raw) {
    if (iv.second - iv.first <= gap_tol) continue;
    if (!merged.empty() && iv.first - merged.back().second < gap_tol)
      merged.back().second = iv.second;
    else
      merged.push_back(iv);
  }
  out.intervals.intervals = std::move(merged);
  out.ok = true;

  if (!out.intervals.intervals.empty() &&
      (out.intervals.intervals.front().first < -1.0 - 1e-9 ||
       out.intervals.intervals.back().second > 1.0 + 1e-9))
    out.message = "recovered endpoints leave [-1, 1]";
  else
    out.message = out.intervals.intervals.empty() ? "empty union" : "ok";
  return out;
}

Markov1DReport run_markov1d(const MomentTable1D& s, double tol) {
  Markov1DReport report;
  report.t = s_to_t(s);
  report.rank = hankel_rank(report.t, tol);
  const int d = report.rank.degenerate
                    ? report.rank.d_min
                    : static_cast<int>((report.t.t.size() - 1) / 2);
  report.pade = pade_recover(report.t, d);
  if (report.pade.ok) report.ends = endpoints(report.pade.rat);
  return report;
}

}  // namespace momentshape
