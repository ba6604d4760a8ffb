#include "momentshape/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace momentshape {

EigenDecomposition hermitian_eigen(const CMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eigen: matrix not square");
  if (h.rows() > 64) throw std::invalid_argument("hermitian_eigen: size must be <= 64");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (h + h.adjoint().eval()));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigen: eigensolver failed to converge");

  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
    double residual =
        (h * out.eigenvectors.col(i) - out.eigenvalues[i] * out.eigenvectors.col(i)).norm();
    if (residual > 1e-10 * scale)
      throw std::runtime_error("hermitian_eigen: residual bound violated");
  }
  return out;
}

RootResult poly_roots(const CVector& p) { return poly::roots(p, 500, 1e-10); }

DegeneracyResult degeneracy_degree(const ExpCoeffTable2D& b, double tol) {
  if (!b.is_hermitian())
    throw std::invalid_argument("degeneracy_degree: coefficient table is not Hermitian");
  DegeneracyResult out;
  for (int d = 0; d <= b.d; ++d) {
    auto eig = hermitian_eigen(b.b.topLeftCorner(d + 1, d + 1));
    double lo = eig.eigenvalues[0];
    double hi = eig.eigenvalues[d];
    bool zero_block = std::abs(hi) <= 1e-300;
    if (zero_block || lo < tol * hi) {
      out.degenerate = true;
      out.d_min = d;
      out.spectrum = eig.eigenvalues;
      return out;
    }
    out.spectrum = eig.eigenvalues;
  }
  return out;
}

NodePolyResult node_polynomial(const CMatrix& x, NodeMode mode) {
  NodePolyResult out;
  auto eig = hermitian_eigen(x);
  const Eigen::Index d = x.rows() - 1;

  out.min_eigenvalue = eig.eigenvalues[0];
  out.eigen_gap = d >= 1 ? eig.eigenvalues[1] - eig.eigenvalues[0] : 0.0;
  double scale = std::max(1.0, std::abs(eig.eigenvalues[d]));
  out.tie = d >= 1 && out.eigen_gap <= 1e-10 * scale;
  out.raw_eigenvector = eig.eigenvectors.col(0);

  Complex last = out.raw_eigenvector[d];
  if (std::abs(last) < 1e-10) {
    out.ok = false;
    out.message = "node_polynomial: eigenvector cannot be normalized (last entry ~ 0)";
    return out;
  }
  // The left null row (p_0, ..., p_{d-1}, 1) of a Hermitian matrix is the
  // conjugate of the right null column.
  out.coeffs = CVector(d + 1);
  for (Eigen::Index j = 0; j <= d; ++j)
    out.coeffs[j] = std::conj(out.raw_eigenvector[j] / last);
  out.coeffs[d] = 1.0;
  out.ok = true;
  out.message = mode == NodeMode::kNullVector ? "null-vector mode" : "lowest-eigenvector mode";
  if (out.tie) out.message += "; near-minimal eigenvalue tie";
  return out;
}

HermitianBivarPoly extract_Q(const ExpCoeffTable2D& b, const CVector& p) {
  const int d = static_cast<int>(p.size()) - 1;
  if (d > b.d) throw std::invalid_argument("extract_Q: deg P exceeds the table order");

  // q_{mn} = p_m conj(p_n) - sum_{i>m, j>n} p_i conj(p_j) b_{i-m-1, j-n-1}:
  // the nonnegative-power part of P(z) conj(P(w)) (1 - sum b u^{k+1} v^{l+1}).
  CMatrix q(d + 1, d + 1);
  for (int m = 0; m <= d; ++m)
    for (int n = 0; n <= d; ++n) {
      Complex acc = p[m] * std::conj(p[n]);
      for (int i = m + 1; i <= d; ++i)
        for (int j = n + 1; j <= d; ++j)
          acc -= p[i] * std::conj(p[j]) * b.b(i - m - 1, j - n - 1);
      q(m, n) = acc;
    }
  double lead = q(d, d).real();
  if (std::abs(lead) > 0.0 && std::abs(lead - 1.0) > 1e-14) q /= lead;
  return HermitianBivarPoly(q);
}

StructureReport structure_check(const HermitianBivarPoly& q, double tol) {
  const int d = q.degree();
  // P_d is read off row d of Q: q_{dn} = p_d conj(p_n) with p_d = 1.
  CVector p(d + 1);
  for (int n = 0; n <= d; ++n) p[n] = std::conj(q.coeff(d, n));

  StructureReport out;
  out.difference = p * p.adjoint() - q.coeffs();
  auto eig = hermitian_eigen(out.difference);
  out.spectrum = eig.eigenvalues;

  double hi = std::max(out.spectrum[d], 0.0);
  double floor = tol * std::max(hi, 1.0);
  out.psd = out.spectrum[0] >= -floor;
  for (int i = 0; i <= d; ++i) {
    if (out.spectrum[i] > floor) {
      ++out.rank;
      out.lower_polys.push_back(std::sqrt(out.spectrum[i]) * eig.eigenvectors.col(i));
    }
  }
  out.psd = out.psd && out.rank <= d;

  if (d >= 1) {
    out.gamma = std::sqrt(std::max(out.difference(d - 1, d - 1).real(), 0.0));
    out.cauchy_numerator = CVector(d);
    for (int m = 0; m < d; ++m) out.cauchy_numerator[m] = out.difference(m, d - 1);
  }
  return out;
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct Cluster {
  Complex center;
  int multiplicity = 0;
};

std::vector<Cluster> cluster_roots(const CVector& roots, double tol) {
  double scale = 1.0 + roots.cwiseAbs().maxCoeff();
  std::vector<Cluster> clusters;
  std::vector<bool> used(roots.size(), false);
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Complex sum = roots[i];
    int count = 1;
    used[i] = true;
    for (Eigen::Index j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) < tol * scale) {
        sum += roots[j];
        ++count;
        used[j] = true;
      }
    }
    clusters.push_back({sum / static_cast<double>(count), count});
  }
  return clusters;
}

}  // namespace

QuadratureExtraction extract_quadrature_data(const HermitianBivarPoly& q, const CVector& p,
                                             const ExpCoeffTable2D& b, double cluster_tol) {
  QuadratureExtraction out;
  auto st = structure_check(q);
  out.gamma = st.gamma;
  const int d = static_cast<int>(p.size()) - 1;
  const double area = kPi * b.b(0, 0).real();  // s_00 = pi b_00

  out.gamma_sq_error = std::abs(st.gamma * st.gamma - b.b(0, 0).real());

  if (d == 0) {
    out.data.order = 0;
    out.weight_sum_error = std::abs(area);
    out.message = "degree zero: empty quadrature identity";
    return out;
  }

  auto rr = poly_roots(p);
  if (!rr.converged) {
    out.status = QuadratureExtraction::Status::kRootFailure;
    out.message = "root finding did not converge; best iterate reported";
    out.data.nodes = rr.roots;
    return out;
  }

  auto clusters = cluster_roots(rr.roots, cluster_tol);
  const bool simple = std::all_of(clusters.begin(), clusters.end(),
                                  [](const Cluster& c) { return c.multiplicity == 1; });

  // gamma P_{d-1}(z) / P_d(z) = (1/pi) sum_j c_j / (z - a_j): weights by
  // residue matching of the Cauchy-transform numerator B = gamma P_{d-1}.
  const CVector& numer = st.cauchy_numerator;

  if (simple) {
    CVector dp = poly::derivative(p);
    std::vector<Complex> weights(clusters.size());
    for (std::size_t j = 0; j < clusters.size(); ++j)
      weights[j] = kPi * poly::eval(numer, clusters[j].center) /
                   poly::eval(dp, clusters[j].center);

    auto all_positive = [](const std::vector<Complex>& w) {
      return std::all_of(w.begin(), w.end(), [](Complex c) {
        return c.real() > 0.0 && std::abs(c.imag()) <= 1e-8 * (1.0 + std::abs(c));
      });
    };
    if (!all_positive(weights)) {
      std::vector<Complex> flipped(weights);
      for (auto& w : flipped) w = -w;
      if (all_positive(flipped)) {
        weights = flipped;
        out.sign_flipped = true;
      } else {
        out.status = QuadratureExtraction::Status::kInconsistentWeights;
        out.message = "no residue sign yields positive weights";
      }
    }

    out.data.order = d;
    out.data.nodes = CVector(clusters.size());
    out.data.weights = RVector(clusters.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      out.data.nodes[j] = clusters[j].center;
      out.data.weights[j] = weights[j].real();
      sum += weights[j].real();
    }
    out.weight_sum_error = std::abs(sum - area);
    if (out.status == QuadratureExtraction::Status::kOk)
      out.message = "simple nodes";
    return out;
  }

  // Multiplicity case: confluent partial fractions of B / P_d. At a node of
  // multiplicity m, B/G has Taylor coefficients t_0..t_{m-1} with
  // G = prod_{other} (z - a_k)^{m_k}; coefficient of (z-a)^{-(i+1)} is
  // t_{m-1-i}, and the weight of f^(i) is pi t_{m-1-i} / i!.
  out.status = QuadratureExtraction::Status::kMultiplicityCase;
  out.message = "clustered roots: confluent quadrature identity reported";
  double sum0 = 0.0;
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    const int m = clusters[j].multiplicity;
    CVector g = CVector::Ones(1);
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      if (k == j) continue;
      CVector factor(2);
      factor << -clusters[k].center, 1.0;
      for (int rep = 0; rep < clusters[k].multiplicity; ++rep)
        g = poly::multiply(g, factor);
    }
    CVector bs = poly::taylor_shift(numer, clusters[j].center);
    CVector gs = poly::taylor_shift(g, clusters[j].center);
    std::vector<Complex> taylor(m);
    for (int i = 0; i < m; ++i) {
      Complex acc = i < bs.size() ? bs[i] : Complex(0.0);
      for (int u = 0; u < i; ++u)
        if (i - u < gs.size()) acc -= taylor[u] * gs[i - u];
      taylor[i] = acc / gs[0];
    }
    QuadratureExtraction::ConfluentNode node;
    node.node = clusters[j].center;
    node.multiplicity = m;
    node.weights.resize(m);
    for (int i = 0; i < m; ++i) node.weights[i] = kPi * taylor[m - 1 - i] / factorial(i);
    sum0 += node.weights[0].real();
    out.confluent.push_back(std::move(node));
  }
  if (sum0 < 0.0) {
    for (auto& node : out.confluent)
      for (auto& w : node.weights) w = -w;
    sum0 = -sum0;
    out.sign_flipped = true;
  }
  out.weight_sum_error = std::abs(sum0 - area);

  out.data.order = d;
  out.data.nodes = CVector(clusters.size());
  out.data.weights = RVector(clusters.size());
  for (std::size_t j = 0; j < clusters.size(); ++j) {
    out.data.nodes[j] = out.confluent[j].node;
    out.data.weights[j] = out.confluent[j].weights[0].real();
  }
  return out;
}

ReconstructionReport reconstruct_from_b(const ExpCoeffTable2D& b, const ReconstructOptions& opt) {
  ReconstructionReport report;
  const int max_degree = opt.max_degree >= 0 ? std::min(opt.max_degree, b.d) : b.d;

  ExpCoeffTable2D capped{max_degree, b.b.topLeftCorner(max_degree + 1, max_degree + 1)};
  auto deg = degeneracy_degree(capped, opt.tol);
  report.minimal = deg.degenerate;
  report.chosen_degree = deg.degenerate ? deg.d_min : max_degree;
  report.spectrum = deg.spectrum;

  NodeMode mode = opt.mode.value_or(deg.degenerate ? NodeMode::kNullVector
                                                   : NodeMode::kLowestEigen);
  const int d = report.chosen_degree;
  report.node_poly = node_polynomial(b.b.topLeftCorner(d + 1, d + 1), mode);
  if (!report.node_poly.ok) {
    report.message = report.node_poly.message;
    return report;
  }

  HermitianBivarPoly q = extract_Q(capped, report.node_poly.coeffs);
  report.q_coeffs = q.coeffs();
  report.structure = structure_check(q, std::max(opt.tol, 1e-8));
  if (report.structure.psd) {
    report.quadrature = extract_quadrature_data(q, report.node_poly.coeffs, capped);
    report.quadrature_extracted =
        report.quadrature.status == QuadratureExtraction::Status::kOk ||
        report.quadrature.status == QuadratureExtraction::Status::kMultiplicityCase;
    report.message = report.quadrature.message;
  } else {
    report.message = "structure check failed: |P_d|^2 - Q is not PSD of rank <= d";
  }
  return report;
}

ReconstructionReport reconstruct_from_moments(const MomentTable2D& s,
                                              const ReconstructOptions& opt) {
  return reconstruct_from_b(s_to_b(s), opt);
}

std::vector<std::pair<double, double>> level_set_samples(const HermitianBivarPoly& q,
                                                         BoundingBox box, int n) {
  std::vector<std::pair<double, double>> out;
  RMatrix sign(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      Complex z(box.x0 + i * box.width() / n, box.y0 + j * box.height() / n);
      sign(i, j) = q.eval_diag(z) < 0.0 ? -1.0 : 1.0;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s0 = sign(i, j);
      if (sign(i + 1, j) != s0 || sign(i, j + 1) != s0 || sign(i + 1, j + 1) != s0)
        out.emplace_back(box.x0 + (i + 0.5) * box.width() / n,
                         box.y0 + (j + 0.5) * box.height() / n);
    }
  return out;
}

}  // namespace momentshape
