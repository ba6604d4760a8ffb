#pragma once

// Shape-from-moments reconstruction: degeneracy detection on X = [b_{kl}],
// node polynomial from the null / lowest eigenvector, defining polynomial
// by positive-monomial-part extraction, and node/weight recovery.

#include <optional>
#include <string>
#include <vector>

#include "momentshape/common.hpp"
#include "momentshape/exptransform.hpp"
#include "momentshape/hermitian_poly.hpp"
#include "momentshape/poly.hpp"

namespace momentshape {

struct EigenDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // columns matching eigenvalues
};

/// Hermitian eigendecomposition with ascending eigenvalues. Throws on
/// non-Hermitian input (deviation > 1e-10 * norm); each pair is validated
/// against the residual bound ||Hv - lambda v|| <= 1e-10 ||H||.
EigenDecomposition hermitian_eigen(const CMatrix& h);

using poly::RootResult;

/// Roots of a complex polynomial (Durand-Kerner); see poly::roots.
RootResult poly_roots(const CVector& p);

struct DegeneracyResult {
  bool degenerate = false;
  int d_min = -1;
  RVector spectrum;  // of the (d_min+1) block, or the full table if none
};

/// Smallest d whose (d+1)x(d+1) leading block of [b_{kl}] has a relative
/// smallest eigenvalue below tol. Non-degeneracy is a valid outcome.
DegeneracyResult degeneracy_degree(const ExpCoeffTable2D& b, double tol = 1e-8);

enum class NodeMode { kNullVector, kLowestEigen };

struct NodePolyResult {
  bool ok = false;
  CVector coeffs;  // monic, ascending, size d+1
  double min_eigenvalue = 0.0;
  double eigen_gap = 0.0;  // distance to the next eigenvalue
  bool tie = false;        // several near-minimal eigenvalues
  CVector raw_eigenvector;
  std::string message;
};

/// Monic node polynomial read off the eigenvector of the smallest
/// eigenvalue, rescaled so its last entry is 1. A last entry of modulus
/// below 1e-10 is reported (with the raw eigenvector), not thrown.
NodePolyResult node_polynomial(const CMatrix& x, NodeMode mode = NodeMode::kNullVector);

/// Pade-type extraction: the part with nonnegative powers of z and conj(w)
/// of P(z) conj(P(w)) (1 - sum b_{kl} z^{-k-1} conj(w)^{-l-1}).
HermitianBivarPoly extract_Q(const ExpCoeffTable2D& b, const CVector& p);

struct StructureReport {
  bool psd = false;
  int rank = 0;
  RVector spectrum;               // of |P_d|^2 - Q, ascending
  std::vector<CVector> lower_polys;  // scaled eigenvector polynomials
  CMatrix difference;
  double gamma = 0.0;     // sqrt of the (d-1, d-1) entry of the difference
  CVector cauchy_numerator;  // B(z) = gamma P_{d-1}(z), degree d-1
};

/// Verifies the coefficient matrix of |P_d|^2 - Q is PSD of rank <= d,
/// recovering the lower polynomials. Failure is a report, not an exception.
StructureReport structure_check(const HermitianBivarPoly& q, double tol = 1e-8);

struct QuadratureData {
  int order = 0;
  CVector nodes;    // one entry per distinct node
  RVector weights;  // point-evaluation weights (simple case)
};

struct QuadratureExtraction {
  enum class Status { kOk, kMultiplicityCase, kInconsistentWeights, kRootFailure };

  Status status = Status::kOk;
  QuadratureData data;  // populated in the simple-node case
  /// Confluent form: weights[j][i] multiplies f^(i) at nodes[j].
  struct ConfluentNode {
    Complex node;
    int multiplicity = 1;
    std::vector<Complex> weights;
  };
  std::vector<ConfluentNode> confluent;
  double gamma = 0.0;
  bool sign_flipped = false;      // weight signs fixed by the disk convention
  double weight_sum_error = 0.0;  // |sum c_j - s_00|
  double gamma_sq_error = 0.0;    // |gamma^2 - s_00/pi|
  std::string message;
};

/// Nodes from the roots of P_d, gamma and the Cauchy-transform numerator
/// from structure_check, weights by residue matching. Clustered roots are
/// reported as the multiplicity case with confluent weights.
QuadratureExtraction extract_quadrature_data(const HermitianBivarPoly& q, const CVector& p,
                                             const ExpCoeffTable2D& b,
                                             double cluster_tol = 1e-5);

struct ReconstructOptions {
  double tol = 1e-8;
  int max_degree = -1;  // default: the table order
  /// Unset: null-vector mode when the table is degenerate, lowest-eigen
  /// approximation otherwise.
  std::optional<NodeMode> mode;
};

struct ReconstructionReport {
  int chosen_degree = -1;
  bool minimal = false;  // degeneracy detected at chosen_degree
  RVector spectrum;
  NodePolyResult node_poly;
  CMatrix q_coeffs;
  StructureReport structure;
  QuadratureExtraction quadrature;
  bool quadrature_extracted = false;
  std::string message;
};

ReconstructionReport reconstruct_from_b(const ExpCoeffTable2D& b,
                                        const ReconstructOptions& opt = {});
ReconstructionReport reconstruct_from_moments(const MomentTable2D& s,
                                              const ReconstructOptions& opt = {});

/// Grid points adjacent to the zero level set of Q(z, conj(z)): centers of
/// cells whose corners disagree in sign. Rows of (x, y).
std::vector<std::pair<double, double>> level_set_samples(const HermitianBivarPoly& q,
                                                         BoundingBox box, int n);

}  // namespace momentshape
