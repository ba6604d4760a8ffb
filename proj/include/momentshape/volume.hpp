#pragma once

// Admissible multi-index search and Monte Carlo estimation of polynomial
// sublevel-set volumes on cubes.

#include <cstdint>
#include <vector>

#include "momentshape/real_poly.hpp"

namespace momentshape {

/// Support index that is strictly lexicographically maximal under some
/// coordinate permutation; controls the Holder exponent 1/(|alpha|+1).
struct AdmissibleIndex {
  std::vector<int> alpha;
  std::vector<int> sigma;  // witnessing coordinate order (0-based)
  double coeff = 0.0;
  int total_degree = 0;
};

/// Exhaustive search over support x permutations (n <= 6). Every nonzero
/// polynomial yields at least one admissible index.
std::vector<AdmissibleIndex> find_admissible(const RealPoly& p);

struct McEstimate {
  double volume = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  long long hits = 0;
};

/// Uniform sampling of {|p| < delta} on [-r, r]^n. Sampling is chunked with
/// per-chunk substreams, so the result is reproducible for a fixed seed
/// independently of how chunks are scheduled.
McEstimate mc_sublevel_volume(const RealPoly& p, double delta, double r, long long samples,
                              std::uint64_t seed);

struct VolRatioRow {
  double delta = 0.0;
  double volume = 0.0;
  double std_error = 0.0;
  double ratio = 0.0;  // volume / delta^{1/|alpha|}
};

struct VolRatioTable {
  std::vector<VolRatioRow> rows;
  double delta_threshold = 0.0;  // |p_alpha| / (4d)^{|alpha|}
  bool bounded = false;          // no monotone blow-up of the ratio as delta -> 0
  double max_ratio = 0.0;
};

/// Ratio table vol(V_delta ∩ Δ)/delta^{1/|alpha|} over a delta grid. The
/// bound only holds for delta < |p_alpha|/(4d)^{|alpha|}; larger deltas are
/// rejected.
VolRatioTable check_vol_ratio(const RealPoly& p, const AdmissibleIndex& alpha,
                              const std::vector<double>& deltas, long long samples,
                              std::uint64_t seed, double r = 1.0);

}  // namespace momentshape
