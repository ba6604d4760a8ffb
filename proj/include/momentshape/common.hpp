#pragma once

#include <complex>
#include <cstdint>
#include <functional>

#include <Eigen/Dense>

namespace momentshape {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

namespace detail {

/// Worker count for partitioned loops: hardware concurrency capped by the
/// MOMENTSHAPE_THREADS environment variable (>= 1).
int worker_count();

/// Runs fn(row) for row in [0, n). Rows are distributed over workers; each
/// row is processed serially by exactly one worker, so any per-row output is
/// bit-identical to a serial run regardless of the worker count.
void parallel_rows(int n, const std::function<void(int)>& fn);

/// SplitMix64 step, used to derive independent substream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace detail

}  // namespace momentshape
