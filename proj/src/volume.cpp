#include "momentshape/volume.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "momentshape/common.hpp"

namespace momentshape {

namespace {

// alpha beats beta under the permuted coordinate order: either strictly
// greater in the first coordinate, or strictly greater at the first
// position where they differ.
bool lex_dominates(const std::vector<int>& alpha, const std::vector<int>& beta,
                   const std::vector<int>& sigma) {
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    int a = alpha[sigma[k]];
    int b = beta[sigma[k]];
    if (a > b) return true;
    if (a < b) return false;
  }
  return false;
}

}  // namespace

std::vector<AdmissibleIndex> find_admissible(const RealPoly& p) {
  p.validate();
  if (p.is_zero()) throw std::invalid_argument("find_admissible: zero polynomial");
  if (p.n > 6) throw std::invalid_argument("find_admissible: dimension limited to 6");

  std::vector<const RealPoly::Term*> support;
  for (const auto& t : p.terms)
    if (t.coeff != 0.0) support.push_back(&t);

  std::vector<int> sigma(p.n);
  std::iota(sigma.begin(), sigma.end(), 0);

  std::vector<AdmissibleIndex> out;
  auto already_found = [&](const std::vector<int>& alpha) {
    return std::any_of(out.begin(), out.end(),
                       [&](const AdmissibleIndex& a) { return a.alpha == alpha; });
  };

  do {
    for (const auto* cand : support) {
      // beta = alpha is excluded: the strict-domination condition is
      // unsatisfiable against itself.
      bool admissible = std::all_of(support.begin(), support.end(), [&](const auto* other) {
        return other == cand || lex_dominates(cand->alpha, other->alpha, sigma);
      });
      if (admissible && !already_found(cand->alpha)) {
        AdmissibleIndex idx;
        idx.alpha = cand->alpha;
        idx.sigma = sigma;
        idx.coeff = cand->coeff;
        idx.total_degree = std::accumulate(cand->alpha.begin(), cand->alpha.end(), 0);
        out.push_back(std::move(idx));
      }
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

namespace {

constexpr long long kChunk = 1 << 16;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

McEstimate mc_sublevel_volume(const RealPoly& p, double delta, double r, long long samples,
                              std::uint64_t seed) {
  if (!(delta > 0.0)) throw std::invalid_argument("mc_sublevel_volume: delta must be positive");
  if (!(r > 0.0)) throw std::invalid_argument("mc_sublevel_volume: r must be positive");
  p.validate();

  // Chunked substreams: chunk c draws from its own generator, so the count
  // is reproducible whether chunks run serially or in parallel.
  const long long chunks = (samples + kChunk - 1) / kChunk;
  std::vector<long long> chunk_hits(chunks, 0);
  detail::parallel_rows(static_cast<int>(chunks), [&](int c) {
    std::mt19937_64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(c)));
    const long long count = std::min<long long>(kChunk, samples - static_cast<long long>(c) * kChunk);
    std::vector<double> x(p.n);
    long long local = 0;
    for (long long i = 0; i < count; ++i) {
      for (int k = 0; k < p.n; ++k) x[k] = r * (2.0 * uniform01(rng) - 1.0);
      if (std::abs(p.eval(x)) < delta) ++local;
    }
    chunk_hits[c] = local;
  });
  long long hits = 0;
  for (long long h : chunk_hits) hits += h;

  McEstimate out;
  out.samples = samples;
  out.hits = hits;
  const double cube = std::pow(2.0 * r, p.n);
  const double phat = static_cast<double>(hits) / static_cast<double>(samples);
  out.volume = cube * phat;
  out.std_error = cube * std::sqrt(phat * (1.0 - phat) / static_cast<double>(samples));
  return out;
}

VolRatioTable check_vol_ratio(const RealPoly& p, const AdmissibleIndex& alpha,
                              const std::vector<double>& deltas, long long samples,
                              std::uint64_t seed, double r) {
  VolRatioTable table;
  const int d = p.degree();
  const int order = alpha.total_degree;
  if (order < 1)
    throw std::invalid_argument("check_vol_ratio: admissible index must have positive degree");
  table.delta_threshold = std::abs(alpha.coeff) / std::pow(4.0 * d, order);

  std::uint64_t stream = 0;
  for (double delta : deltas) {
    if (!(delta < table.delta_threshold))
      throw std::invalid_argument(
          "check_vol_ratio: delta above the validity threshold |p_a|/(4d)^{|a|}");
    auto mc = mc_sublevel_volume(p, delta, r, samples, detail::mix_seed(seed, ++stream));
    VolRatioRow row;
    row.delta = delta;
    row.volume = mc.volume;
    row.std_error = mc.std_error;
    row.ratio = mc.volume / std::pow(delta, 1.0 / order);
    table.rows.push_back(row);
    table.max_ratio = std::max(table.max_ratio, row.ratio);
  }

  // Bounded means the ratio does not keep growing as delta decreases;
  // grids are expected sorted descending in delta.
  table.bounded = true;
  for (std::size_t i = 2; i < table.rows.size(); ++i)
    if (table.rows[i].ratio > 2.0 * table.rows[i - 1].ratio &&
        table.rows[i - 1].ratio > 2.0 * table.rows[i - 2].ratio)
      table.bounded = false;
  return table;
}

}  // namespace momentshape
