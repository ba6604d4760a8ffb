#pragma once

// Real polynomials in n variables, stored as a sparse list of
// (multi-index, coefficient) terms.

#include <span>
#include <stdexcept>
#include <vector>

namespace momentshape {

struct RealPoly {
  struct Term {
    std::vector<int> alpha;
    double coeff = 0.0;
  };

  int n = 0;
  std::vector<Term> terms;

  int degree() const {
    int d = 0;
    for (const auto& t : terms) {
      int s = 0;
      for (int a : t.alpha) s += a;
      if (s > d) d = s;
    }
    return d;
  }

  bool is_zero() const {
    for (const auto& t : terms)
      if (t.coeff != 0.0) return false;
    return true;
  }

  double eval(std::span<const double> x) const {
    double acc = 0.0;
    for (const auto& t : terms) {
      double m = t.coeff;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < t.alpha[i]; ++k) m *= x[i];
      acc += m;
    }
    return acc;
  }

  /// Throws on malformed terms (wrong arity, negative exponent, duplicates).
  void validate() const {
    if (n < 1) throw std::invalid_argument("RealPoly: dimension must be >= 1");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (static_cast<int>(terms[i].alpha.size()) != n)
        throw std::invalid_argument("RealPoly: multi-index arity mismatch");
      for (int a : terms[i].alpha)
        if (a < 0) throw std::invalid_argument("RealPoly: negative exponent");
      for (std::size_t j = i + 1; j < terms.size(); ++j)
        if (terms[i].alpha == terms[j].alpha)
          throw std::invalid_argument("RealPoly: duplicate multi-index");
    }
  }
};

/// Convenience builders for the polynomials used throughout the experiments.
namespace polys {

inline RealPoly x_1d() { return RealPoly{1, {{{1}, 1.0}}}; }
inline RealPoly x_2d() { return RealPoly{2, {{{1, 0}, 1.0}}}; }
inline RealPoly x_squared_1d() { return RealPoly{1, {{{2}, 1.0}}}; }
inline RealPoly xy() { return RealPoly{2, {{{1, 1}, 1.0}}}; }
inline RealPoly circle(double c) {
  return RealPoly{2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{0, 0}, -c}}};
}

}  // namespace polys

}  // namespace momentshape
