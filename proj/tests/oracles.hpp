#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "covdist/symmat.hpp"

namespace covdist::testing {

// Smallest m22 keeping [[m11, m12], [m12, m22]] - A PSD, found by bisection on
// the 2x2 trace/determinant test.
inline bool psd2(double p, double q, double r) { return p >= 0 && r >= 0 && p * r - q * q >= -1e-15; }

inline double min_m22(const SymMatrixd& a, double m11, double m12, double hi) {
  const double p = m11 - a(0, 0);
  const double q = m12 - a(0, 1);
  if (p < 0) return std::numeric_limits<double>::infinity();
  double lo = a(1, 1);
  if (psd2(p, q, 0)) return lo;
  if (!psd2(p, q, hi - a(1, 1))) return std::numeric_limits<double>::infinity();
  double up = hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + up);
    (psd2(p, q, mid - a(1, 1)) ? up : lo) = mid;
  }
  return up;
}

inline double grid_value(const SymMatrixd& a, const SymMatrixd& b, double m11, double m12, double hi) {
  return 0.5 * (m11 + std::max(min_m22(a, m11, m12, hi), min_m22(b, m11, m12, hi)));
}

// Brute-force tau for 2x2 pairs: coarse grid over (m11, m12) on the bounding
// box, then a 1e-3 grid around the coarse minimizer.
inline double grid_tau(const SymMatrixd& a, const SymMatrixd& b) {
  const double lam = std::max(sym_eig(a).values.maxCoeff(), sym_eig(b).values.maxCoeff());
  const double m11_lo = std::max(a(0, 0), b(0, 0));
  const double m11_hi = 2 * lam + 1e-9;
  const double hi = 2 * lam + 1.0;
  const int coarse = 400;
  const double d11 = (m11_hi - m11_lo) / coarse;
  const double d12 = 2 * lam / coarse;
  double best = std::numeric_limits<double>::infinity();
  double b11 = m11_lo;
  double b12 = 0;
  for (int i = 0; i <= coarse; ++i) {
    for (int j = 0; j <= coarse; ++j) {
      const double m11 = m11_lo + i * d11;
      const double m12 = -lam + j * d12;
      const double v = grid_value(a, b, m11, m12, hi);
      if (v < best) {
        best = v;
        b11 = m11;
        b12 = m12;
      }
    }
  }
  const double step = 1e-3;
  const int w11 = static_cast<int>(std::ceil(2 * d11 / step));
  const int w12 = static_cast<int>(std::ceil(2 * d12 / step));
  for (int i = -w11; i <= w11; ++i) {
    for (int j = -w12; j <= w12; ++j) {
      const double m11 = b11 + i * step;
      if (m11 < m11_lo) continue;
      best = std::min(best, grid_value(a, b, m11, b12 + j * step, hi));
    }
  }
  return best;
}

}  // namespace covdist::testing
