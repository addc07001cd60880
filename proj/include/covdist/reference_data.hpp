#pragma once

// Reference matrices used by the reproduction checks and the
// acceptance suite.

#include "covdist/symmat.hpp"

namespace covdist::reference {

/// Covariance of a unit spectral line at theta = 0: the 3x3 all-ones matrix.
inline SymMatrixd line_covariance_3x3() { return SymMatrixd::Ones(3, 3); }

/// Toeplitz(1, 1/2, 1/2): half line at 0 plus flat density of level 1/2.
inline SymMatrixd half_line_covariance_3x3() {
  SymMatrixd m(3, 3);
  m << 1, .5, .5, .5, 1, .5, .5, .5, 1;
  return m;
}

/// Positive-definite non-Toeplitz 3x3 estimate (scaled by 1/3).
inline SymMatrixd estimate_3x3() {
  SymMatrixd m(3, 3);
  m << 1.1, .9, 1.05, .9, .8, .9, 1.05, .9, 1.1;
  return m / 3.0;
}

/// Reference von Neumann-divergence Toeplitz approximant of estimate_3x3().
inline SymMatrixd vn_approximant_3x3() {
  SymMatrixd m(3, 3);
  m << 1, .942, .957, .942, 1, .942, .957, .942, 1;
  return m / 3.0;
}

/// Reference delta-optimal Toeplitz approximant of estimate_3x3().
inline SymMatrixd delta_approximant_3x3() {
  SymMatrixd m(3, 3);
  m << 1.1, .9, 1.05, .9, 1.1, .9, 1.05, .9, 1.1;
  return m / 3.0;
}

/// 5x5 sample covariance of one realization of y_k = w_k + w_{k-1} + w_{k-2}
/// over 101 samples.
inline SymMatrixd ma2_sample_covariance_5x5() {
  SymMatrixd m(5, 5);
  m << 4.0362, 2.9053, 1.8043, 0.4042, 0.1718,  //
      2.9053, 4.0547, 2.9268, 1.7945, 0.3800,   //
      1.8043, 2.9268, 4.0792, 2.9143, 1.7733,   //
      0.4042, 1.7945, 2.9143, 4.0819, 2.9421,   //
      0.1718, 0.3800, 1.7733, 2.9421, 4.0237;
  return m;
}

/// Reference Toeplitz approximant of ma2_sample_covariance_5x5() and its distance.
inline Vectord toeplitz_approximant_row_5() {
  Vectord r(5);
  r << 4.0677, 2.9237, 1.7912, 0.3979, 0.1822;
  return r;
}
inline constexpr double kToeplitzApproximantDelta = 0.0308;

/// Reference MA(2) approximant of ma2_sample_covariance_5x5() and its distance.
inline Vectord ma2_approximant_row_5() {
  Vectord r(5);
  r << 3.9945, 2.1588, 0.5693, 0, 0;
  return r;
}
inline constexpr double kMa2ApproximantDelta = 1.2161;

}  // namespace covdist::reference
