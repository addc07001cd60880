#pragma once

// Spectral measures on [-pi, pi): a density sampled on a uniform midpoint
// grid plus a finite list of spectral lines. Densities are normalized so that
// r_k = (1/2pi) int f(theta) cos(k theta) dtheta + sum_atoms mass cos(k theta).

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "covdist/conesolver.hpp"
#include "covdist/symmat.hpp"

namespace covdist {

struct SpectralLine {
  double theta = 0;  // in [-pi, pi)
  double mass = 0;   // >= 0
};

class SpectralMeasure {
 public:
  static constexpr std::size_t kDefaultGrid = 4096;

  SpectralMeasure() : SpectralMeasure(kDefaultGrid) {}
  explicit SpectralMeasure(std::size_t grid_size);

  /// Validates and symmetrizes (values at +theta/-theta averaged; atoms
  /// mirrored). Throws InputError on a bad grid size or negative entries.
  SpectralMeasure(std::vector<double> values, std::vector<SpectralLine> atoms);

  /// Density f(theta) sampled on the grid, no atoms.
  template <typename Fn>
  static SpectralMeasure from_density(Fn&& f, std::size_t grid_size = kDefaultGrid) {
    std::vector<double> v(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) v[j] = f(grid_point(j, grid_size));
    return SpectralMeasure(std::move(v), {});
  }
  static SpectralMeasure constant(double level, std::size_t grid_size = kDefaultGrid);
  static SpectralMeasure line(double theta, double mass, std::size_t grid_size = kDefaultGrid);

  static double grid_point(std::size_t j, std::size_t grid_size);

  std::size_t grid_size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<SpectralLine>& atoms() const { return atoms_; }

  /// Total mass (1/2pi) int dmu.
  double total_mass() const;

  SpectralMeasure operator+(const SpectralMeasure& other) const;

 private:
  std::vector<double> values_;
  std::vector<SpectralLine> atoms_;
};

struct CovarianceSequence {
  Vectord r;  // r_0 .. r_{n-1}

  SymMatrixd toeplitz() const { return toeplitz_from(r); }
};

struct MaModel {
  std::vector<double> coeffs;  // b_0 .. b_q
};

struct TimeSeries {
  std::vector<double> samples;
  std::uint64_t seed = 0;
};

struct Perturbations {
  SpectralMeasure psi;       // max(g - f, 0), added to f
  SpectralMeasure psi_hat;   // max(f - g, 0), added to g
  SpectralMeasure envelope;  // max(f, g)
};

Perturbations optimal_perturbations(const SpectralMeasure& f, const SpectralMeasure& g);

/// (1/2pi) int |f - g| dtheta plus the total discrepancy of the lines.
double l1_distance(const SpectralMeasure& f, const SpectralMeasure& g);

struct NormalizedRatios {
  double total = 0;      // int (psi + psi_hat) / int envelope
  double pointwise = 0;  // (1/2pi) int (psi + psi_hat)/envelope dtheta
};

NormalizedRatios normalized_ratios(const SpectralMeasure& f, const SpectralMeasure& g);

CovarianceSequence cov_sequence(const SpectralMeasure& f, int n);

/// r_k = sum_j b_j b_{j+k} for unit-variance white input.
CovarianceSequence ma_autocovariance(const MaModel& model, int n);

/// Standard normal stream: 64-bit Mersenne Twister with Box-Muller, so a
/// seed gives the same draws on every platform.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  double uniform();  // in (0, 1]

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

TimeSeries simulate_ma(const MaModel& model, int length, std::uint64_t seed);

/// Average of the outer products of all length-n sliding windows of y.
SymMatrixd sample_covariance(const TimeSeries& y, int n);

struct ConvergenceRow {
  int n = 0;
  double delta_t = 0;
  double l1 = 0;
  SolveStatus status = SolveStatus::MaxIters;
  int iterations = 0;
  std::optional<std::string> error;
};

/// delta_T between the n x n Toeplitz covariances of f and g, for each n,
/// paired with l1_distance(f, g).
std::vector<ConvergenceRow> convergence_experiment(const SpectralMeasure& f,
                                                   const SpectralMeasure& g,
                                                   const std::vector<int>& n_list,
                                                   const SolverOptions& opts = {});

/// True when the delta_t column is nondecreasing (slack tol) and bounded by l1 + tol.
bool convergence_is_monotone(const std::vector<ConvergenceRow>& rows, double tol = 1e-6);

}  // namespace covdist
