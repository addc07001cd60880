#pragma once

// Structured approximation of sample covariances: nearest Toeplitz and
// nearest moving-average covariance in the trace-minimization distance, the
// least-squares Toeplitz projection, and the von Neumann divergence
// minimizer over trace-matched Toeplitz matrices.

#include <optional>
#include <string>
#include <vector>

#include "covdist/conesolver.hpp"
#include "covdist/spectra.hpp"
#include "covdist/symmat.hpp"

namespace covdist {

struct ApproxDiagnostics {
  SolveStatus status = SolveStatus::Converged;
  int iterations = 0;
  double primal_residual = 0;
  double dual_residual = 0;
  double gradient_norm = 0;  // von Neumann mode only
  double min_eig = 0;        // of the approximant
  std::vector<double> objective_history;  // von Neumann mode: value at each accepted iterate
  std::string note;
};

struct ApproxResult {
  SymMatrixd r;
  double distance = 0;
  std::optional<GramCertificate> certificate;
  ApproxDiagnostics diagnostics;
};

struct DeltaApproxOptions {
  bool match_trace = false;
  /// Constrain the dominating matrix to be Toeplitz as well (delta_T).
  bool toeplitz_dominant = false;
  SolverOptions solver{};
};

ApproxResult nearest_toeplitz_delta(const SymMatrixd& a, const DeltaApproxOptions& opts = {});
ApproxResult nearest_ma_delta(const SymMatrixd& a, int q, const DeltaApproxOptions& opts = {});

/// Diagonal averaging; distance is the Frobenius error. The result may be indefinite.
ApproxResult nearest_toeplitz_ls(const SymMatrixd& a);

struct VnOptions {
  double grad_tol = 1e-8;  // relative to max(1, |A|_F)
  int max_iters = 20000;
};

/// Minimizes trace(A (log A - log R)) over Toeplitz R > 0 with trace(R) = trace(A)
/// by projected gradient with Armijo backtracking.
ApproxResult vn_nearest_toeplitz(const SymMatrixd& a, const VnOptions& opts = {});

struct MaVerdict {
  bool feasible = false;
  bool gram_feasible = false;
  bool grid_nonnegative = false;
  double grid_min = 0;  // minimum of r_0 + 2 sum r_k cos(k theta) on the grid
  std::optional<GramCertificate> certificate;
};

/// Whether r_0..r_{len-1} is the autocovariance of an MA(q) process.
MaVerdict sequence_is_ma(const CovarianceSequence& r, int q, const SolverOptions& opts = {});

}  // namespace covdist
