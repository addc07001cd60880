#pragma once

// Trace-minimization distance between covariance matrices and the von
// Neumann (quantum relative entropy) divergence.

#include "covdist/conesolver.hpp"
#include "covdist/symmat.hpp"

namespace covdist {

/// Result of delta(). tau is the normalized trace of the minimal dominating
/// matrix; q_a and q_b are the perturbations reconciling the two inputs,
/// a + q_a == b + q_b == m_star.
struct DeltaReport {
  double tau = 0;
  double delta = 0;
  SymMatrixd m_star;
  SymMatrixd q_a;
  SymMatrixd q_b;
  SolveStatus status = SolveStatus::MaxIters;
  int iterations = 0;
  double primal_residual = 0;
  double dual_residual = 0;

  bool converged() const { return status == SolveStatus::Converged; }
};

/// delta(A, B) = 2 tau(A, B) - trace(A)/n - trace(B)/n, where
/// tau = min { trace(M)/n : M >= A, M >= B, M in structure }.
///
/// Inputs must be PSD (eigenvalues below -1e-8 * scale are rejected, smaller
/// negatives are clipped). With StructureTag::toeplitz() both inputs must be
/// Toeplitz to 1e-8 and the distance is the Toeplitz-constrained variant.
DeltaReport delta(const SymMatrixd& a, const SymMatrixd& b,
                  const StructureTag& structure = StructureTag::full(),
                  const SolverOptions& opts = {});

/// trace(A (log A - log B)), with 0 log 0 = 0 for the singular part of A.
/// B must be positive definite.
double vn_divergence(const SymMatrixd& a, const SymMatrixd& b);

/// Clips eigenvalues in [-1e-8 * scale, 0) and throws DomainError below that.
SymMatrixd require_psd(const SymMatrixd& a, const char* what);

}  // namespace covdist
