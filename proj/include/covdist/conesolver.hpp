#pragma once

// ADMM solver for the trace-minimization problem family: linear objective,
// a handful of PSD constraints, and structural couplings (Toeplitz, banded
// Toeplitz, Gram parameterization of moving-average sequences).

#include <optional>
#include <string>
#include <vector>

#include "covdist/symmat.hpp"

namespace covdist {

enum class StructureKind { Full, Toeplitz, BandedToeplitz };

struct StructureTag {
  StructureKind kind = StructureKind::Full;
  int bandwidth = 0;  // only meaningful for BandedToeplitz

  static StructureTag full() { return {StructureKind::Full, 0}; }
  static StructureTag toeplitz() { return {StructureKind::Toeplitz, 0}; }
  static StructureTag banded(int q) { return {StructureKind::BandedToeplitz, q}; }

  bool operator==(const StructureTag&) const = default;
};

std::string to_string(const StructureTag& tag);

struct SolverOptions {
  double tol = 1e-9;          // relative to (1 + input scale)
  int max_iters = 100000;
  double rho = 1.0;           // initial penalty
  int balance_every = 10;     // residual-balancing period
};

enum class SolveStatus { Converged, MaxIters };

std::string to_string(SolveStatus status);

/// PSD Gram matrix whose superdiagonal sums reproduce r_0..r_q.
struct GramCertificate {
  SymMatrixd gram;

  /// r_k = sum of the k-th superdiagonal.
  Vectord sequence() const;
  bool valid_for(const Vectord& r, double seq_tol = 1e-7, double psd_tol = 1e-8) const;
};

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIters;
  double objective = 0;
  SymMatrixd m_star;
  std::optional<SymMatrixd> r_star;
  std::optional<GramCertificate> gram;
  int iterations = 0;
  double primal_residual = 0;
  double dual_residual = 0;

  bool converged() const { return status == SolveStatus::Converged; }
};

/// minimize (1/n) trace(M)  s.t.  M >= A_i for every shift, M in m_structure.
struct TraceMinProblem {
  std::vector<SymMatrixd> shifts;
  StructureTag m_structure = StructureTag::full();
};

/// Jointly over (M, R):
///   minimize  (2 trace(M) - trace(target) - trace(R)) / n
///   s.t.      M >= target, M >= R, R >= 0, R in r_structure, M in m_structure,
///             optionally R generated by a PSD Gram matrix (moving-average cone)
///             and optionally trace(R) == trace(target).
struct NearestStructuredProblem {
  SymMatrixd target;
  StructureTag r_structure = StructureTag::toeplitz();
  bool ma_gram = false;
  bool match_trace = false;
  StructureTag m_structure = StructureTag::full();
};

SolveReport solve_trace_min(const TraceMinProblem& problem, const SolverOptions& opts = {});
SolveReport solve_nearest_structured(const NearestStructuredProblem& problem,
                                     const SolverOptions& opts = {});

/// Minimum-Frobenius-norm PSD Gram matrix with superdiagonal sums r_0..r_q.
/// m_star holds the Gram matrix; status is MaxIters when none exists.
SolveReport solve_gram_feasibility(const Vectord& r, const SolverOptions& opts = {});

}  // namespace covdist
