#pragma once

// Generic consensus ADMM over a product of PSD cones.
//
//   minimize   c'x + (w/2)|x|^2
//   s.t.       E x = f
//              svec(Z_i) = F_i x + g_i,   Z_i >= 0
//
// svec stacks the lower triangle column by column with off-diagonal entries
// scaled by sqrt(2), so Euclidean norms of svec vectors are Frobenius norms.

#include <vector>

#include <Eigen/Dense>

#include "covdist/conesolver.hpp"

namespace covdist::detail {

Eigen::Index svec_size(Eigen::Index n);
Eigen::VectorXd svec(const Eigen::MatrixXd& s);
Eigen::MatrixXd unsvec(const Eigen::VectorXd& v, Eigen::Index n);

/// Orthonormal (Frobenius) basis of the symmetric matrices carrying `tag`.
std::vector<Eigen::MatrixXd> structure_basis(const StructureTag& tag, Eigen::Index n);

struct PsdBlock {
  Eigen::Index dim = 0;
  Eigen::MatrixXd map;     // svec_size(dim) x num_vars
  Eigen::VectorXd offset;  // svec_size(dim)
};

struct ConicProgram {
  Eigen::Index num_vars = 0;
  Eigen::VectorXd cost;
  double cost_constant = 0;
  double quad_weight = 0;
  Eigen::MatrixXd eq_matrix;  // rows x num_vars, may be empty
  Eigen::VectorXd eq_rhs;
  std::vector<PsdBlock> blocks;
};

struct AdmmOutcome {
  Eigen::VectorXd x;
  SolveStatus status = SolveStatus::MaxIters;
  int iterations = 0;
  double primal_residual = 0;
  double dual_residual = 0;
  double objective = 0;
};

/// `scale` is the magnitude of the problem data; the stopping rule is
/// max(primal, dual) <= tol * (1 + scale).
AdmmOutcome run_admm(const ConicProgram& program, const SolverOptions& opts, double scale);

}  // namespace covdist::detail
