#include "covdist/metrics.hpp"

#include <cmath>
#include <sstream>

namespace covdist {

SymMatrixd require_psd(const SymMatrixd& a, const char* what) {
  const SymMatrixd sym = make_symmetric(a);
  const auto eig = sym_eig(sym);
  const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  if (eig.values(0) < -1e-8 * scale) {
    std::ostringstream os;
    os << what << ": matrix is not positive semidefinite (min eigenvalue " << eig.values(0) << ")";
    throw DomainError(os.str());
  }
  if (eig.values(0) >= 0) return sym;
  return psd_project(sym);
}

DeltaReport delta(const SymMatrixd& a, const SymMatrixd& b, const StructureTag& structure,
                  const SolverOptions& opts) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("delta: dimension mismatch");
  }
  if (structure.kind == StructureKind::BandedToeplitz) {
    throw InputError("delta: structure must be full or toeplitz");
  }
  SymMatrixd pa = require_psd(a, "delta (first argument)");
  SymMatrixd pb = require_psd(b, "delta (second argument)");
  if (structure.kind == StructureKind::Toeplitz) {
    if (!is_toeplitz(pa, 1e-8) || !is_toeplitz(pb, 1e-8)) {
      throw InputError("delta: toeplitz variant requires Toeplitz inputs");
    }
  }

  const double n = static_cast<double>(a.rows());
  const SolveReport sol = solve_trace_min({{pa, pb}, structure}, opts);

  DeltaReport rep;
  rep.tau = sol.objective;
  rep.delta = 2.0 * rep.tau - pa.trace() / n - pb.trace() / n;
  rep.m_star = sol.m_star;
  rep.q_a = sol.m_star - pa;
  rep.q_b = sol.m_star - pb;
  rep.status = sol.status;
  rep.iterations = sol.iterations;
  rep.primal_residual = sol.primal_residual;
  rep.dual_residual = sol.dual_residual;
  return rep;
}

double vn_divergence(const SymMatrixd& a, const SymMatrixd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError("vn_divergence: dimension mismatch");
  }
  const SymMatrixd pa = require_psd(a, "vn_divergence (first argument)");
  const SymMatrixd log_b = matrix_log(make_symmetric(b));

  const auto eig = sym_eig(pa);
  const double cutoff = 1e-12 * eig.values.cwiseAbs().maxCoeff();
  double entropy = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lam = eig.values(i);
    if (lam > cutoff) entropy += lam * std::log(lam);
  }
  return entropy - (pa * log_b).trace();
}

}  // namespace covdist
