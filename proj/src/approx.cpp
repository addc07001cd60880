#include "covdist/approx.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "covdist/metrics.hpp"

namespace covdist {

namespace {

ApproxDiagnostics diagnostics_from(const SolveReport& sol) {
  ApproxDiagnostics d;
  d.status = sol.status;
  d.iterations = sol.iterations;
  d.primal_residual = sol.primal_residual;
  d.dual_residual = sol.dual_residual;
  return d;
}

ApproxResult solve_delta_mode(const SymMatrixd& a, const StructureTag& r_structure, bool ma_gram,
                              const DeltaApproxOptions& opts) {
  const SymMatrixd target = require_psd(a, "approximation target");
  NearestStructuredProblem problem;
  problem.target = target;
  problem.r_structure = r_structure;
  problem.ma_gram = ma_gram;
  problem.match_trace = opts.match_trace;
  problem.m_structure = opts.toeplitz_dominant ? StructureTag::toeplitz() : StructureTag::full();
  const SolveReport sol = solve_nearest_structured(problem, opts.solver);

  ApproxResult out;
  out.r = *sol.r_star;
  out.distance = sol.objective;
  out.certificate = sol.gram;
  out.diagnostics = diagnostics_from(sol);
  out.diagnostics.min_eig = min_eig(out.r);
  return out;
}

// Coefficient-space gradient of k -> <G, T_k>, T_k the 0/1 Toeplitz basis.
Vectord toeplitz_adjoint(const SymMatrixd& g) {
  const Eigen::Index n = g.rows();
  Vectord out = Vectord::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(std::abs(i - j)) += g(i, j);
  return out;
}

// Smooth part of the divergence: -trace(A log R). The entropy of A is a constant.
struct VnObjective {
  const SymMatrixd& a;

  std::optional<double> value(const Vectord& r) const {
    try {
      return -(a * matrix_log(toeplitz_from(r))).trace();
    } catch (const DomainError&) {
      return std::nullopt;
    }
  }

  // Gradient over r_1..r_{n-1}; r_0 is pinned by the trace constraint.
  Vectord gradient(const Vectord& r) const {
    const Vectord full = -toeplitz_adjoint(log_frechet_adjoint(toeplitz_from(r), a));
    return full.tail(full.size() - 1);
  }
};

}  // namespace

ApproxResult nearest_toeplitz_delta(const SymMatrixd& a, const DeltaApproxOptions& opts) {
  return solve_delta_mode(a, StructureTag::toeplitz(), false, opts);
}

ApproxResult nearest_ma_delta(const SymMatrixd& a, int q, const DeltaApproxOptions& opts) {
  if (q < 0 || q >= a.rows()) throw InputError("nearest_ma_delta: need 0 <= q < n");
  return solve_delta_mode(a, StructureTag::banded(q), true, opts);
}

ApproxResult nearest_toeplitz_ls(const SymMatrixd& a) {
  const SymMatrixd sym = make_symmetric(a);
  ApproxResult out;
  out.r = toeplitz_project(sym);
  out.distance = (sym - out.r).norm();
  out.diagnostics.min_eig = min_eig(out.r);
  if (out.diagnostics.min_eig < 0) out.diagnostics.note = "least-squares approximant is indefinite";
  return out;
}

ApproxResult vn_nearest_toeplitz(const SymMatrixd& a, const VnOptions& opts) {
  const SymMatrixd target = require_psd(a, "vn_nearest_toeplitz");
  const Eigen::Index n = target.rows();
  const double trace = target.trace();
  if (!(trace > 0)) throw DomainError("vn_nearest_toeplitz: target has zero trace");

  // Start from the least-squares projection, shifted to be positive definite
  // and rescaled back to the target trace.
  SymMatrixd start = toeplitz_project(target);
  const double lowest = min_eig(start);
  if (lowest <= 1e-12 * spectral_norm(start)) {
    const double eps = std::max(0.0, -lowest) + 1e-6 * trace;
    start.diagonal().array() += eps;
    start *= trace / start.trace();
  }
  Vectord r = start.row(0).transpose();

  const VnObjective obj{target};
  const double grad_tol = opts.grad_tol * std::max(1.0, target.norm());
  ApproxResult out;
  out.diagnostics.status = SolveStatus::MaxIters;

  double f = *obj.value(r);
  Vectord g = obj.gradient(r);
  out.diagnostics.objective_history.push_back(f);
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    if (g.norm() <= grad_tol) {
      out.diagnostics.status = SolveStatus::Converged;
      break;
    }
    if (n == 1) break;

    // Newton direction from a central-difference Hessian of the analytic
    // gradient; steepest descent when that is not a descent direction.
    const Eigen::Index m = n - 1;
    SymMatrixd hess(m, m);
    const double h = 1e-6 * r(0);
    for (Eigen::Index l = 0; l < m; ++l) {
      Vectord up = r, down = r;
      up(l + 1) += h;
      down(l + 1) -= h;
      if (!obj.value(up) || !obj.value(down)) {
        hess.setIdentity();
        break;
      }
      hess.col(l) = (obj.gradient(up) - obj.gradient(down)) / (2 * h);
    }
    hess = (hess + hess.transpose()).eval() / 2.0;
    Vectord dir;
    Eigen::LLT<SymMatrixd> llt(hess);
    if (llt.info() == Eigen::Success) dir = -llt.solve(g);
    if (dir.size() == 0 || !dir.allFinite() || dir.dot(g) >= 0) dir = -g;

    const double slope = dir.dot(g);
    double step = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings, step /= 2) {
      Vectord trial = r;
      trial.tail(m) += step * dir;
      const auto ft = obj.value(trial);
      if (!ft) continue;
      const bool armijo = *ft <= f + 1e-4 * step * slope;
      // Below the rounding floor of f, accept on gradient decrease.
      const bool flat = *ft <= f + 1e-14 * std::max(1.0, std::abs(f));
      if (armijo || flat) {
        const Vectord gt = obj.gradient(trial);
        if (armijo || gt.norm() < g.norm()) {
          r = trial;
          f = *ft;
          g = gt;
          out.diagnostics.objective_history.push_back(f);
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      out.diagnostics.note = "line search failed";
      break;
    }
  }

  out.r = toeplitz_from(r);
  out.distance = vn_divergence(target, out.r);
  out.diagnostics.iterations = it;
  out.diagnostics.gradient_norm = g.norm();
  out.diagnostics.min_eig = min_eig(out.r);
  return out;
}

MaVerdict sequence_is_ma(const CovarianceSequence& seq, int q, const SolverOptions& opts) {
  const Eigen::Index len = seq.r.size();
  if (q < 0 || len < q + 1) throw InputError("sequence_is_ma: need 0 <= q < length");
  const double r0 = seq.r(0);
  MaVerdict out;

  bool tail_zero = true;
  for (Eigen::Index k = q + 1; k < len; ++k) {
    tail_zero = tail_zero && std::abs(seq.r(k)) <= 1e-12 * std::max(1.0, std::abs(r0));
  }

  constexpr std::size_t kGrid = SpectralMeasure::kDefaultGrid;
  out.grid_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < kGrid; ++j) {
    const double theta = SpectralMeasure::grid_point(j, kGrid);
    double p = r0;
    for (Eigen::Index k = 1; k < len; ++k) p += 2.0 * seq.r(k) * std::cos(static_cast<double>(k) * theta);
    out.grid_min = std::min(out.grid_min, p);
  }
  out.grid_nonnegative = out.grid_min >= -1e-9 * std::abs(r0);

  const Vectord head = seq.r.head(q + 1);
  const SolveReport sol = solve_gram_feasibility(head, opts);
  out.gram_feasible = sol.converged() && sol.gram->valid_for(head);
  if (out.gram_feasible) out.certificate = sol.gram;

  out.feasible = tail_zero && out.grid_nonnegative && out.gram_feasible;
  return out;
}

}  // namespace covdist
