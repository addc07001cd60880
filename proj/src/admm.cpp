#include "admm.hpp"

#include <cmath>
#include <stdexcept>

namespace covdist::detail {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

struct ReducedProgram {
  MatrixXd map;      // stacked F N
  VectorXd offset;   // stacked g + F x0
  VectorXd cost;     // N' c
  double constant = 0;
  MatrixXd null_basis;
  VectorXd particular;
};

// Eliminate E x = f by x = x0 + N y with x0 the minimum-norm solution and N
// an orthonormal basis of null(E). Since x0 is orthogonal to range(N), the
// quadratic term splits as |x0|^2 + |y|^2.
ReducedProgram reduce(const ConicProgram& p) {
  const Index d = p.num_vars;
  ReducedProgram out;
  if (p.eq_matrix.rows() == 0) {
    out.null_basis = MatrixXd::Identity(d, d);
    out.particular = VectorXd::Zero(d);
  } else {
    Eigen::JacobiSVD<MatrixXd> svd(p.eq_matrix, Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(1e-12);
    const Index rank = svd.rank();
    out.particular = svd.solve(p.eq_rhs);
    const double mismatch = (p.eq_matrix * out.particular - p.eq_rhs).norm();
    if (mismatch > 1e-9 * (1.0 + p.eq_rhs.norm())) {
      throw InputError("inconsistent equality constraints");
    }
    out.null_basis = svd.matrixV().rightCols(d - rank);
  }

  Index rows = 0;
  for (const auto& b : p.blocks) rows += b.map.rows();
  MatrixXd stacked(rows, d);
  VectorXd offset(rows);
  Index at = 0;
  for (const auto& b : p.blocks) {
    stacked.middleRows(at, b.map.rows()) = b.map;
    offset.segment(at, b.map.rows()) = b.offset;
    at += b.map.rows();
  }
  out.map = stacked * out.null_basis;
  out.offset = offset + stacked * out.particular;
  out.cost = out.null_basis.transpose() * p.cost;
  out.constant = p.cost_constant + p.cost.dot(out.particular) +
                 0.5 * p.quad_weight * out.particular.squaredNorm();
  return out;
}

Eigen::LLT<MatrixXd> factor(const MatrixXd& gram, double rho, double quad_weight) {
  MatrixXd k = rho * gram;
  k.diagonal().array() += quad_weight;
  Eigen::LLT<MatrixXd> llt(k);
  if (llt.info() != Eigen::Success) {
    throw std::logic_error("ADMM: x-update system is singular (unconstrained variable)");
  }
  return llt;
}

}  // namespace

Index svec_size(Index n) { return n * (n + 1) / 2; }

VectorXd svec(const MatrixXd& s) {
  const Index n = s.rows();
  VectorXd v(svec_size(n));
  Index k = 0;
  for (Index j = 0; j < n; ++j) {
    v(k++) = s(j, j);
    for (Index i = j + 1; i < n; ++i) v(k++) = kSqrt2 * 0.5 * (s(i, j) + s(j, i));
  }
  return v;
}

MatrixXd unsvec(const VectorXd& v, Index n) {
  MatrixXd s(n, n);
  Index k = 0;
  for (Index j = 0; j < n; ++j) {
    s(j, j) = v(k++);
    for (Index i = j + 1; i < n; ++i) {
      const double e = v(k++) / kSqrt2;
      s(i, j) = e;
      s(j, i) = e;
    }
  }
  return s;
}

std::vector<MatrixXd> structure_basis(const StructureTag& tag, Index n) {
  std::vector<MatrixXd> basis;
  switch (tag.kind) {
    case StructureKind::Full:
      for (Index j = 0; j < n; ++j) {
        for (Index i = j; i < n; ++i) {
          MatrixXd e = MatrixXd::Zero(n, n);
          if (i == j) {
            e(i, i) = 1.0;
          } else {
            e(i, j) = e(j, i) = 1.0 / kSqrt2;
          }
          basis.push_back(std::move(e));
        }
      }
      break;
    case StructureKind::Toeplitz:
    case StructureKind::BandedToeplitz: {
      const Index q = tag.kind == StructureKind::Toeplitz ? n - 1 : tag.bandwidth;
      if (q < 0 || q >= n) throw InputError("banded structure requires 0 <= q < n");
      for (Index k = 0; k <= q; ++k) {
        MatrixXd t = MatrixXd::Zero(n, n);
        for (Index i = 0; i + k < n; ++i) t(i, i + k) = t(i + k, i) = 1.0;
        t /= t.norm();
        basis.push_back(std::move(t));
      }
      break;
    }
  }
  return basis;
}

AdmmOutcome run_admm(const ConicProgram& p, const SolverOptions& opts, double scale) {
  const ReducedProgram rp = reduce(p);
  const Index dy = rp.null_basis.cols();
  const Index rows = rp.map.rows();

  const MatrixXd gram = rp.map.transpose() * rp.map;
  double rho = opts.rho;
  auto llt = factor(gram, rho, p.quad_weight);

  VectorXd y = VectorXd::Zero(dy);
  VectorXd z = VectorXd::Zero(rows);
  VectorXd u = VectorXd::Zero(rows);
  VectorXd affine(rows);
  const double threshold = opts.tol * (1.0 + scale);

  AdmmOutcome out;
  for (int it = 1; it <= opts.max_iters; ++it) {
    const VectorXd rhs = rho * (rp.map.transpose() * (z - u - rp.offset)) - rp.cost;
    y = llt.solve(rhs);
    affine.noalias() = rp.map * y;
    affine += rp.offset;

    const VectorXd z_prev = z;
    Index at = 0;
    for (const auto& b : p.blocks) {
      const Index len = b.map.rows();
      const VectorXd v = affine.segment(at, len) + u.segment(at, len);
      z.segment(at, len) = svec(psd_project(unsvec(v, b.dim)));
      at += len;
    }
    u += affine - z;

    out.primal_residual = (affine - z).norm();
    out.dual_residual = rho * (rp.map.transpose() * (z - z_prev)).norm();
    out.iterations = it;
    if (std::max(out.primal_residual, out.dual_residual) <= threshold) {
      out.status = SolveStatus::Converged;
      break;
    }
    if (opts.balance_every > 0 && it % opts.balance_every == 0) {
      if (out.primal_residual > 10.0 * out.dual_residual) {
        rho *= 2.0;
        u /= 2.0;
        llt = factor(gram, rho, p.quad_weight);
      } else if (out.dual_residual > 10.0 * out.primal_residual) {
        rho /= 2.0;
        u *= 2.0;
        llt = factor(gram, rho, p.quad_weight);
      }
    }
  }

  out.x = rp.particular + rp.null_basis * y;
  out.objective = rp.cost.dot(y) + rp.constant + 0.5 * p.quad_weight * y.squaredNorm();
  return out;
}

}  // namespace covdist::detail
