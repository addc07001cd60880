#pragma once

// Dense symmetric-matrix kernel. Everything here is a free function over
// Eigen expressions, templated on the scalar type.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "covdist/errors.hpp"

namespace covdist {

template <typename Scalar>
using SymMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using SymMatrixd = SymMatrix<double>;
using Vectord = Vector<double>;

template <typename Scalar>
struct EigDecomposition {
  Vector<Scalar> values;    // ascending
  SymMatrix<Scalar> vectors;  // orthonormal columns
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

/// Returns (A + A^T)/2, warning when the input was asymmetric beyond 1e-8 relative.
template <typename Derived>
SymMatrix<typename Derived::Scalar> make_symmetric(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw InputError("symmetric matrix must be square with n >= 1");
  }
  if (!all_finite(a)) throw InputError("matrix has non-finite entries");
  const Scalar asym = (a - a.transpose()).norm();
  const Scalar scale = std::max(Scalar(1), a.norm());
  if (asym > Scalar(1e-8) * scale) {
    std::ostringstream os;
    os << "input asymmetric by " << asym << " (Frobenius); symmetrizing";
    warn(os.str());
  }
  return (a + a.transpose()) / Scalar(2);
}

template <typename Derived>
EigDecomposition<typename Derived::Scalar> sym_eig(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw InputError("sym_eig: matrix not square");
  if (!all_finite(a)) throw InputError("sym_eig: non-finite entries");
  Eigen::SelfAdjointEigenSolver<SymMatrix<Scalar>> es(a.derived().eval());
  if (es.info() != Eigen::Success) throw DomainError("sym_eig: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

template <typename Derived>
typename Derived::Scalar min_eig(const Eigen::MatrixBase<Derived>& a) {
  return sym_eig(a).values(0);
}

template <typename Derived>
typename Derived::Scalar spectral_norm(const Eigen::MatrixBase<Derived>& a) {
  return sym_eig(a).values.cwiseAbs().maxCoeff();
}

/// Frobenius-nearest PSD matrix: clip negative eigenvalues.
template <typename Derived>
SymMatrix<typename Derived::Scalar> psd_project(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const auto eig = sym_eig(a);
  const Vector<Scalar> clipped = eig.values.cwiseMax(Scalar(0));
  SymMatrix<Scalar> out = eig.vectors * clipped.asDiagonal() * eig.vectors.transpose();
  return (out + out.transpose()) / Scalar(2);
}

/// Replace every diagonal by its mean. Nearest symmetric Toeplitz matrix in Frobenius norm.
template <typename Derived>
SymMatrix<typename Derived::Scalar> toeplitz_project(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = a.rows();
  SymMatrix<Scalar> out(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Scalar sum = 0;
    for (Eigen::Index i = 0; i + k < n; ++i) sum += a(i, i + k) + a(i + k, i);
    const Scalar mean = sum / Scalar(2 * (n - k));
    for (Eigen::Index i = 0; i + k < n; ++i) {
      out(i, i + k) = mean;
      out(i + k, i) = mean;
    }
  }
  return out;
}

/// Symmetric Toeplitz matrix with first row r.
template <typename Derived>
SymMatrix<typename Derived::Scalar> toeplitz_from(const Eigen::MatrixBase<Derived>& r) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = r.size();
  SymMatrix<Scalar> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = r(std::abs(i - j));
  return out;
}

/// First row of a (nominally Toeplitz) matrix, taken as diagonal means.
template <typename Derived>
Vector<typename Derived::Scalar> toeplitz_row(const Eigen::MatrixBase<Derived>& a) {
  return toeplitz_project(a).row(0).transpose();
}

template <typename Derived>
bool is_toeplitz(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar rel_tol) {
  using Scalar = typename Derived::Scalar;
  const Scalar scale = std::max(Scalar(1), a.cwiseAbs().maxCoeff());
  return (a - toeplitz_project(a)).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

namespace detail {

template <typename Scalar>
void require_positive_definite(const EigDecomposition<Scalar>& eig, const char* what) {
  const Scalar norm2 = eig.values.cwiseAbs().maxCoeff();
  if (!(eig.values(0) > Scalar(1e-12) * norm2)) {
    std::ostringstream os;
    os << what << ": matrix not positive definite (min eigenvalue " << eig.values(0) << ")";
    throw DomainError(os.str());
  }
}

}  // namespace detail

template <typename Derived>
SymMatrix<typename Derived::Scalar> matrix_log(const Eigen::MatrixBase<Derived>& a) {
  const auto eig = sym_eig(a);
  detail::require_positive_definite(eig, "matrix_log");
  return eig.vectors * eig.values.array().log().matrix().asDiagonal() * eig.vectors.transpose();
}

template <typename Derived>
SymMatrix<typename Derived::Scalar> matrix_exp(const Eigen::MatrixBase<Derived>& a) {
  const auto eig = sym_eig(a);
  return eig.vectors * eig.values.array().exp().matrix().asDiagonal() * eig.vectors.transpose();
}

/// Gradient of R -> trace(W log R) at R = A, i.e. the adjoint of the Frechet
/// derivative of log applied to W. Computed with divided differences of log
/// in the eigenbasis of A.
template <typename DerivedA, typename DerivedW>
SymMatrix<typename DerivedA::Scalar> log_frechet_adjoint(const Eigen::MatrixBase<DerivedA>& a,
                                                         const Eigen::MatrixBase<DerivedW>& w) {
  using Scalar = typename DerivedA::Scalar;
  if (w.rows() != a.rows() || w.cols() != a.cols()) {
    throw InputError("log_frechet_adjoint: dimension mismatch");
  }
  const auto eig = sym_eig(a);
  detail::require_positive_definite(eig, "log_frechet_adjoint");
  const Eigen::Index n = a.rows();
  const auto& lam = eig.values;
  SymMatrix<Scalar> g = eig.vectors.transpose() * w * eig.vectors;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Scalar gap = lam(i) - lam(j);
      Scalar phi;
      if (std::abs(gap) < Scalar(1e-12) * std::max(lam(i), lam(j))) {
        phi = Scalar(1) / lam(i);
      } else {
        phi = (std::log(lam(i)) - std::log(lam(j))) / gap;
      }
      g(i, j) *= phi;
    }
  }
  SymMatrix<Scalar> out = eig.vectors * g * eig.vectors.transpose();
  return (out + out.transpose()) / Scalar(2);
}

}  // namespace covdist
