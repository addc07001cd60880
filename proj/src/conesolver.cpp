#include "covdist/conesolver.hpp"

#include <cmath>
#include <sstream>

#include "admm.hpp"

namespace covdist {

using detail::ConicProgram;
using detail::PsdBlock;
using detail::svec;
using detail::svec_size;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string to_string(const StructureTag& tag) {
  switch (tag.kind) {
    case StructureKind::Full:
      return "full";
    case StructureKind::Toeplitz:
      return "toeplitz";
    case StructureKind::BandedToeplitz:
      return "banded_toeplitz(" + std::to_string(tag.bandwidth) + ")";
  }
  return "unknown";
}

std::string to_string(SolveStatus status) {
  return status == SolveStatus::Converged ? "converged" : "max_iters";
}

Vectord GramCertificate::sequence() const {
  const Index m = gram.rows();
  Vectord r = Vectord::Zero(m);
  for (Index k = 0; k < m; ++k)
    for (Index i = 0; i + k < m; ++i) r(k) += gram(i, i + k);
  return r;
}

bool GramCertificate::valid_for(const Vectord& r, double seq_tol, double psd_tol) const {
  const Vectord seq = sequence();
  const Index m = seq.size();
  for (Index k = 0; k < r.size(); ++k) {
    const double expect = k < m ? seq(k) : 0.0;
    if (std::abs(expect - r(k)) > seq_tol * std::max(1.0, std::abs(r(0)))) return false;
  }
  return min_eig(gram) >= -psd_tol * std::max(1.0, gram.trace());
}

namespace {

// One decision variable of a structured program, described by the matrix it
// contributes to each role. Unused roles hold zero matrices.
struct Atom {
  MatrixXd m;  // contribution to the dominating matrix M
  MatrixXd r;  // contribution to the approximant R
  MatrixXd q;  // contribution to the Gram matrix
};

MatrixXd stack_columns(const std::vector<VectorXd>& cols) {
  MatrixXd out(cols.front().size(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Index>(j)) = cols[j];
  return out;
}

template <typename Fn>
PsdBlock make_block(const std::vector<Atom>& atoms, Index dim, const MatrixXd& offset, Fn&& part) {
  std::vector<VectorXd> cols;
  cols.reserve(atoms.size());
  for (const auto& a : atoms) cols.push_back(svec(part(a)));
  return {dim, stack_columns(cols), svec(offset)};
}

// Superdiagonal sum k of a square matrix.
double diag_sum(const MatrixXd& s, Index k) {
  double acc = 0;
  for (Index i = 0; i + k < s.rows(); ++i) acc += s(i, i + k);
  return acc;
}

MatrixXd banded_toeplitz(const VectorXd& r, Index n) {
  VectorXd row = VectorXd::Zero(n);
  row.head(std::min<Index>(n, r.size())) = r.head(std::min<Index>(n, r.size()));
  return toeplitz_from(row);
}

void check_square(const MatrixXd& a, Index n, const char* what) {
  if (a.rows() != n || a.cols() != n) {
    std::ostringstream os;
    os << what << ": expected " << n << "x" << n << ", got " << a.rows() << "x" << a.cols();
    throw InputError(os.str());
  }
  if (!a.allFinite()) throw InputError(std::string(what) + ": non-finite entries");
}

void check_structure(const StructureTag& tag, Index n) {
  if (tag.kind == StructureKind::BandedToeplitz && (tag.bandwidth < 0 || tag.bandwidth >= n)) {
    throw InputError("banded structure requires 0 <= q < n");
  }
}

MatrixXd assemble(const std::vector<Atom>& atoms, const VectorXd& x, MatrixXd Atom::*role) {
  MatrixXd acc = MatrixXd::Zero((atoms.front().*role).rows(), (atoms.front().*role).cols());
  for (std::size_t j = 0; j < atoms.size(); ++j) acc += x(static_cast<Index>(j)) * (atoms[j].*role);
  return (acc + acc.transpose()) / 2.0;
}

void copy_stats(const detail::AdmmOutcome& o, SolveReport& rep) {
  rep.status = o.status;
  rep.iterations = o.iterations;
  rep.primal_residual = o.primal_residual;
  rep.dual_residual = o.dual_residual;
}

}  // namespace

SolveReport solve_trace_min(const TraceMinProblem& problem, const SolverOptions& opts) {
  if (problem.shifts.empty()) throw InputError("solve_trace_min: no shifts");
  const Index n = problem.shifts.front().rows();
  double scale = 0;
  for (const auto& s : problem.shifts) {
    check_square(s, n, "solve_trace_min shift");
    scale = std::max(scale, s.norm());
  }
  check_structure(problem.m_structure, n);

  std::vector<Atom> atoms;
  for (auto& b : detail::structure_basis(problem.m_structure, n)) {
    atoms.push_back({std::move(b), MatrixXd(), MatrixXd()});
  }

  ConicProgram p;
  p.num_vars = static_cast<Index>(atoms.size());
  p.cost.resize(p.num_vars);
  for (Index j = 0; j < p.num_vars; ++j) p.cost(j) = atoms[j].m.trace() / double(n);
  for (const auto& s : problem.shifts) {
    const MatrixXd sym = (s + s.transpose()) / 2.0;
    p.blocks.push_back(make_block(atoms, n, -sym, [](const Atom& a) { return a.m; }));
  }

  const auto outcome = detail::run_admm(p, opts, scale);
  SolveReport rep;
  copy_stats(outcome, rep);
  rep.m_star = assemble(atoms, outcome.x, &Atom::m);
  rep.objective = rep.m_star.trace() / double(n);
  return rep;
}

SolveReport solve_nearest_structured(const NearestStructuredProblem& problem,
                                     const SolverOptions& opts) {
  const Index n = problem.target.rows();
  check_square(problem.target, n, "solve_nearest_structured target");
  check_structure(problem.r_structure, n);
  check_structure(problem.m_structure, n);
  if (problem.r_structure.kind == StructureKind::Full) {
    throw InputError("approximant structure must be toeplitz or banded_toeplitz");
  }
  if (problem.ma_gram && problem.r_structure.kind != StructureKind::BandedToeplitz) {
    throw InputError("Gram coupling requires a banded_toeplitz approximant");
  }
  const MatrixXd target = (problem.target + problem.target.transpose()) / 2.0;
  const MatrixXd zero_n = MatrixXd::Zero(n, n);

  std::vector<Atom> atoms;
  for (auto& b : detail::structure_basis(problem.m_structure, n)) {
    atoms.push_back({std::move(b), zero_n, MatrixXd()});
  }
  const Index m_vars = static_cast<Index>(atoms.size());
  const Index q = problem.r_structure.bandwidth;
  const Index gram_dim = problem.ma_gram ? q + 1 : 0;
  if (problem.ma_gram) {
    for (auto& g : detail::structure_basis(StructureTag::full(), gram_dim)) {
      VectorXd r(q + 1);
      for (Index k = 0; k <= q; ++k) r(k) = diag_sum(g, k);
      atoms.push_back({zero_n, banded_toeplitz(r, n), std::move(g)});
    }
  } else {
    for (auto& b : detail::structure_basis(problem.r_structure, n)) {
      atoms.push_back({zero_n, std::move(b), MatrixXd()});
    }
  }
  if (problem.ma_gram) {
    for (auto& a : atoms) {
      if (a.q.size() == 0) a.q = MatrixXd::Zero(gram_dim, gram_dim);
    }
  }

  ConicProgram p;
  p.num_vars = static_cast<Index>(atoms.size());
  p.cost.resize(p.num_vars);
  for (Index j = 0; j < p.num_vars; ++j) {
    p.cost(j) = (2.0 * atoms[j].m.trace() - atoms[j].r.trace()) / double(n);
  }
  p.cost_constant = -target.trace() / double(n);
  p.blocks.push_back(make_block(atoms, n, -target, [](const Atom& a) { return a.m; }));
  p.blocks.push_back(make_block(atoms, n, zero_n, [](const Atom& a) { return MatrixXd(a.m - a.r); }));
  p.blocks.push_back(make_block(atoms, n, zero_n, [](const Atom& a) { return a.r; }));
  if (problem.ma_gram) {
    p.blocks.push_back(make_block(atoms, gram_dim, MatrixXd::Zero(gram_dim, gram_dim),
                                  [](const Atom& a) { return a.q; }));
  }
  if (problem.match_trace) {
    p.eq_matrix.resize(1, p.num_vars);
    for (Index j = 0; j < p.num_vars; ++j) p.eq_matrix(0, j) = atoms[j].r.trace();
    p.eq_rhs = VectorXd::Constant(1, target.trace());
  }

  const auto outcome = detail::run_admm(p, opts, target.norm());
  SolveReport rep;
  copy_stats(outcome, rep);
  rep.m_star = assemble(atoms, outcome.x, &Atom::m);
  rep.r_star = assemble(atoms, outcome.x, &Atom::r);
  if (problem.ma_gram) {
    const VectorXd xq = outcome.x.tail(p.num_vars - m_vars);
    std::vector<Atom> gram_atoms(atoms.begin() + m_vars, atoms.end());
    rep.gram = GramCertificate{assemble(gram_atoms, xq, &Atom::q)};
  }
  rep.objective = (2.0 * rep.m_star.trace() - target.trace() - rep.r_star->trace()) / double(n);
  return rep;
}

SolveReport solve_gram_feasibility(const Vectord& r, const SolverOptions& opts) {
  if (r.size() < 1) throw InputError("solve_gram_feasibility: empty sequence");
  if (!r.allFinite()) throw InputError("solve_gram_feasibility: non-finite sequence");
  const Index m = r.size();

  std::vector<Atom> atoms;
  for (auto& g : detail::structure_basis(StructureTag::full(), m)) {
    atoms.push_back({MatrixXd(), MatrixXd(), std::move(g)});
  }

  ConicProgram p;
  p.num_vars = static_cast<Index>(atoms.size());
  p.cost = VectorXd::Zero(p.num_vars);
  p.quad_weight = 1.0;
  p.eq_matrix.resize(m, p.num_vars);
  for (Index k = 0; k < m; ++k)
    for (Index j = 0; j < p.num_vars; ++j) p.eq_matrix(k, j) = diag_sum(atoms[j].q, k);
  p.eq_rhs = r;
  p.blocks.push_back(make_block(atoms, m, MatrixXd::Zero(m, m), [](const Atom& a) { return a.q; }));

  const auto outcome = detail::run_admm(p, opts, r.norm());
  SolveReport rep;
  copy_stats(outcome, rep);
  rep.m_star = assemble(atoms, outcome.x, &Atom::q);
  rep.gram = GramCertificate{rep.m_star};
  rep.objective = outcome.objective;
  return rep;
}

}  // namespace covdist
