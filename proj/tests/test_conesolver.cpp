#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "covdist/conesolver.hpp"
#include "covdist/errors.hpp"
#include "covdist/metrics.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace covdist;
using namespace covdist::testing;

namespace {

double shift_slack(const SolveReport& rep, const std::vector<SymMatrixd>& shifts) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& s : shifts) {
    worst = std::min(worst, min_eig(rep.m_star - s) / (1.0 + spectral_norm(s)));
  }
  return worst;
}

}  // namespace

TEST(StructureTag, Basics) {
  EXPECT_EQ(to_string(StructureTag::full()), "full");
  EXPECT_EQ(to_string(StructureTag::toeplitz()), "toeplitz");
  EXPECT_EQ(StructureTag::banded(2), StructureTag::banded(2));
  EXPECT_FALSE(StructureTag::banded(1) == StructureTag::banded(2));
  EXPECT_EQ(to_string(SolveStatus::Converged), "converged");
}

TEST(SolveTraceMin, LineVersusHalfLineToeplitz) {
  const SymMatrixd a = SymMatrixd::Ones(3, 3);
  const SymMatrixd b = mat({{1, .5, .5}, {.5, 1, .5}, {.5, .5, 1}});
  const auto rep = solve_trace_min({{a, b}, StructureTag::toeplitz()});
  ASSERT_TRUE(rep.converged());
  EXPECT_NEAR(rep.objective, 4.0 / 3.0, 1e-7);
  EXPECT_NEAR(rep.m_star(0, 0), 4.0 / 3.0, 1e-6);
  EXPECT_TRUE(is_toeplitz(rep.m_star, 1e-12));
  EXPECT_GE(shift_slack(rep, {a, b}), -1e-7);
}

TEST(SolveTraceMin, IdenticalShifts) {
  std::mt19937_64 rng(1);
  const SymMatrixd a = random_psd(rng, 4);
  const auto rep = solve_trace_min({{a, a}});
  ASSERT_TRUE(rep.converged());
  EXPECT_NEAR(rep.objective, a.trace() / 4, 1e-7);
  EXPECT_LE(max_abs(rep.m_star - a), 1e-5);
}

TEST(SolveTraceMin, DiagonalElementwiseMax) {
  const auto rep = solve_trace_min({{mat({{1, 0}, {0, 3}}), mat({{2, 0}, {0, 1}})}});
  ASSERT_TRUE(rep.converged());
  EXPECT_NEAR(rep.objective, 2.5, 1e-7);
  EXPECT_LE(max_abs(rep.m_star - mat({{2, 0}, {0, 3}})), 1e-5);
}

TEST(SolveTraceMin, DimensionMismatch) {
  EXPECT_THROW(solve_trace_min({{SymMatrixd::Identity(2, 2), SymMatrixd::Identity(3, 3)}}), InputError);
}

TEST(SolveTraceMin, Deterministic) {
  std::mt19937_64 rng(2);
  const SymMatrixd a = random_psd(rng, 5);
  const SymMatrixd b = random_psd(rng, 5);
  const auto r1 = solve_trace_min({{a, b}});
  const auto r2 = solve_trace_min({{a, b}});
  EXPECT_EQ(r1.objective, r2.objective);
  EXPECT_EQ(r1.iterations, r2.iterations);
  EXPECT_EQ(r1.m_star, r2.m_star);
  EXPECT_EQ(r1.primal_residual, r2.primal_residual);
}

TEST(SolveTraceMin, FeasibleAtExit) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 15; ++t) {
    const Eigen::Index n = 2 + t % 5;
    const std::vector<SymMatrixd> shifts{random_psd(rng, n), random_psd(rng, n, 1)};
    const auto rep = solve_trace_min({shifts, t % 2 ? StructureTag::toeplitz() : StructureTag::full()});
    ASSERT_TRUE(rep.converged()) << "instance " << t;
    EXPECT_GE(shift_slack(rep, shifts), -1e-7) << "instance " << t;
    EXPECT_LE(rep.primal_residual, 1e-9 * (1 + shifts[0].norm() + shifts[1].norm()));
  }
}

TEST(SolveTraceMin, MatchesGridOracle2x2) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 25; ++t) {
    const SymMatrixd a = random_psd(rng, 2, 1 + t % 2);
    const SymMatrixd b = random_psd(rng, 2);
    const auto rep = solve_trace_min({{a, b}});
    ASSERT_TRUE(rep.converged());
    const double oracle = grid_tau(a, b);
    EXPECT_NEAR(rep.objective, oracle, 5e-3) << "instance " << t;
    // The grid only visits feasible points, so it can never beat the optimum.
    EXPECT_GE(oracle, rep.objective - 1e-7);
  }
}

TEST(SolveTraceMin, ToeplitzNeverDecreasesObjective) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 15; ++t) {
    const Eigen::Index n = 2 + t % 5;
    const SymMatrixd a = random_psd_toeplitz(rng, n);
    const SymMatrixd b = random_psd_toeplitz(rng, n);
    const auto full = solve_trace_min({{a, b}});
    const auto toep = solve_trace_min({{a, b}, StructureTag::toeplitz()});
    EXPECT_GE(toep.objective, full.objective - 1e-7) << "instance " << t;
  }
}

TEST(SolveNearestStructured, ToeplitzTargetIsItsOwnApproximant) {
  const SymMatrixd target = toeplitz_from(vec({3, 2, 1, 0}));
  const auto rep = solve_nearest_structured({target});
  ASSERT_TRUE(rep.converged());
  EXPECT_NEAR(rep.objective, 0.0, 1e-6);
  ASSERT_TRUE(rep.r_star);
  EXPECT_LE(max_abs(*rep.r_star - target), 1e-4);
}

TEST(SolveNearestStructured, ObjectiveAgreesWithMetric) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 6; ++t) {
    const Eigen::Index n = 3 + t % 3;
    const SymMatrixd target = random_psd(rng, n);
    NearestStructuredProblem p{target};
    if (t % 2) {
      p.r_structure = StructureTag::banded(1);
      p.ma_gram = true;
    }
    const auto rep = solve_nearest_structured(p);
    ASSERT_TRUE(rep.converged());
    ASSERT_TRUE(rep.r_star);
    EXPECT_TRUE(is_toeplitz(*rep.r_star, 1e-10));
    EXPECT_NEAR(rep.objective, delta(target, *rep.r_star).delta, 1e-6) << "instance " << t;
    if (p.ma_gram) {
      ASSERT_TRUE(rep.gram);
      EXPECT_TRUE(rep.gram->valid_for(toeplitz_row(*rep.r_star).head(2)));
      EXPECT_LE(toeplitz_row(*rep.r_star).tail(n - 2).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(SolveNearestStructured, MatchTrace) {
  std::mt19937_64 rng(7);
  const SymMatrixd target = random_psd(rng, 4);
  NearestStructuredProblem p{target};
  p.match_trace = true;
  const auto rep = solve_nearest_structured(p);
  ASSERT_TRUE(rep.converged());
  EXPECT_NEAR(rep.r_star->trace(), target.trace(), 1e-7 * target.trace());
}

TEST(SolveNearestStructured, BandTooWide) {
  NearestStructuredProblem p{SymMatrixd::Identity(3, 3), StructureTag::banded(3), true};
  EXPECT_THROW(solve_nearest_structured(p), InputError);
}

TEST(SolveGramFeasibility, OnesCertificate) {
  const auto rep = solve_gram_feasibility(vec({3, 2, 1}));
  ASSERT_TRUE(rep.converged());
  ASSERT_TRUE(rep.gram);
  EXPECT_LE(max_abs(rep.gram->gram - SymMatrixd::Ones(3, 3)), 1e-6);
  EXPECT_LE(max_abs(rep.gram->sequence() - vec({3, 2, 1})), 1e-7);
}

TEST(SolveGramFeasibility, InfeasibleSequenceDoesNotConverge) {
  // 1 + 2 * 0.9 cos(theta) dips below zero.
  SolverOptions opts;
  opts.max_iters = 3000;
  const auto rep = solve_gram_feasibility(vec({1, .9}), opts);
  EXPECT_FALSE(rep.converged() && rep.gram && rep.gram->valid_for(vec({1, .9})));
}

TEST(GramCertificate, Validity) {
  GramCertificate c{SymMatrixd::Ones(3, 3)};
  EXPECT_TRUE(c.valid_for(vec({3, 2, 1})));
  EXPECT_FALSE(c.valid_for(vec({3, 2, 1.1})));
  GramCertificate bad{mat({{1, 2}, {2, 1}})};
  EXPECT_FALSE(bad.valid_for(bad.sequence()));
}
