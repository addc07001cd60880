#include <gtest/gtest.h>

#include <cmath>

#include "covdist/errors.hpp"
#include "covdist/metrics.hpp"
#include "covdist/reference_data.hpp"
#include "test_util.hpp"

using namespace covdist;
using namespace covdist::testing;

namespace {

double d(const SymMatrixd& a, const SymMatrixd& b, const StructureTag& s = StructureTag::full()) {
  const auto rep = delta(a, b, s);
  EXPECT_TRUE(rep.converged());
  return rep.delta;
}

void expect_report_invariants(const SymMatrixd& a, const SymMatrixd& b, const DeltaReport& rep) {
  const double n = static_cast<double>(a.rows());
  EXPECT_LE(max_abs(a + rep.q_a - rep.m_star), 1e-14 * (1 + max_abs(rep.m_star)));
  EXPECT_LE(max_abs(b + rep.q_b - rep.m_star), 1e-14 * (1 + max_abs(rep.m_star)));
  EXPECT_GE(min_eig(rep.q_a), -1e-7 * (1 + spectral_norm(a)));
  EXPECT_GE(min_eig(rep.q_b), -1e-7 * (1 + spectral_norm(b)));
  EXPECT_NEAR(rep.delta, (rep.q_a.trace() + rep.q_b.trace()) / n, 1e-9);
  EXPECT_NEAR(rep.tau, rep.m_star.trace() / n, 1e-12);
  EXPECT_GE(rep.delta, -1e-9);
}

class Axioms : public ::testing::TestWithParam<bool> {
 protected:
  SymMatrixd draw(std::mt19937_64& rng, Eigen::Index n) {
    return GetParam() ? random_psd_toeplitz(rng, n) : random_psd(rng, n, 1 + static_cast<Eigen::Index>(rng() % n));
  }
  StructureTag structure() const { return GetParam() ? StructureTag::toeplitz() : StructureTag::full(); }
};

}  // namespace

TEST(Delta, LineVersusHalfLine) {
  const SymMatrixd a = reference::line_covariance_3x3();
  const SymMatrixd b = reference::half_line_covariance_3x3();
  const auto rep = delta(a, b, StructureTag::toeplitz());
  ASSERT_TRUE(rep.converged());
  EXPECT_NEAR(rep.delta, 2.0 / 3.0, 1e-6);
  EXPECT_NEAR(rep.q_a(0, 0), 1.0 / 3.0, 1e-6);
  expect_report_invariants(a, b, rep);
}

TEST(Delta, DiagonalClosedForm) { EXPECT_NEAR(d(mat({{1, 0}, {0, 3}}), mat({{2, 0}, {0, 1}})), 1.5, 1e-7); }

TEST(Delta, ScalarCase) { EXPECT_NEAR(d(mat({{3}}), mat({{5}})), 2.0, 1e-7); }

TEST(Delta, DominatingApproximant) {
  EXPECT_NEAR(d(reference::estimate_3x3(), reference::delta_approximant_3x3()), 1.0 / 30.0, 1e-7);
}

TEST(Delta, RejectsNonPsd) {
  EXPECT_THROW(delta(mat({{1, 0}, {0, -1}}), SymMatrixd::Identity(2, 2)), DomainError);
}

TEST(Delta, ClipsRoundoffNegatives) {
  const auto rep = delta(mat({{1, 0}, {0, -1e-12}}), mat({{1, 0}, {0, 0}}));
  EXPECT_NEAR(rep.delta, 0.0, 1e-8);
}

TEST(Delta, ToeplitzVariantRequiresToeplitzInputs) {
  EXPECT_THROW(delta(mat({{1, 0}, {0, 2}}), SymMatrixd::Identity(2, 2), StructureTag::toeplitz()), InputError);
  EXPECT_THROW(delta(SymMatrixd::Identity(3, 3), SymMatrixd::Identity(3, 3), StructureTag::banded(1)), InputError);
}

TEST(Delta, DimensionMismatch) {
  EXPECT_THROW(delta(SymMatrixd::Identity(2, 2), SymMatrixd::Identity(3, 3)), InputError);
}

TEST_P(Axioms, SymmetryIdentityTriangle) {
  std::mt19937_64 rng(GetParam() ? 101 : 100);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = 2 + t % 5;
    const SymMatrixd a = draw(rng, n), b = draw(rng, n), c = draw(rng, n);
    const auto ab = delta(a, b, structure());
    ASSERT_TRUE(ab.converged());
    expect_report_invariants(a, b, ab);
    const double ba = d(b, a, structure());
    const double bc = d(b, c, structure());
    const double ac = d(a, c, structure());
    EXPECT_NEAR(ab.delta, ba, 1e-7) << "triple " << t;
    EXPECT_LE(d(a, a, structure()), 1e-7);
    EXPECT_LE(ac, ab.delta + bc + 1e-6) << "triple " << t;
    EXPECT_GT(ab.delta, 1e-6);
  }
}

TEST_P(Axioms, Homogeneity) {
  std::mt19937_64 rng(GetParam() ? 201 : 200);
  for (int t = 0; t < 10; ++t) {
    const Eigen::Index n = 2 + t % 5;
    const SymMatrixd a = draw(rng, n), b = draw(rng, n);
    const double base = d(a, b, structure());
    for (double c : {0.5, 2.0, 10.0}) {
      EXPECT_NEAR(d(c * a, c * b, structure()), c * base, 1e-7 * c * std::max(1.0, base)) << "pair " << t;
    }
  }
}

TEST_P(Axioms, TranslationInvariance) {
  std::mt19937_64 rng(GetParam() ? 301 : 300);
  for (int t = 0; t < 10; ++t) {
    const Eigen::Index n = 2 + t % 5;
    const SymMatrixd a = draw(rng, n), b = draw(rng, n), s = draw(rng, n);
    EXPECT_NEAR(d(a + s, b + s, structure()), d(a, b, structure()), 1e-7) << "pair " << t;
  }
}

TEST_P(Axioms, NestedCase) {
  std::mt19937_64 rng(GetParam() ? 401 : 400);
  for (int t = 0; t < 10; ++t) {
    const Eigen::Index n = 2 + t % 5;
    const SymMatrixd b = draw(rng, n);
    const SymMatrixd a = b + draw(rng, n);
    const double expected = (a.trace() - b.trace()) / static_cast<double>(n);
    EXPECT_NEAR(d(a, b, structure()), expected, 1e-7) << "pair " << t;
  }
}

INSTANTIATE_TEST_SUITE_P(FullAndToeplitz, Axioms, ::testing::Bool(),
                         [](const auto& info) { return info.param ? "Toeplitz" : "Full"; });

TEST(Delta, CommutingCase) {
  std::mt19937_64 rng(500);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int t = 0; t < 10; ++t) {
    const Eigen::Index n = 2 + t % 5;
    const SymMatrixd v = sym_eig(random_symmetric(rng, n)).vectors;
    Vectord lam(n), mu(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      lam(i) = u(rng);
      mu(i) = i % 2 ? 0.0 : u(rng);
    }
    const SymMatrixd a = v * lam.asDiagonal() * v.transpose();
    const SymMatrixd b = v * mu.asDiagonal() * v.transpose();
    EXPECT_NEAR(d(a, b), (lam - mu).cwiseAbs().mean(), 1e-6) << "pair " << t;
  }
}

TEST(VnDivergence, Examples) {
  std::mt19937_64 rng(600);
  const SymMatrixd a = random_spd(rng, 4);
  EXPECT_NEAR(vn_divergence(a, a), 0.0, 1e-12);
  EXPECT_NEAR(vn_divergence(mat({{2}}), mat({{1}})), 2 * std::log(2.0), 1e-14);
  EXPECT_NEAR(vn_divergence(mat({{1, 0}, {0, 2}}), mat({{2, 0}, {0, 1}})), std::log(2.0), 1e-14);
}

TEST(VnDivergence, SingularFirstArgument) {
  EXPECT_NEAR(vn_divergence(mat({{1, 0}, {0, 0}}), mat({{2, 0}, {0, 1}})), -std::log(2.0), 1e-14);
  EXPECT_THROW(vn_divergence(SymMatrixd::Identity(2, 2), mat({{1, 0}, {0, 0}})), DomainError);
}

TEST(VnDivergence, NonnegativeAtEqualTrace) {
  std::mt19937_64 rng(601);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 2 + t % 5;
    const SymMatrixd a = random_spd(rng, n);
    SymMatrixd b = random_spd(rng, n);
    b *= a.trace() / b.trace();
    EXPECT_GE(vn_divergence(a, b), -1e-9);
  }
}
