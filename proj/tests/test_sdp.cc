#include <gtest/gtest.h>

#include <random>

#include "popcert/errors.h"
#include "popcert/json_io.h"
#include "popcert/sdp.h"

namespace popcert {
namespace {

SdpProblem OneByOne(double rhs) {
  SdpProblem p;
  p.blocks = {1};
  p.equalities.push_back({{{0, 0, 0, 1.0}}, rhs});
  return p;
}

TEST(Sdp, InfeasibleFixtureIsInconclusive) {
  for (SdpMethod m : {SdpMethod::kInteriorPoint, SdpMethod::kProjection, SdpMethod::kAuto}) {
    SdpOptions o;
    o.method = m;
    const SdpSolution s = SolveFeasibility(OneByOne(-1.0), o);
    EXPECT_EQ(s.status, SdpStatus::kInconclusive);
    EXPECT_LE(s.margin, -0.9);
  }
}

TEST(Sdp, StrictFixture) {
  const SdpSolution s = SolveFeasibility(OneByOne(2.0));
  EXPECT_EQ(s.status, SdpStatus::kStrictlyFeasible);
  EXPECT_NEAR(s.margin, 2.0, 1e-6);
  EXPECT_LE(s.max_eq_residual, 1e-8);
}

TEST(Sdp, FeasibilityObjectiveStillReportsStatus) {
  SdpProblem p = OneByOne(2.0);
  p.objective = SdpObjective::kFeasibility;
  EXPECT_NE(SolveFeasibility(p).status, SdpStatus::kInconclusive);
}

TEST(SdpResiduals, Examples) {
  const SdpProblem p = OneByOne(1.0);
  const auto zero = ComputeResiduals(p, {Eigen::MatrixXd::Zero(1, 1)});
  EXPECT_DOUBLE_EQ(zero.max_eq_residual, 1.0);
  const auto exact = ComputeResiduals(p, {Eigen::MatrixXd::Ones(1, 1)});
  EXPECT_EQ(exact.max_eq_residual, 0.0);
  EXPECT_DOUBLE_EQ(exact.min_eigenvalue, 1.0);
  double prev = 0.0;
  for (double eps : {1e-6, 1e-4, 1e-2}) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(1, 1);
    x(0, 0) += eps;
    const double r = ComputeResiduals(p, {x}).max_eq_residual;
    EXPECT_NEAR(r / eps, 1.0, 1e-6);
    EXPECT_GT(r, prev);
    prev = r;
  }
}

SdpProblem RandomFeasible(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 4);
  std::normal_distribution<double> g;
  SdpProblem p;
  p.blocks = {dim(rng), dim(rng)};
  std::vector<Eigen::MatrixXd> x0;
  for (int n : p.blocks) {
    Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return g(rng); });
    x0.push_back(a * a.transpose() + Eigen::MatrixXd::Identity(n, n));
  }
  for (int e = 0; e < 4; ++e) {
    SdpEquality eq;
    for (int b = 0; b < 2; ++b) {
      for (int i = 0; i < p.blocks[b]; ++i) {
        for (int j = i; j < p.blocks[b]; ++j) {
          const double c = std::round(g(rng) * 4) / 4;
          if (c == 0.0) continue;
          eq.terms.push_back({b, i, j, c});
          eq.rhs += c * (i == j ? 1.0 : 2.0) * x0[b](i, j);
        }
      }
    }
    p.equalities.push_back(eq);
  }
  return p;
}

TEST(Sdp, StrictSolutionsAreSoundAndDeterministic) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const SdpProblem p = RandomFeasible(rng);
    const SdpSolution a = SolveFeasibility(p);
    const SdpSolution b = SolveFeasibility(p);
    EXPECT_EQ(a.status, b.status);
    ASSERT_EQ(a.blocks.size(), b.blocks.size());
    for (std::size_t k = 0; k < a.blocks.size(); ++k) EXPECT_TRUE(a.blocks[k] == b.blocks[k]);
    ASSERT_EQ(a.status, SdpStatus::kStrictlyFeasible) << trial;
    const SdpResiduals r = ComputeResiduals(p, a.blocks);
    EXPECT_LE(r.max_eq_residual, 1e-8);
    EXPECT_GE(r.min_eigenvalue, a.margin - 1e-8);

    SdpProblem dup = p;
    dup.equalities.push_back(p.equalities.front());
    EXPECT_EQ(SolveFeasibility(dup).status, SdpStatus::kStrictlyFeasible);
  }
}

TEST(Sdp, DimensionCapAndValidation) {
  SdpProblem big;
  big.blocks = {150, 100};
  EXPECT_THROW(SolveFeasibility(big), DomainError);
  SdpProblem bad = OneByOne(1.0);
  bad.equalities[0].terms[0].row = 3;
  EXPECT_THROW(SolveFeasibility(bad), DomainError);
}

TEST(Sdp, EmptyBlocksAreAllowed) {
  SdpProblem p = OneByOne(3.0);
  p.blocks.push_back(0);
  const SdpSolution s = SolveFeasibility(p);
  EXPECT_EQ(s.status, SdpStatus::kStrictlyFeasible);
}

TEST(Sdp, ProblemJsonRoundTrip) {
  std::mt19937_64 rng(2);
  const SdpProblem p = RandomFeasible(rng);
  const Json j = ToJson(p);
  EXPECT_EQ(ToJson(SdpProblemFromJson(j)).dump(), j.dump());
}

}  // namespace
}  // namespace popcert
