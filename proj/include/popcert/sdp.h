// Small dense semidefinite feasibility problems with a strict-feasibility margin.
#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace popcert {

/// coef * X_block[row][col]; X is symmetric and each unordered pair is listed once.
struct SdpEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double coef = 0.0;
};

struct SdpEquality {
  std::vector<SdpEntry> terms;
  double rhs = 0.0;
};

enum class SdpObjective { kFeasibility, kMargin };

/// Find symmetric X_1..X_B >= 0 with sum of entry terms == rhs for every equality.
struct SdpProblem {
  std::vector<int> blocks;
  std::vector<SdpEquality> equalities;
  SdpObjective objective = SdpObjective::kMargin;

  int total_dimension() const;
  /// Throws DomainError when an entry references an undeclared block position.
  void Validate() const;
};

enum class SdpStatus { kStrictlyFeasible, kFeasible, kInconclusive };
std::string_view StatusName(SdpStatus s);

struct SdpSolution {
  std::vector<Eigen::MatrixXd> blocks;
  SdpStatus status = SdpStatus::kInconclusive;
  /// Largest lambda found with every block - lambda*I PSD (negative when none is PSD).
  double margin = 0.0;
  int iterations = 0;
  /// Recomputed from `blocks`.
  double max_eq_residual = 0.0;
  double min_eigenvalue = 0.0;
};

enum class SdpMethod { kInteriorPoint, kProjection, kAuto };

struct SdpOptions {
  double tol = 1e-8;
  int max_iter = 100000;
  int dimension_cap = 200;
  SdpMethod method = SdpMethod::kInteriorPoint;
  /// Trace budget is trace_scale * total_dimension * max(1, |rhs|_inf); it keeps
  /// the margin objective bounded.
  double trace_scale = 10.0;
  /// Target margin for the projection method.
  double projection_margin = 1e-3;
};

/// Maximizes lambda subject to the equalities and X_j - lambda*I PSD.
/// kInconclusive is never a proof of infeasibility.
SdpSolution SolveFeasibility(const SdpProblem& problem, const SdpOptions& options = {});

struct SdpResiduals {
  double max_eq_residual = 0.0;
  double min_eigenvalue = 0.0;
};

/// Recomputes residuals in extended precision.
SdpResiduals ComputeResiduals(const SdpProblem& problem, const std::vector<Eigen::MatrixXd>& blocks);

}  // namespace popcert
