#include "popcert/sdp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "popcert/errors.h"

namespace popcert {

int SdpProblem::total_dimension() const {
  int total = 0;
  for (int d : blocks) total += d;
  return total;
}

void SdpProblem::Validate() const {
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (blocks[j] < 0) throw DomainError("negative block dimension");
  }
  for (std::size_t i = 0; i < equalities.size(); ++i) {
    for (const auto& t : equalities[i].terms) {
      if (t.block < 0 || t.block >= static_cast<int>(blocks.size()) || t.row < 0 || t.col < 0 ||
          t.row >= blocks[t.block] || t.col >= blocks[t.block]) {
        throw DomainError("equality " + std::to_string(i) + " references an undeclared entry");
      }
    }
  }
}

std::string_view StatusName(SdpStatus s) {
  switch (s) {
    case SdpStatus::kStrictlyFeasible: return "strictly_feasible";
    case SdpStatus::kFeasible: return "feasible";
    case SdpStatus::kInconclusive: return "inconclusive";
  }
  return "?";
}

SdpResiduals ComputeResiduals(const SdpProblem& problem, const std::vector<Eigen::MatrixXd>& blocks) {
  if (blocks.size() != problem.blocks.size()) throw DomainError("block count mismatch");
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (blocks[j].rows() != problem.blocks[j] || blocks[j].cols() != problem.blocks[j]) {
      throw DomainError("block " + std::to_string(j) + " has the wrong shape");
    }
  }
  SdpResiduals out;
  long double worst = 0;
  for (const auto& eq : problem.equalities) {
    long double sum = 0;
    for (const auto& t : eq.terms) {
      sum += static_cast<long double>(t.coef) * blocks[t.block](t.row, t.col);
    }
    worst = std::max(worst, std::fabs(sum - static_cast<long double>(eq.rhs)));
  }
  out.max_eq_residual = static_cast<double>(worst);
  using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  long double min_eig = std::numeric_limits<long double>::infinity();
  for (const auto& b : blocks) {
    if (b.rows() == 0) continue;
    const MatrixXld sym = (b.cast<long double>() + b.transpose().cast<long double>()) / 2;
    Eigen::SelfAdjointEigenSolver<MatrixXld> es(sym, Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  out.min_eigenvalue = std::isinf(min_eig) ? 0.0 : static_cast<double>(min_eig);
  return out;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// One symmetric coefficient: A[p][q] (both triangles listed for p != q).
struct Coef {
  int p;
  int q;
  double a;
};

/// Constraint operator in block-sparse form: rows_by_block[j] holds (row, coefficients).
struct Operator {
  int num_rows = 0;
  std::vector<int> dims;
  std::vector<std::vector<std::pair<int, std::vector<Coef>>>> rows_by_block;

  VectorXd Apply(const std::vector<MatrixXd>& x) const {
    VectorXd out = VectorXd::Zero(num_rows);
    for (std::size_t j = 0; j < dims.size(); ++j) {
      for (const auto& [i, coefs] : rows_by_block[j]) {
        double s = 0;
        for (const auto& c : coefs) s += c.a * x[j](c.p, c.q);
        out[i] += s;
      }
    }
    return out;
  }

  std::vector<MatrixXd> Adjoint(const VectorXd& y) const {
    std::vector<MatrixXd> out;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      MatrixXd m = MatrixXd::Zero(dims[j], dims[j]);
      for (const auto& [i, coefs] : rows_by_block[j]) {
        for (const auto& c : coefs) m(c.p, c.q) += y[i] * c.a;
      }
      out.push_back(std::move(m));
    }
    return out;
  }
};

Operator BuildOperator(const SdpProblem& problem, bool with_trace_row) {
  Operator op;
  op.dims = problem.blocks;
  const int m = static_cast<int>(problem.equalities.size());
  op.num_rows = m + (with_trace_row ? 1 : 0);
  if (with_trace_row) op.dims.push_back(1);  // trace slack
  op.rows_by_block.resize(op.dims.size());
  for (int i = 0; i < m; ++i) {
    std::vector<std::vector<Coef>> per_block(problem.blocks.size());
    for (const auto& t : problem.equalities[i].terms) {
      if (t.coef == 0.0) continue;
      if (t.row == t.col) {
        per_block[t.block].push_back({t.row, t.col, t.coef});
      } else {
        per_block[t.block].push_back({t.row, t.col, t.coef / 2});
        per_block[t.block].push_back({t.col, t.row, t.coef / 2});
      }
    }
    for (std::size_t j = 0; j < per_block.size(); ++j) {
      if (!per_block[j].empty()) op.rows_by_block[j].emplace_back(i, std::move(per_block[j]));
    }
  }
  if (with_trace_row) {
    for (std::size_t j = 0; j < op.dims.size(); ++j) {
      std::vector<Coef> diag;
      for (int p = 0; p < op.dims[j]; ++p) diag.push_back({p, p, 1.0});
      if (!diag.empty()) op.rows_by_block[j].emplace_back(m, std::move(diag));
    }
  }
  return op;
}

double Inner(const std::vector<MatrixXd>& a, const std::vector<MatrixXd>& b) {
  double s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j].array() * b[j].array()).sum();
  return s;
}

/// Gram matrix <A_i, A_k> in the Frobenius inner product.
MatrixXd FrobeniusGram(const Operator& op) {
  MatrixXd gram = MatrixXd::Zero(op.num_rows, op.num_rows);
  for (std::size_t j = 0; j < op.dims.size(); ++j) {
    const int d = op.dims[j];
    std::vector<std::vector<std::pair<int, double>>> by_entry(static_cast<std::size_t>(d) * d);
    for (const auto& [i, coefs] : op.rows_by_block[j]) {
      for (const auto& c : coefs) by_entry[c.p * d + c.q].emplace_back(i, c.a);
    }
    for (const auto& list : by_entry) {
      for (const auto& [i, ai] : list) {
        for (const auto& [k, ak] : list) gram(i, k) += ai * ak;
      }
    }
  }
  return gram;
}

/// Largest step alpha <= 1 keeping x + alpha*dx PSD (x assumed PD).
double MaxStep(const std::vector<MatrixXd>& x, const std::vector<MatrixXd>& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j].rows() == 0) continue;
    Eigen::LLT<MatrixXd> llt(x[j]);
    if (llt.info() != Eigen::Success) return 0.0;
    const MatrixXd l_inv = llt.matrixL().solve(MatrixXd::Identity(x[j].rows(), x[j].cols()));
    const MatrixXd w = l_inv * dx[j] * l_inv.transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es((w + w.transpose()) / 2, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < 0) alpha = std::min(alpha, -1.0 / lo);
  }
  return alpha;
}

MatrixXd Sym(const MatrixXd& m) { return (m + m.transpose()) / 2; }

struct IpmResult {
  std::vector<MatrixXd> x;  // Gram blocks, margin already added back
  double margin = -std::numeric_limits<double>::infinity();
  int iterations = 0;
};

/// Primal-dual path following (HKM direction, Mehrotra predictor-corrector) on
///   min -lambda  s.t.  A(Y) + lambda*A(I) = b,  tr(Y) + s + N*lambda = T,  Y, s >= 0.
IpmResult SolveInteriorPoint(const SdpProblem& problem, const SdpOptions& options) {
  const Operator op = BuildOperator(problem, /*with_trace_row=*/true);
  const int m = op.num_rows;
  const int num_blocks = static_cast<int>(op.dims.size());
  const int n_gram = problem.total_dimension();
  const int n_all = n_gram + 1;

  VectorXd b(m);
  double b_inf = 0;
  for (int i = 0; i + 1 < m; ++i) {
    b[i] = problem.equalities[i].rhs;
    b_inf = std::max(b_inf, std::fabs(b[i]));
  }
  const double trace_budget = options.trace_scale * std::max(1, n_gram) * std::max(1.0, b_inf);
  b[m - 1] = trace_budget;

  // Coefficient of lambda in each row: A_i(I), and N for the trace row.
  VectorXd a = VectorXd::Zero(m);
  for (int j = 0; j + 1 < num_blocks; ++j) {
    for (const auto& [i, coefs] : op.rows_by_block[j]) {
      for (const auto& c : coefs) {
        if (c.p == c.q) a[i] += c.a;
      }
    }
  }
  a[m - 1] = n_gram;
  const double c_free = -1.0;

  // Minimum-norm repair of A(dX) + a*df = rp; Newton solves lose this on degenerate faces.
  MatrixXd joint = FrobeniusGram(op) + a * a.transpose();
  joint += 1e-14 * (1 + joint.diagonal().maxCoeff()) * MatrixXd::Identity(m, m);
  const Eigen::LDLT<MatrixXd> joint_ldlt(joint);

  std::vector<MatrixXd> x, s;
  for (int d : op.dims) {
    x.push_back(MatrixXd::Identity(d, d) * (trace_budget / n_all));
    s.push_back(MatrixXd::Identity(d, d));
  }
  VectorXd y = VectorXd::Zero(m);
  double f = 0.0;

  IpmResult best;
  const int iter_cap = std::min(options.max_iter, 200);
  const double target_pinf = std::min(options.tol * 0.01, 1e-10);
  int stalls = 0;

  for (int iter = 0; iter < iter_cap; ++iter) {
    best.iterations = iter + 1;
    const VectorXd rp = b - op.Apply(x) - a * f;
    std::vector<MatrixXd> rd = op.Adjoint(y);
    for (int j = 0; j < num_blocks; ++j) rd[j] = -rd[j] - s[j];
    const double rf = c_free - a.dot(y);

    const double mu = Inner(x, s) / n_all;
    const double pinf = rp.lpNorm<Eigen::Infinity>() / (1 + b_inf);
    double dinf = std::fabs(rf);
    for (const auto& r : rd) {
      if (r.size() > 0) dinf = std::max(dinf, r.cwiseAbs().maxCoeff());
    }
    const double pobj = -f;
    const double dobj = b.dot(y);
    const double relgap = std::fabs(pobj - dobj) / (1 + std::fabs(pobj) + std::fabs(dobj));

    if (pinf < target_pinf && dinf < 1e-9 && (relgap < 1e-10 || mu < 1e-13)) break;
    // Degenerate faces stall the dual first; a tight gap is as good as it gets.
    if (pinf < target_pinf && dinf < 1e-5 && relgap < 1e-8) break;
    // Weak duality: lambda* <= -b'y once the dual is feasible; stop when that is negative.
    if (dinf < 1e-9 && -dobj < -1e-5 * std::max(1.0, b_inf) && f < -dobj) break;
    if (pinf < target_pinf && dinf < 1e-5 && relgap < 1e-6 && f < -1e-5 * std::max(1.0, b_inf)) break;
    if (problem.objective == SdpObjective::kFeasibility && pinf < target_pinf &&
        f > 100 * options.tol) {
      break;
    }

    std::vector<MatrixXd> s_inv(num_blocks);
    bool ok = true;
    for (int j = 0; j < num_blocks; ++j) {
      Eigen::LLT<MatrixXd> llt(s[j]);
      if (llt.info() != Eigen::Success) {
        ok = false;
        break;
      }
      s_inv[j] = llt.solve(MatrixXd::Identity(op.dims[j], op.dims[j]));
    }
    if (!ok) break;

    // Schur complement M_ik = sum_j tr(A_ij X_j A_kj S_j^-1).
    MatrixXd schur = MatrixXd::Zero(m, m);
    for (int j = 0; j < num_blocks; ++j) {
      const int d = op.dims[j];
      if (d == 0) continue;
      // G = X A_k S^-1 = X[:, P] C S^-1[Q, :] with C the dense coefficient pattern of row k.
      MatrixXd g(d, d);
      for (const auto& [k, coefs_k] : op.rows_by_block[j]) {
        std::vector<int> ps, qs;
        for (const auto& c : coefs_k) {
          ps.push_back(c.p);
          qs.push_back(c.q);
        }
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        std::sort(qs.begin(), qs.end());
        qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
        MatrixXd cmat = MatrixXd::Zero(ps.size(), qs.size());
        for (const auto& c : coefs_k) {
          const auto pi = std::lower_bound(ps.begin(), ps.end(), c.p) - ps.begin();
          const auto qi = std::lower_bound(qs.begin(), qs.end(), c.q) - qs.begin();
          cmat(pi, qi) += c.a;
        }
        MatrixXd xp(d, ps.size());
        for (std::size_t t = 0; t < ps.size(); ++t) xp.col(t) = x[j].col(ps[t]);
        MatrixXd wq(qs.size(), d);
        for (std::size_t t = 0; t < qs.size(); ++t) wq.row(t) = s_inv[j].row(qs[t]);
        g.noalias() = (xp * cmat) * wq;
        for (const auto& [i, coefs_i] : op.rows_by_block[j]) {
          if (i < k) continue;
          double t = 0;
          for (const auto& c : coefs_i) t += c.a * g(c.q, c.p);
          schur(i, k) += t;
          if (i != k) schur(k, i) += t;
        }
      }
    }
    schur = (schur + schur.transpose()) / 2;
    const double reg = 1e-14 * (1 + schur.diagonal().cwiseAbs().maxCoeff());
    MatrixXd kkt = MatrixXd::Zero(m + 1, m + 1);
    kkt.topLeftCorner(m, m) = schur + reg * MatrixXd::Identity(m, m);
    kkt.block(0, m, m, 1) = a;
    kkt.block(m, 0, 1, m) = a.transpose();
    MatrixXd kkt_exact = kkt;
    kkt_exact.topLeftCorner(m, m) = schur;
    kkt(m, m) = -reg;
    Eigen::PartialPivLU<MatrixXd> lu(kkt);

    // Direction for complementarity residual rc_j = target - X S (given per block).
    auto direction = [&](const std::vector<MatrixXd>& rc, std::vector<MatrixXd>& dx,
                         std::vector<MatrixXd>& ds, VectorXd& dy, double& df) {
      std::vector<MatrixXd> k(num_blocks);
      for (int j = 0; j < num_blocks; ++j) k[j] = (rc[j] - x[j] * rd[j]) * s_inv[j];
      VectorXd rhs(m + 1);
      rhs.head(m) = rp - op.Apply(k);
      rhs[m] = rf;
      VectorXd sol = lu.solve(rhs);
      for (int pass = 0; pass < 2; ++pass) sol += lu.solve(rhs - kkt_exact * sol);
      dy = sol.head(m);
      df = sol[m];
      const std::vector<MatrixXd> aty = op.Adjoint(dy);
      dx.resize(num_blocks);
      ds.resize(num_blocks);
      for (int j = 0; j < num_blocks; ++j) {
        ds[j] = Sym(rd[j] - aty[j]);
        dx[j] = Sym(k[j] - x[j] * ds[j] * s_inv[j]);
      }
      for (int pass = 0; pass < 2; ++pass) {
        const VectorXd err = rp - op.Apply(dx) - a * df;
        const VectorXd z = joint_ldlt.solve(err);
        const std::vector<MatrixXd> fix = op.Adjoint(z);
        for (int j = 0; j < num_blocks; ++j) dx[j] += Sym(fix[j]);
        df += a.dot(z);
      }
    };

    std::vector<MatrixXd> rc(num_blocks), dx, ds;
    VectorXd dy;
    double df = 0;
    for (int j = 0; j < num_blocks; ++j) rc[j] = -x[j] * s[j];
    direction(rc, dx, ds, dy, df);
    const double ap_aff = std::min(1.0, MaxStep(x, dx));
    const double ad_aff = std::min(1.0, MaxStep(s, ds));
    double mu_aff = 0;
    for (int j = 0; j < num_blocks; ++j) {
      mu_aff += ((x[j] + ap_aff * dx[j]).array() * (s[j] + ad_aff * ds[j]).array()).sum();
    }
    mu_aff /= n_all;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3), 0.0, 1.0);

    for (int j = 0; j < num_blocks; ++j) {
      rc[j] = sigma * mu * MatrixXd::Identity(op.dims[j], op.dims[j]) - x[j] * s[j] - dx[j] * ds[j];
    }
    direction(rc, dx, ds, dy, df);
    const double ap = std::min(1.0, 0.95 * MaxStep(x, dx));
    const double ad = std::min(1.0, 0.95 * MaxStep(s, ds));
    if (ap < 1e-12 && ad < 1e-12) {
      if (++stalls > 3) break;
    } else {
      stalls = 0;
    }
    for (int j = 0; j < num_blocks; ++j) {
      x[j] = Sym(x[j] + ap * dx[j]);
      s[j] = Sym(s[j] + ad * ds[j]);
    }
    f += ap * df;
    y += ad * dy;
  }

  best.margin = f;
  for (int j = 0; j + 1 < num_blocks; ++j) {
    best.x.push_back(x[j] + f * MatrixXd::Identity(op.dims[j], op.dims[j]));
  }
  return best;
}

/// Alternating projections between the equality subspace and {X >= margin*I}.
IpmResult SolveProjection(const SdpProblem& problem, const SdpOptions& options) {
  const Operator op = BuildOperator(problem, /*with_trace_row=*/false);
  const int m = op.num_rows;
  const int num_blocks = static_cast<int>(op.dims.size());
  VectorXd b(m);
  for (int i = 0; i < m; ++i) b[i] = problem.equalities[i].rhs;

  const MatrixXd gram = FrobeniusGram(op);
  const double reg = 1e-14 * (1 + (m > 0 ? gram.diagonal().maxCoeff() : 0.0));
  Eigen::LDLT<MatrixXd> ldlt(gram + reg * MatrixXd::Identity(m, m));

  std::vector<MatrixXd> x;
  for (int d : op.dims) x.push_back(MatrixXd::Identity(d, d));
  const double eps = options.projection_margin;

  IpmResult out;
  for (int iter = 0; iter < options.max_iter; ++iter) {
    out.iterations = iter + 1;
    const VectorXd r = op.Apply(x) - b;
    const std::vector<MatrixXd> corr = op.Adjoint(ldlt.solve(r));
    double lowest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < num_blocks; ++j) {
      x[j] = Sym(x[j] - corr[j]);
      if (op.dims[j] == 0) continue;
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(x[j]);
      lowest = std::min(lowest, es.eigenvalues().minCoeff());
    }
    if (lowest >= eps * 0.5) {
      out.margin = lowest;
      break;
    }
    out.margin = lowest;
    for (int j = 0; j < num_blocks; ++j) {
      if (op.dims[j] == 0) continue;
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(x[j]);
      const VectorXd clipped = es.eigenvalues().cwiseMax(eps);
      x[j] = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
    }
  }
  out.x = std::move(x);
  return out;
}

SdpSolution Finish(const SdpProblem& problem, const SdpOptions& options, IpmResult r) {
  SdpSolution sol;
  sol.blocks = std::move(r.x);
  sol.margin = r.margin;
  sol.iterations = r.iterations;
  const SdpResiduals res = ComputeResiduals(problem, sol.blocks);
  sol.max_eq_residual = res.max_eq_residual;
  sol.min_eigenvalue = res.min_eigenvalue;
  const bool eq_ok = std::isfinite(res.max_eq_residual) && res.max_eq_residual <= options.tol;
  if (eq_ok && sol.margin > 10 * options.tol && res.min_eigenvalue >= sol.margin - options.tol) {
    sol.status = SdpStatus::kStrictlyFeasible;
  } else if (eq_ok && res.min_eigenvalue >= -options.tol) {
    sol.status = SdpStatus::kFeasible;
  } else {
    sol.status = SdpStatus::kInconclusive;
  }
  return sol;
}

}  // namespace

SdpSolution SolveFeasibility(const SdpProblem& problem, const SdpOptions& options) {
  problem.Validate();
  if (problem.total_dimension() > options.dimension_cap) {
    throw DomainError("total block dimension " + std::to_string(problem.total_dimension()) +
                      " exceeds cap " + std::to_string(options.dimension_cap));
  }
  if (options.tol <= 0 || options.max_iter < 1) throw DomainError("invalid solver options");
  if (problem.total_dimension() == 0) {
    SdpSolution sol;
    sol.blocks.resize(problem.blocks.size());
    const SdpResiduals res = ComputeResiduals(problem, sol.blocks);
    sol.max_eq_residual = res.max_eq_residual;
    sol.status = res.max_eq_residual <= options.tol ? SdpStatus::kFeasible : SdpStatus::kInconclusive;
    return sol;
  }
  switch (options.method) {
    case SdpMethod::kInteriorPoint:
      return Finish(problem, options, SolveInteriorPoint(problem, options));
    case SdpMethod::kProjection:
      return Finish(problem, options, SolveProjection(problem, options));
    case SdpMethod::kAuto: {
      SdpOptions budget = options;
      budget.max_iter = std::min(options.max_iter, 2000);
      SdpSolution first = Finish(problem, options, SolveProjection(problem, budget));
      if (first.status == SdpStatus::kStrictlyFeasible) return first;
      return Finish(problem, options, SolveInteriorPoint(problem, options));
    }
  }
  return {};
}

}  // namespace popcert
