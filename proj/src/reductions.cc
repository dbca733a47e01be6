#include "popcert/reductions.h"

#include <algorithm>

#include "popcert/errors.h"

namespace popcert {

namespace {

using Vars = std::vector<std::string>;

Polynomial Var(const std::string& name) { return Polynomial::Variable(name); }
Polynomial Const(long c) { return Polynomial::Constant(Rational(c)); }

Vars XVars(int n) {
  Vars v;
  for (int i = 1; i <= n; ++i) v.push_back(XName(i));
  return v;
}

Vars Concat(Vars a, const Vars& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Literal-sum of clause i with each x_j replaced by `lift(j)`.
template <typename Lift>
Polynomial LiteralSum(const Clause& clause, Lift lift) {
  Polynomial sum;
  for (Literal lit : clause) {
    const int v = lit > 0 ? lit : -lit;
    sum += lit > 0 ? lift(v) : -lift(v);
  }
  return sum;
}

}  // namespace

std::string_view SenseName(Sense s) {
  switch (s) {
    case Sense::kGe0: return "ge0";
    case Sense::kEq0: return "eq0";
    case Sense::kGt0: return "gt0";
  }
  return "?";
}

Sense ParseSense(std::string_view name) {
  if (name == "ge0") return Sense::kGe0;
  if (name == "eq0") return Sense::kEq0;
  if (name == "gt0") return Sense::kGt0;
  throw FormatError("unknown constraint sense '" + std::string(name) + "'");
}

void Pop::UnifyVars() {
  Vars vars = objective.vars();
  for (const auto& c : constraints) vars = UnionVars(vars, c.poly.vars());
  objective = objective.AlignedTo(vars);
  for (auto& c : constraints) c.poly = c.poly.AlignedTo(vars);
}

bool Pop::IsFeasible(std::span<const Rational> point) const {
  for (const auto& c : constraints) {
    const Rational v = c.poly.Evaluate(point);
    switch (c.sense) {
      case Sense::kGe0:
        if (v < 0) return false;
        break;
      case Sense::kEq0:
        if (v != 0) return false;
        break;
      case Sense::kGt0:
        if (v <= 0) return false;
        break;
    }
  }
  return true;
}

Rational StableQ(const StableInstance& si, std::span<const Rational> point) {
  if (si.sphere_test.empty()) throw DomainError("empty sphere test");
  Rational best = -si.sphere_test.front().Evaluate(point);
  for (const auto& c : si.sphere_test) best = std::max(best, Rational(-c.Evaluate(point)));
  return best;
}

double StableQ(const StableInstance& si, std::span<const double> point) {
  if (si.sphere_test.empty()) throw DomainError("empty sphere test");
  double best = -si.sphere_test.front().Evaluate(point);
  for (const auto& c : si.sphere_test) best = std::max(best, -c.Evaluate(point));
  return best;
}

namespace {

constexpr std::pair<Construction, std::string_view> kConstructionNames[] = {
    {Construction::kSPhi, "s_phi"},
    {Construction::kPPhi, "p_phi"},
    {Construction::kPHatPhi, "p_hat_phi"},
    {Construction::kQcqp, "qcqp"},
    {Construction::kSPhiH, "s_phi_h"},
    {Construction::kSetClosedness, "set:closedness"},
    {Construction::kSetClosednessBounded, "set:closedness_bounded"},
    {Construction::kSetBoundedness, "set:boundedness"},
    {Construction::kSetArchimedean, "set:archimedean"},
    {Construction::kStable, "stable"},
};

}  // namespace

Construction ParseConstruction(std::string_view name) {
  for (const auto& [c, n] : kConstructionNames) {
    if (n == name) return c;
  }
  throw DomainError("unknown construction '" + std::string(name) + "'");
}

std::string_view ConstructionName(Construction c) {
  for (const auto& [k, n] : kConstructionNames) {
    if (k == c) return n;
  }
  return "?";
}

std::string XName(int i) { return "x" + std::to_string(i); }
std::string ChiName(int i) { return "chi" + std::to_string(i); }

Polynomial ClauseSum(const OneInThreeInstance& inst, int clause) {
  return LiteralSum(inst.clauses.at(clause), [](int v) { return Var(XName(v)); })
      .AlignedTo(XVars(inst.num_vars));
}

Polynomial GenSPhi(const OneInThreeInstance& inst) {
  inst.Validate();
  Polynomial s(XVars(inst.num_vars));
  for (int i = 0; i < inst.num_clauses(); ++i) s += (ClauseSum(inst, i) + Rational(1)).Pow(2);
  for (int j = 1; j <= inst.num_vars; ++j) s += (Const(1) - Var(XName(j)).Pow(2)).Pow(2);
  return s;
}

Polynomial GenPPhi(const OneInThreeInstance& inst) {
  const Polynomial lam = Var("lambda");
  const Polynomial y = Var("y");
  const Polynomial z = Var("z");
  const Polynomial one_minus_lam = Const(1) - lam;
  Polynomial p = lam.Pow(2) * GenSPhi(inst) +
                 one_minus_lam.Pow(2) * (y.Pow(2) + (y * z - Rational(1)).Pow(2));
  return p.AlignedTo(Concat(XVars(inst.num_vars), {"y", "z", "lambda"}));
}

Polynomial GenPHatPhi(const OneInThreeInstance& inst) {
  inst.Validate();
  const int n = inst.num_vars;
  const Polynomial lam = Var("lambda");
  const Polynomial y = Var("y");
  const Polynomial z = Var("z");
  const Polynomial w = Var("w");
  // lambda^2 s_phi with lambda carried inside each square and lambda*x_i -> chi_i.
  Polynomial s_hat;
  for (const auto& clause : inst.clauses) {
    s_hat += (LiteralSum(clause, [](int v) { return Var(ChiName(v)); }) + lam).Pow(2);
  }
  for (int j = 1; j <= n; ++j) s_hat += (lam - Var(ChiName(j)) * Var(XName(j))).Pow(2);
  Polynomial p = s_hat + (Const(1) - lam).Pow(2) * (y.Pow(2) + (w - Rational(1)).Pow(2)) +
                 (w - y * z).Pow(2);
  for (int j = 1; j <= n; ++j) p += (Var(ChiName(j)) - lam * Var(XName(j))).Pow(2);
  Vars chis;
  for (int j = 1; j <= n; ++j) chis.push_back(ChiName(j));
  return p.AlignedTo(Concat(Concat(XVars(n), {"y", "z", "lambda"}), Concat(chis, {"w"})));
}

Pop GenQcqp(const OneInThreeInstance& inst) {
  inst.Validate();
  const int n = inst.num_vars;
  const int k = inst.num_clauses();
  const Polynomial lam = Var("lambda");
  const Polynomial y = Var("y");
  const Polynomial z = Var("z");
  const Polynomial w = Var("w");
  const Polynomial gamma = Var("gamma");
  const Polynomial zeta = Var("zeta");
  const Polynomial psi = Var("psi");
  // One surrogate chi_i per clause.
  Vars chis;
  Polynomial chi_sum;
  for (int i = 1; i <= k; ++i) {
    chis.push_back(ChiName(i));
    chi_sum += Var(ChiName(i));
  }
  Pop pop;
  pop.objective = gamma;
  pop.constraints.push_back(
      {gamma - lam * chi_sum - (Const(1) - lam) * (psi + zeta), Sense::kGe0});
  for (int j = 1; j <= n; ++j) {
    pop.constraints.push_back({Const(1) - Var(XName(j)).Pow(2), Sense::kEq0});
  }
  for (int i = 0; i < k; ++i) {
    pop.constraints.push_back(
        {Var(ChiName(i + 1)) - (ClauseSum(inst, i) + Rational(1)).Pow(2), Sense::kEq0});
  }
  pop.constraints.push_back({psi - y.Pow(2), Sense::kEq0});
  pop.constraints.push_back({y * z - w, Sense::kEq0});
  pop.constraints.push_back({zeta - (w - Rational(1)).Pow(2), Sense::kEq0});
  pop.constraints.push_back({lam * (Const(1) - lam), Sense::kEq0});
  const Vars vars =
      Concat(Concat(XVars(n), {"y", "z", "lambda"}), Concat(chis, {"w", "gamma", "zeta", "psi"}));
  pop.objective = pop.objective.AlignedTo(vars);
  for (auto& c : pop.constraints) c.poly = c.poly.AlignedTo(vars);
  return pop;
}

Polynomial GenSPhiH(const OneInThreeInstance& inst) { return Homogenize(GenSPhi(inst), XName(0)); }

Pop GenSet(const OneInThreeInstance& inst, SetKind kind) {
  inst.Validate();
  const int n = inst.num_vars;
  const Polynomial y = Var("y");
  const Vars vars = Concat(XVars(n), {"y"});
  Pop pop;
  pop.objective = Polynomial(vars);
  if (kind == SetKind::kArchimedean) {
    for (int i = 0; i < inst.num_clauses(); ++i) {
      const Polynomial g = (ClauseSum(inst, i) + Rational(1)) * y;
      pop.constraints.push_back({g, Sense::kGe0});
      pop.constraints.push_back({-g, Sense::kGe0});
    }
    for (int j = 1; j <= n; ++j) {
      const Polynomial g = Const(1) - Var(XName(j)).Pow(2);
      pop.constraints.push_back({g, Sense::kGe0});
      pop.constraints.push_back({-g, Sense::kGe0});
    }
  } else {
    for (int i = 0; i < inst.num_clauses(); ++i) {
      pop.constraints.push_back({(ClauseSum(inst, i) + Rational(1)) * y, Sense::kEq0});
    }
    for (int j = 1; j <= n; ++j) {
      pop.constraints.push_back({Const(1) - Var(XName(j)).Pow(2), Sense::kEq0});
    }
    if (kind == SetKind::kClosedness || kind == SetKind::kClosednessBounded) {
      pop.constraints.push_back({Const(1) - y, Sense::kGt0});
    }
    if (kind == SetKind::kClosednessBounded) {
      pop.constraints.push_back({y + Rational(1), Sense::kGe0});
    }
  }
  for (auto& c : pop.constraints) c.poly = c.poly.AlignedTo(vars);
  return pop;
}

StableInstance GenStableInstance(const OneInThreeInstance& inst) {
  inst.Validate();
  const int n = inst.num_vars;
  const Polynomial x0 = Var(XName(0));
  const Vars vars = Concat({XName(0)}, XVars(n));
  StableInstance si;
  si.set.objective = Polynomial(vars);
  for (int i = 0; i < inst.num_clauses(); ++i) {
    const Polynomial h = (ClauseSum(inst, i) + x0).AlignedTo(vars);
    si.set.constraints.push_back({h, Sense::kEq0, /*squared=*/true});
    const Polynomial sq = h.Pow(2);
    si.sphere_test.push_back(sq);
    si.sphere_test.push_back(-sq);
  }
  for (int j = 1; j <= n; ++j) {
    const Polynomial g = (x0.Pow(2) - Var(XName(j)).Pow(2)).AlignedTo(vars);
    si.set.constraints.push_back({g, Sense::kEq0});
    si.sphere_test.push_back(g);
    si.sphere_test.push_back(-g);
  }
  return si;
}

ExpectedLabel ExpectedProperty(const OneInThreeInstance& inst, Construction c, int cap) {
  ExpectedLabel out{c};
  out.satisfiable = BruteForceSolve(inst, cap).has_value();
  const bool sat = out.satisfiable;
  auto set = [&](bool holds, std::string_view yes, std::string_view no) {
    out.holds = holds;
    out.label = holds ? yes : no;
  };
  switch (c) {
    case Construction::kSPhi: set(sat, "has-zero", "no-zero"); break;
    case Construction::kPPhi:
    case Construction::kPHatPhi:
    case Construction::kQcqp: set(sat, "attained", "not-attained"); break;
    case Construction::kSPhiH: set(!sat, "coercive", "not-coercive"); break;
    case Construction::kSetClosedness:
    case Construction::kSetClosednessBounded: set(!sat, "closed", "not-closed"); break;
    case Construction::kSetBoundedness: set(!sat, "bounded", "unbounded"); break;
    case Construction::kSetArchimedean: set(!sat, "archimedean", "not-archimedean"); break;
    case Construction::kStable: set(!sat, "stably-compact", "not-stably-compact"); break;
  }
  return out;
}

}  // namespace popcert
