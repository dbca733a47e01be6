// Hardness constructions compiled from ONE-IN-THREE 3SAT instances.
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "popcert/poly.h"
#include "popcert/sat.h"

namespace popcert {

enum class Sense { kGe0, kEq0, kGt0 };

std::string_view SenseName(Sense s);
Sense ParseSense(std::string_view name);

struct Constraint {
  Polynomial poly;
  Sense sense = Sense::kGe0;
  /// The constraint stands for poly^2 = 0; stored unsquared (same zero set).
  bool squared = false;
};

/// Objective plus constraints, all over one ambient variable list.
struct Pop {
  Polynomial objective;
  std::vector<Constraint> constraints;

  const std::vector<std::string>& vars() const { return objective.vars(); }
  /// Re-expresses every polynomial over the union of all variable lists.
  void UnifyVars();
  bool IsFeasible(std::span<const Rational> point) const;
};

/// Equality-defined set T together with the homogeneous components g_ij whose
/// pointwise max of negations is q; q > 0 on the unit sphere iff T is stably compact.
struct StableInstance {
  Pop set;
  std::vector<Polynomial> sphere_test;
};

/// q(point) = max over components of -component(point).
Rational StableQ(const StableInstance& si, std::span<const Rational> point);
double StableQ(const StableInstance& si, std::span<const double> point);

enum class SetKind { kClosedness, kClosednessBounded, kBoundedness, kArchimedean };

enum class Construction {
  kSPhi,
  kPPhi,
  kPHatPhi,
  kQcqp,
  kSPhiH,
  kSetClosedness,
  kSetClosednessBounded,
  kSetBoundedness,
  kSetArchimedean,
  kStable,
};

Construction ParseConstruction(std::string_view name);
std::string_view ConstructionName(Construction c);

/// Variable names used by the generators.
std::string XName(int i);    // x1..xn, x0 for homogenization
std::string ChiName(int i);  // chi1..

/// phi_i1 + phi_i2 + phi_i3 over x1..xn.
Polynomial ClauseSum(const OneInThreeInstance& inst, int clause);

/// sum_i (phi_i1 + phi_i2 + phi_i3 + 1)^2 + sum_j (1 - x_j^2)^2.
Polynomial GenSPhi(const OneInThreeInstance& inst);
/// lambda^2 s_phi(x) + (1 - lambda)^2 (y^2 + (yz - 1)^2) over (x, y, z, lambda).
Polynomial GenPPhi(const OneInThreeInstance& inst);
/// Quartic lift of GenPPhi over (x, y, z, lambda, chi, w).
Polynomial GenPHatPhi(const OneInThreeInstance& inst);
/// Linear objective gamma with quadratic constraints; optimum 0, attained iff SAT.
Pop GenQcqp(const OneInThreeInstance& inst);
/// Homogenization of s_phi by x0 (placed first).
Polynomial GenSPhiH(const OneInThreeInstance& inst);
Pop GenSet(const OneInThreeInstance& inst, SetKind kind);
StableInstance GenStableInstance(const OneInThreeInstance& inst);

struct ExpectedLabel {
  Construction construction;
  bool satisfiable = false;
  /// Whether the named property (e.g. "coercive") holds.
  bool holds = false;
  std::string label;
};

/// Ground truth for a construction through the SAT oracle; refuses beyond `cap`.
ExpectedLabel ExpectedProperty(const OneInThreeInstance& inst, Construction c,
                               int cap = kDefaultBruteForceCap);

}  // namespace popcert
