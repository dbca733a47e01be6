// Positivstellensatz identity templates and their semidefinite encodings.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "popcert/poly.h"
#include "popcert/sdp.h"

namespace popcert {

/// target == sum_j sigma_j * factors[j], each sigma_j SOS of degree <= degree_bounds[j].
struct SosTemplate {
  std::vector<std::string> vars;
  Polynomial target;
  std::vector<Polynomial> factors;
  std::vector<int> degree_bounds;
  /// Per-multiplier monomial basis replacing the full one (may be empty: sigma_j = 0).
  std::vector<std::optional<std::vector<Monomial>>> basis_overrides;

  /// Throws DomainError on odd or negative bounds, empty factor list, or foreign variables.
  void Validate() const;
  std::vector<Monomial> Basis(std::size_t j) const;
};

/// All monomials of total degree <= degree_bound / 2, graded lexicographic order.
std::vector<Monomial> SosBasis(std::size_t num_vars, int degree_bound);

struct CompiledIdentity {
  SdpProblem problem;
  /// Monomial matched by each equality, in equality order.
  std::vector<Monomial> row_monomials;
  std::vector<std::vector<Monomial>> bases;
  /// Set when a target monomial cannot be produced by any multiplier entry.
  bool infeasible_by_construction = false;
  std::string diagnostic;
};

/// One PSD block per multiplier, one equality per monomial of the expanded identity.
CompiledIdentity CompileIdentity(const SosTemplate& t);

struct NumericMultiplier {
  std::vector<Monomial> basis;
  Eigen::MatrixXd gram;
};

struct SosCertificate {
  SosTemplate tmpl;
  std::vector<NumericMultiplier> multipliers;
  /// Max coefficient mismatch of the expanded identity.
  double residual = 0.0;
  /// Solver margin (min eigenvalue slack); <= 0 when not strictly feasible.
  double margin = 0.0;
};

/// Copies Gram blocks out of a feasible solve; refuses inconclusive solutions.
SosCertificate ExtractCertificate(const SosTemplate& t, const CompiledIdentity& compiled,
                                  const SdpSolution& sol);

/// Max |coefficient| of sum_j z_j' G_j z_j * factor_j - target, expanded directly.
double IdentityResidual(const SosCertificate& cert);

}  // namespace popcert
