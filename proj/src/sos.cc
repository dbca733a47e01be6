#include "popcert/sos.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "popcert/errors.h"

namespace popcert {

namespace {

/// Monomials of exactly `degree` in `n` variables, earlier variables heavier first.
void MonomialsOfDegree(std::size_t n, int degree, std::size_t pos, std::vector<int>& cur,
                       std::vector<Monomial>& out) {
  if (pos + 1 == n) {
    cur[pos] = degree;
    out.emplace_back(cur);
    cur[pos] = 0;
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[pos] = e;
    MonomialsOfDegree(n, degree - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Monomial> SosBasis(std::size_t num_vars, int degree_bound) {
  if (degree_bound < 0 || degree_bound % 2 != 0) {
    throw DomainError("SOS degree bound must be even and nonnegative, got " +
                      std::to_string(degree_bound));
  }
  std::vector<Monomial> out;
  if (num_vars == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> cur(num_vars, 0);
  for (int d = 0; d <= degree_bound / 2; ++d) MonomialsOfDegree(num_vars, d, 0, cur, out);
  return out;
}

void SosTemplate::Validate() const {
  if (factors.empty()) throw DomainError("template has no factors");
  if (degree_bounds.size() != factors.size()) {
    throw DomainError("one degree bound per factor required");
  }
  if (!basis_overrides.empty() && basis_overrides.size() != factors.size()) {
    throw DomainError("basis overrides must be given per factor");
  }
  for (int b : degree_bounds) {
    if (b < 0 || b % 2 != 0) {
      throw DomainError("multiplier degree bounds must be even and nonnegative");
    }
  }
  auto check_vars = [&](const Polynomial& p) {
    for (const auto& v : p.vars()) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
        throw DomainError("polynomial uses variable '" + v + "' outside the template");
      }
    }
  };
  check_vars(target);
  for (const auto& f : factors) check_vars(f);
  for (const auto& o : basis_overrides) {
    if (!o) continue;
    for (const auto& m : *o) {
      if (m.size() != vars.size()) throw DomainError("basis override has wrong arity");
    }
  }
}

std::vector<Monomial> SosTemplate::Basis(std::size_t j) const {
  if (j < basis_overrides.size() && basis_overrides[j]) return *basis_overrides[j];
  return SosBasis(vars.size(), degree_bounds.at(j));
}

CompiledIdentity CompileIdentity(const SosTemplate& t) {
  t.Validate();
  CompiledIdentity out;
  const Polynomial target = t.target.AlignedTo(t.vars);
  std::map<Monomial, std::vector<SdpEntry>, GrlexLess> rows;
  for (std::size_t j = 0; j < t.factors.size(); ++j) {
    const Polynomial factor = t.factors[j].AlignedTo(t.vars);
    out.bases.push_back(t.Basis(j));
    const auto& basis = out.bases.back();
    const int dim = static_cast<int>(basis.size());
    out.problem.blocks.push_back(dim);
    for (int a = 0; a < dim; ++a) {
      for (int b = a; b < dim; ++b) {
        const Monomial ab = basis[a] * basis[b];
        const double mult = a == b ? 1.0 : 2.0;
        for (const auto& [fm, fc] : factor.terms()) {
          rows[ab * fm].push_back({static_cast<int>(j), a, b, mult * fc.get_d()});
        }
      }
    }
  }
  for (const auto& [m, c] : target.terms()) {
    if (!rows.count(m)) {
      out.infeasible_by_construction = true;
      Polynomial mono(t.vars, std::vector<std::pair<Monomial, Rational>>{{m, Rational(1)}});
      out.diagnostic = "target monomial " + mono.ToText() + " has no multiplier entry";
      rows[m];
    }
  }
  for (auto& [m, entries] : rows) {
    out.row_monomials.push_back(m);
    out.problem.equalities.push_back({std::move(entries), target.coefficient(m).get_d()});
  }
  out.problem.objective = SdpObjective::kMargin;
  return out;
}

SosCertificate ExtractCertificate(const SosTemplate& t, const CompiledIdentity& compiled,
                                  const SdpSolution& sol) {
  if (sol.status == SdpStatus::kInconclusive) {
    throw DomainError("cannot extract a certificate from an inconclusive solve");
  }
  if (sol.blocks.size() != compiled.bases.size()) throw DomainError("solution shape mismatch");
  SosCertificate cert;
  cert.tmpl = t;
  cert.tmpl.basis_overrides.assign(compiled.bases.begin(), compiled.bases.end());
  for (std::size_t j = 0; j < compiled.bases.size(); ++j) {
    cert.multipliers.push_back({compiled.bases[j], (sol.blocks[j] + sol.blocks[j].transpose()) / 2});
  }
  cert.margin = sol.status == SdpStatus::kStrictlyFeasible ? sol.margin : 0.0;
  cert.residual = IdentityResidual(cert);
  return cert;
}

double IdentityResidual(const SosCertificate& cert) {
  std::map<Monomial, double, GrlexLess> total;
  const Polynomial target = cert.tmpl.target.AlignedTo(cert.tmpl.vars);
  for (const auto& [m, c] : target.terms()) total[m] -= c.get_d();
  for (std::size_t j = 0; j < cert.multipliers.size(); ++j) {
    const auto& mult = cert.multipliers[j];
    const Polynomial factor = cert.tmpl.factors[j].AlignedTo(cert.tmpl.vars);
    const int dim = static_cast<int>(mult.basis.size());
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        const double g = mult.gram(a, b);
        if (g == 0.0) continue;
        const Monomial ab = mult.basis[a] * mult.basis[b];
        for (const auto& [fm, fc] : factor.terms()) total[ab * fm] += g * fc.get_d();
      }
    }
  }
  double worst = 0.0;
  for (const auto& [m, v] : total) worst = std::max(worst, std::fabs(v));
  return worst;
}

}  // namespace popcert
