#include "popcert/json_io.h"

#include <string>

#include "popcert/errors.h"

namespace popcert {

namespace {

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<std::string> VarsFromJson(const Json& j) {
  if (!j.is_array()) throw FormatError("'vars' must be an array of names");
  std::vector<std::string> vars;
  for (const auto& v : j) {
    if (!v.is_string()) throw FormatError("variable names must be strings");
    vars.push_back(v.get<std::string>());
  }
  return vars;
}

int IntFromJson(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  return j.get<int>();
}

double DoubleFromJson(const Json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string(what) + " must be a number");
  return j.get<double>();
}

Rational RationalFromJson(const Json& j) {
  if (j.is_string()) {
    try {
      return ParseRational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw FormatError("exact coefficients must be \"num/den\" strings");
}

Json MonomialToJson(const Monomial& m) { return Json(m.exps); }

Monomial MonomialFromJson(const Json& j, std::size_t arity) {
  if (!j.is_array()) throw FormatError("exponent vector must be an array");
  std::vector<int> e;
  for (const auto& v : j) {
    const int x = IntFromJson(v, "exponent");
    if (x < 0) throw FormatError("exponents must be nonnegative");
    e.push_back(x);
  }
  if (e.size() != arity) {
    throw FormatError("exponent vector has length " + std::to_string(e.size()) + ", expected " +
                      std::to_string(arity));
  }
  return Monomial(std::move(e));
}

std::vector<Monomial> BasisFromJson(const Json& j, std::size_t arity) {
  if (!j.is_array()) throw FormatError("'basis' must be an array");
  std::vector<Monomial> basis;
  for (const auto& m : j) basis.push_back(MonomialFromJson(m, arity));
  return basis;
}

Json BasisToJson(const std::vector<Monomial>& basis) {
  Json out = Json::array();
  for (const auto& m : basis) out.push_back(MonomialToJson(m));
  return out;
}

void CheckSquare(const Json& gram, std::size_t dim) {
  if (!gram.is_array() || gram.size() != dim) throw FormatError("'gram' must be a square array matching the basis");
  for (const auto& row : gram) {
    if (!row.is_array() || row.size() != dim) throw FormatError("'gram' must be a square array matching the basis");
  }
}

}  // namespace

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON", e.byte);
  }
}

Json ToJson(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back(Json{{"c", ToString(c)}, {"e", m.exps}});
  }
  return Json{{"vars", p.vars()}, {"terms", std::move(terms)}};
}

Polynomial PolyFromJson(const Json& j) {
  auto vars = VarsFromJson(Field(j, "vars"));
  const Json& terms = Field(j, "terms");
  if (!terms.is_array()) throw FormatError("'terms' must be an array");
  std::vector<std::pair<Monomial, Rational>> list;
  for (const auto& t : terms) {
    const Json& c = Field(t, "c");
    if (!c.is_string()) throw FormatError("coefficient must be a \"num/den\" string");
    list.emplace_back(MonomialFromJson(Field(t, "e"), vars.size()), RationalFromJson(c));
  }
  return Polynomial(std::move(vars), list);
}

Json ToJson(const Pop& pop) {
  Json cons = Json::array();
  for (const auto& c : pop.constraints) {
    Json entry{{"poly", ToJson(c.poly)}, {"sense", std::string(SenseName(c.sense))}};
    if (c.squared) entry["squared"] = true;
    cons.push_back(std::move(entry));
  }
  return Json{{"objective", ToJson(pop.objective)}, {"constraints", std::move(cons)}};
}

Pop PopFromJson(const Json& j) {
  Pop pop;
  pop.objective = PolyFromJson(Field(j, "objective"));
  const Json& cons = Field(j, "constraints");
  if (!cons.is_array()) throw FormatError("'constraints' must be an array");
  for (const auto& c : cons) {
    Constraint con;
    con.poly = PolyFromJson(Field(c, "poly"));
    const Json& sense = Field(c, "sense");
    if (!sense.is_string()) throw FormatError("'sense' must be a string");
    try {
      con.sense = ParseSense(sense.get<std::string>());
    } catch (const DomainError& e) {
      throw FormatError(e.what());
    }
    if (auto it = c.find("squared"); it != c.end()) {
      if (!it->is_boolean()) throw FormatError("'squared' must be a boolean");
      con.squared = it->get<bool>();
    }
    pop.constraints.push_back(std::move(con));
  }
  pop.UnifyVars();
  return pop;
}

Json ToJson(const StableInstance& si) {
  Json comps = Json::array();
  for (const auto& p : si.sphere_test) comps.push_back(ToJson(p));
  return Json{{"set", ToJson(si.set)}, {"sphere_test", std::move(comps)}};
}

StableInstance StableFromJson(const Json& j) {
  StableInstance si;
  si.set = PopFromJson(Field(j, "set"));
  si.sphere_test = PolyListFromJson(Field(j, "sphere_test"));
  return si;
}

std::vector<Polynomial> PolyListFromJson(const Json& j) {
  const Json& list = j.is_object() ? Field(j, "polys") : j;
  if (!list.is_array()) throw FormatError("expected an array of polynomials");
  std::vector<Polynomial> out;
  for (const auto& p : list) out.push_back(PolyFromJson(p));
  return out;
}

Json ToJson(const SdpProblem& problem) {
  Json eqs = Json::array();
  for (const auto& eq : problem.equalities) {
    Json terms = Json::array();
    for (const auto& t : eq.terms) {
      terms.push_back(Json{{"block", t.block}, {"row", t.row}, {"col", t.col}, {"coef", t.coef}});
    }
    eqs.push_back(Json{{"terms", std::move(terms)}, {"rhs", eq.rhs}});
  }
  return Json{{"blocks", problem.blocks},
              {"equalities", std::move(eqs)},
              {"objective", problem.objective == SdpObjective::kMargin ? "margin" : "feasibility"}};
}

SdpProblem SdpProblemFromJson(const Json& j) {
  SdpProblem problem;
  const Json& blocks = Field(j, "blocks");
  if (!blocks.is_array()) throw FormatError("'blocks' must be an array");
  for (const auto& b : blocks) {
    const int dim = IntFromJson(b, "block dimension");
    if (dim < 0) throw FormatError("block dimensions must be nonnegative");
    problem.blocks.push_back(dim);
  }
  const Json& eqs = Field(j, "equalities");
  if (!eqs.is_array()) throw FormatError("'equalities' must be an array");
  for (const auto& e : eqs) {
    SdpEquality eq;
    const Json& terms = Field(e, "terms");
    if (!terms.is_array()) throw FormatError("'terms' must be an array");
    for (const auto& t : terms) {
      eq.terms.push_back({IntFromJson(Field(t, "block"), "block"), IntFromJson(Field(t, "row"), "row"),
                          IntFromJson(Field(t, "col"), "col"), DoubleFromJson(Field(t, "coef"), "coef")});
    }
    eq.rhs = DoubleFromJson(Field(e, "rhs"), "rhs");
    problem.equalities.push_back(std::move(eq));
  }
  if (auto it = j.find("objective"); it != j.end()) {
    if (*it == "feasibility") {
      problem.objective = SdpObjective::kFeasibility;
    } else if (*it == "margin") {
      problem.objective = SdpObjective::kMargin;
    } else {
      throw FormatError("'objective' must be \"feasibility\" or \"margin\"");
    }
  }
  try {
    problem.Validate();
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
  return problem;
}

Json ToJson(const SdpSolution& sol) {
  Json blocks = Json::array();
  for (const auto& b : sol.blocks) {
    Json rows = Json::array();
    for (int i = 0; i < b.rows(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < b.cols(); ++k) row.push_back(b(i, k));
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return Json{{"status", std::string(StatusName(sol.status))},
              {"margin", sol.margin},
              {"iterations", sol.iterations},
              {"max_eq_residual", sol.max_eq_residual},
              {"min_eigenvalue", sol.min_eigenvalue},
              {"blocks", std::move(blocks)}};
}

Json ToJson(const SosTemplate& t) {
  Json factors = Json::array();
  for (const auto& f : t.factors) factors.push_back(ToJson(f.AlignedTo(t.vars)));
  return Json{{"vars", t.vars},
              {"target", ToJson(t.target.AlignedTo(t.vars))},
              {"factors", std::move(factors)},
              {"degree_bounds", t.degree_bounds}};
}

SosTemplate TemplateFromJson(const Json& j) {
  SosTemplate t;
  t.vars = VarsFromJson(Field(j, "vars"));
  t.target = PolyFromJson(Field(j, "target"));
  t.factors = PolyListFromJson(Field(j, "factors"));
  const Json& bounds = Field(j, "degree_bounds");
  if (!bounds.is_array()) throw FormatError("'degree_bounds' must be an array");
  for (const auto& b : bounds) t.degree_bounds.push_back(IntFromJson(b, "degree bound"));
  try {
    t.Validate();
    t.target = t.target.AlignedTo(t.vars);
    for (auto& f : t.factors) f = f.AlignedTo(t.vars);
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
  return t;
}

Json ToJson(const SosCertificate& cert) {
  Json mults = Json::array();
  for (const auto& m : cert.multipliers) {
    Json rows = Json::array();
    for (int i = 0; i < m.gram.rows(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < m.gram.cols(); ++k) row.push_back(m.gram(i, k));
      rows.push_back(std::move(row));
    }
    mults.push_back(Json{{"basis", BasisToJson(m.basis)}, {"gram", std::move(rows)}});
  }
  return Json{{"template", ToJson(cert.tmpl)}, {"multipliers", std::move(mults)}, {"form", "numeric"}};
}

Json ToJson(const RationalCertificate& cert) {
  Json mults = Json::array();
  for (const auto& m : cert.multipliers) {
    Json rows = Json::array();
    for (int i = 0; i < m.gram.size(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < m.gram.size(); ++k) row.push_back(ToString(m.gram(i, k)));
      rows.push_back(std::move(row));
    }
    mults.push_back(Json{{"basis", BasisToJson(m.basis)}, {"gram", std::move(rows)}});
  }
  return Json{{"template", ToJson(cert.tmpl)}, {"multipliers", std::move(mults)}, {"form", "exact"}};
}

AnyCertificate CertificateFromJson(const Json& j) {
  SosTemplate t = TemplateFromJson(Field(j, "template"));
  const Json& form = Field(j, "form");
  if (form != "numeric" && form != "exact") throw FormatError("'form' must be \"numeric\" or \"exact\"");
  const Json& mults = Field(j, "multipliers");
  if (!mults.is_array() || mults.size() != t.factors.size()) {
    throw FormatError("'multipliers' must have one entry per factor");
  }
  const bool exact = form == "exact";
  SosCertificate numeric;
  RationalCertificate rational;
  for (const auto& m : mults) {
    auto basis = BasisFromJson(Field(m, "basis"), t.vars.size());
    const Json& gram = Field(m, "gram");
    const std::size_t dim = basis.size();
    CheckSquare(gram, dim);
    t.basis_overrides.emplace_back(basis);
    if (exact) {
      RationalMatrix g(static_cast<int>(dim));
      for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) g(a, b) = RationalFromJson(gram[a][b]);
      }
      rational.multipliers.push_back({std::move(basis), std::move(g)});
    } else {
      Eigen::MatrixXd g(dim, dim);
      for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) g(a, b) = DoubleFromJson(gram[a][b], "gram entry");
      }
      numeric.multipliers.push_back({std::move(basis), std::move(g)});
    }
  }
  if (exact) {
    rational.tmpl = std::move(t);
    return rational;
  }
  numeric.tmpl = std::move(t);
  numeric.residual = IdentityResidual(numeric);
  return numeric;
}

}  // namespace popcert
