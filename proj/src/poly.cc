#include "popcert/poly.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "popcert/errors.h"
#include "popcert/json_io.h"

namespace popcert {

int Monomial::degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out(exps);
  for (std::size_t i = 0; i < exps.size(); ++i) out.exps[i] += other.exps[i];
  return out;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(b.exps.begin(), b.exps.end(), a.exps.begin(), a.exps.end());
}

std::vector<std::string> UnionVars(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

Polynomial::Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (std::size_t j = i + 1; j < vars_.size(); ++j) {
      if (vars_[i] == vars_[j]) throw FormatError("duplicate variable '" + vars_[i] + "'");
    }
  }
}

Polynomial::Polynomial(std::vector<std::string> vars,
                       std::span<const std::pair<Monomial, Rational>> terms)
    : Polynomial(std::move(vars)) {
  for (const auto& [m, c] : terms) {
    if (m.size() != vars_.size()) {
      throw FormatError("exponent vector of length " + std::to_string(m.size()) +
                        " does not match " + std::to_string(vars_.size()) + " variables");
    }
    if (std::any_of(m.exps.begin(), m.exps.end(), [](int e) { return e < 0; })) {
      throw FormatError("negative exponent");
    }
    AddTerm(m, c);
  }
}

Polynomial Polynomial::Constant(const Rational& c, std::vector<std::string> vars) {
  Polynomial p(std::move(vars));
  p.AddTerm(Monomial::One(p.num_vars()), c);
  return p;
}

Polynomial Polynomial::Variable(const std::string& name) {
  Polynomial p({name});
  p.AddTerm(Monomial({1}), Rational(1));
  return p;
}

void Polynomial::AddTerm(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::ExtendVars(const std::vector<std::string>& more) {
  const auto merged = UnionVars(vars_, more);
  if (merged.size() == vars_.size()) return;
  const std::size_t extra = merged.size() - vars_.size();
  TermMap extended;
  for (auto& [m, c] : terms_) {
    Monomial e = m;
    e.exps.resize(e.exps.size() + extra, 0);
    extended.emplace_hint(extended.end(), std::move(e), c);
  }
  terms_ = std::move(extended);
  vars_ = merged;
}

int Polynomial::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Rational Polynomial::max_abs_coefficient() const {
  Rational best(0);
  for (const auto& [m, c] : terms_) best = std::max(best, Rational(abs(c)));
  return best;
}

Polynomial Polynomial::AlignedTo(const std::vector<std::string>& vars) const {
  std::vector<int> where(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it == vars.end()) {
      throw DomainError("variable '" + vars_[i] + "' missing from target variable list");
    }
    where[i] = static_cast<int>(it - vars.begin());
  }
  Polynomial out(vars);
  for (const auto& [m, c] : terms_) {
    Monomial e = Monomial::One(vars.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) e.exps[where[i]] = m.exps[i];
    out.terms_.emplace(std::move(e), c);
  }
  return out;
}

Polynomial Polynomial::Substitute(std::string_view var, const Rational& value) const {
  const int idx = var_index(var);
  if (idx < 0) return *this;
  std::vector<std::string> rest = vars_;
  rest.erase(rest.begin() + idx);
  Polynomial out(rest);
  for (const auto& [m, c] : terms_) {
    Monomial e = m;
    const int power = e.exps[idx];
    e.exps.erase(e.exps.begin() + idx);
    out.AddTerm(e, c * popcert::Pow(value, static_cast<unsigned>(power)));
  }
  return out;
}

namespace {

template <typename T, typename PowFn>
T EvaluateTerms(const Polynomial& p, std::span<const T> point, PowFn pow_fn) {
  if (point.size() != p.num_vars()) {
    throw DomainError("point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                      std::to_string(p.num_vars()) + " variables");
  }
  // powers[i][e] = point[i]^e
  std::vector<std::vector<T>> powers(point.size());
  const int deg = p.degree();
  for (std::size_t i = 0; i < point.size(); ++i) {
    powers[i].reserve(deg + 1);
    powers[i].push_back(T(1));
    for (int e = 1; e <= deg; ++e) powers[i].push_back(powers[i].back() * point[i]);
  }
  T total(0);
  for (const auto& [m, c] : p.terms()) {
    T term = pow_fn(c);
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] != 0) term *= powers[i][m.exps[i]];
    }
    total += term;
  }
  return total;
}

}  // namespace

Rational Polynomial::Evaluate(std::span<const Rational> point) const {
  return EvaluateTerms<Rational>(*this, point, [](const Rational& c) { return c; });
}

double Polynomial::Evaluate(std::span<const double> point) const {
  return EvaluateTerms<double>(*this, point, [](const Rational& c) { return c.get_d(); });
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  ExtendVars(other.vars_);
  const Polynomial aligned = other.AlignedTo(vars_);
  for (const auto& [m, c] : aligned.terms_) AddTerm(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial& Polynomial::operator*=(const Rational& scale) {
  if (scale == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scale;
  return *this;
}

Polynomial operator+(Polynomial a, const Rational& c) {
  a.AddTerm(Monomial::One(a.num_vars()), c);
  return a;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(UnionVars(a.vars_, b.vars_));
  const Polynomial la = a.AlignedTo(out.vars_);
  const Polynomial lb = b.AlignedTo(out.vars_);
  for (const auto& [ma, ca] : la.terms_) {
    for (const auto& [mb, cb] : lb.terms_) out.AddTerm(ma * mb, ca * cb);
  }
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  const auto vars = UnionVars(a.vars_, b.vars_);
  return a.AlignedTo(vars).terms_ == b.AlignedTo(vars).terms_;
}

Polynomial Polynomial::Pow(unsigned exponent) const {
  Polynomial out = Constant(Rational(1), vars_);
  for (unsigned i = 0; i < exponent; ++i) out = out * *this;
  return out;
}

std::string Polynomial::ToText() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1 && m.degree() > 0;
    if (!unit) os << mag.get_str();
    bool need_star = !unit;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (need_star) os << "*";
      os << vars_[i];
      if (m.exps[i] > 1) os << "^" << m.exps[i];
      need_star = true;
    }
  }
  return os.str();
}

Polynomial Homogenize(const Polynomial& p, const std::string& newvar) {
  if (p.var_index(newvar) >= 0) {
    throw DomainError("homogenizing variable '" + newvar + "' already in use");
  }
  std::vector<std::string> vars{newvar};
  vars.insert(vars.end(), p.vars().begin(), p.vars().end());
  const int deg = p.degree();
  std::vector<std::pair<Monomial, Rational>> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> e{deg - m.degree()};
    e.insert(e.end(), m.exps.begin(), m.exps.end());
    terms.emplace_back(Monomial(std::move(e)), c);
  }
  return Polynomial(std::move(vars), terms);
}

std::vector<std::pair<int, Polynomial>> HomogeneousComponents(const Polynomial& p) {
  std::map<int, std::vector<std::pair<Monomial, Rational>>> by_degree;
  for (const auto& [m, c] : p.terms()) by_degree[m.degree()].emplace_back(m, c);
  std::vector<std::pair<int, Polynomial>> out;
  for (const auto& [d, terms] : by_degree) out.emplace_back(d, Polynomial(p.vars(), terms));
  return out;
}

Polynomial SumOfSquares(const std::vector<std::string>& vars) {
  std::vector<std::pair<Monomial, Rational>> terms;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    Monomial m = Monomial::One(vars.size());
    m.exps[i] = 2;
    terms.emplace_back(std::move(m), Rational(1));
  }
  return Polynomial(vars, terms);
}

Polynomial ParsePoly(std::string_view text) { return PolyFromJson(ParseJson(text)); }

std::string SerializePoly(const Polynomial& p) { return ToJson(p).dump(); }

}  // namespace popcert
