#include "popcert/exactcert.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "popcert/errors.h"

namespace popcert {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : RationalMatrix(static_cast<int>(rows.size())) {
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) throw DomainError("matrix must be square");
    int j = 0;
    for (const auto& v : row) (*this)(i, j++) = v;
    ++i;
  }
}

bool RationalMatrix::IsSymmetric() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

Eigen::MatrixXd RationalMatrix::ToDouble() const {
  Eigen::MatrixXd out(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out(i, j) = (*this)(i, j).get_d();
  }
  return out;
}

bool CheckPsdExact(const RationalMatrix& input) {
  if (!input.IsSymmetric()) throw DomainError("PSD check needs a symmetric matrix");
  RationalMatrix a = input;
  const int n = a.size();
  std::vector<int> live(n);
  for (int i = 0; i < n; ++i) live[i] = i;
  while (!live.empty()) {
    // Largest remaining diagonal as pivot.
    int best = -1;
    for (int idx = 0; idx < static_cast<int>(live.size()); ++idx) {
      const Rational& d = a(live[idx], live[idx]);
      if (d < 0) return false;
      if (d > 0 && (best < 0 || d > a(live[best], live[best]))) best = idx;
    }
    if (best < 0) {
      // All remaining diagonals are zero: PSD only if the remaining block is zero.
      for (int i : live) {
        for (int j : live) {
          if (a(i, j) != 0) return false;
        }
      }
      return true;
    }
    const int k = live[best];
    live.erase(live.begin() + best);
    const Rational pivot = a(k, k);
    for (int i : live) {
      if (a(i, k) == 0) continue;
      const Rational l = a(i, k) / pivot;
      for (int j : live) {
        if (a(k, j) != 0) a(i, j) -= l * a(k, j);
      }
    }
  }
  return true;
}

Polynomial GramToPolynomial(const std::vector<std::string>& vars, const RationalMultiplier& m) {
  std::vector<std::pair<Monomial, Rational>> terms;
  const int dim = static_cast<int>(m.basis.size());
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      if (m.gram(a, b) != 0) terms.emplace_back(m.basis[a] * m.basis[b], m.gram(a, b));
    }
  }
  return Polynomial(vars, terms);
}

VerifyReport VerifyIdentity(const RationalCertificate& cert) {
  VerifyReport report;
  const auto& t = cert.tmpl;
  if (cert.multipliers.size() != t.factors.size()) {
    report.diagnostic = "multiplier count does not match factor count";
    return report;
  }
  Polynomial total(t.vars);
  for (std::size_t j = 0; j < cert.multipliers.size(); ++j) {
    const auto& m = cert.multipliers[j];
    if (m.gram.size() != static_cast<int>(m.basis.size())) {
      report.diagnostic = "multiplier " + std::to_string(j) + ": Gram size does not match basis";
      return report;
    }
    for (const auto& mono : m.basis) {
      if (mono.size() != t.vars.size()) {
        report.diagnostic = "multiplier " + std::to_string(j) + ": basis monomial has wrong arity";
        return report;
      }
      if (2 * mono.degree() > t.degree_bounds[j]) {
        report.diagnostic = "multiplier " + std::to_string(j) + ": basis exceeds degree bound";
        return report;
      }
    }
    if (!m.gram.IsSymmetric()) {
      report.diagnostic = "multiplier " + std::to_string(j) + ": Gram matrix not symmetric";
      return report;
    }
    total += GramToPolynomial(t.vars, m) * t.factors[j].AlignedTo(t.vars);
  }
  const Polynomial diff = total - t.target.AlignedTo(t.vars);
  if (!diff.is_zero()) {
    const auto& [mono, c] = *diff.terms().begin();
    report.mismatch = mono;
    Polynomial term(t.vars, std::vector<std::pair<Monomial, Rational>>{{mono, Rational(1)}});
    report.diagnostic = "identity mismatch at monomial " + term.ToText() + ": expansion minus target = " +
                        ToString(c);
    return report;
  }
  for (std::size_t j = 0; j < cert.multipliers.size(); ++j) {
    if (!CheckPsdExact(cert.multipliers[j].gram)) {
      report.diagnostic = "multiplier " + std::to_string(j) + ": Gram matrix is not PSD";
      return report;
    }
  }
  report.ok = true;
  return report;
}

namespace {

/// Upper-triangle Gram coordinates of every multiplier.
struct Coordinate {
  int block;
  int a;
  int b;
};

/// Exact coefficient-matching system A x = t over the Gram coordinates.
struct ExactSystem {
  std::vector<Coordinate> coords;
  std::vector<Monomial> rows;
  std::vector<std::vector<std::pair<int, Rational>>> row_entries;  // (coord, coefficient)
  std::vector<Rational> rhs;
};

ExactSystem BuildExactSystem(const SosTemplate& t, const std::vector<std::vector<Monomial>>& bases) {
  ExactSystem sys;
  std::map<Monomial, std::vector<std::pair<int, Rational>>, GrlexLess> rows;
  for (std::size_t j = 0; j < bases.size(); ++j) {
    const Polynomial factor = t.factors[j].AlignedTo(t.vars);
    const int dim = static_cast<int>(bases[j].size());
    for (int a = 0; a < dim; ++a) {
      for (int b = a; b < dim; ++b) {
        const int coord = static_cast<int>(sys.coords.size());
        sys.coords.push_back({static_cast<int>(j), a, b});
        const Monomial ab = bases[j][a] * bases[j][b];
        for (const auto& [fm, fc] : factor.terms()) {
          rows[ab * fm].emplace_back(coord, a == b ? fc : Rational(2 * fc));
        }
      }
    }
  }
  const Polynomial target = t.target.AlignedTo(t.vars);
  for (const auto& [m, c] : target.terms()) rows[m];
  for (auto& [m, entries] : rows) {
    sys.rows.push_back(m);
    sys.row_entries.push_back(std::move(entries));
    sys.rhs.push_back(target.coefficient(m));
  }
  return sys;
}

/// Solves the PSD system K y = r exactly (K sparse symmetric) by LDL' with
/// minimum-degree pivot order; zero pivots mark dependent rows. Returns nullopt
/// when the system is inconsistent.
std::optional<std::vector<Rational>> SolvePsdSystem(std::vector<std::map<int, Rational>> k,
                                                    std::vector<Rational> r) {
  const int m = static_cast<int>(k.size());
  std::vector<bool> done(m, false);
  std::vector<int> order;
  std::vector<std::map<int, Rational>> pivot_rows(m);
  for (int step = 0; step < m; ++step) {
    int p = -1;
    std::size_t best = 0;
    for (int i = 0; i < m; ++i) {
      if (done[i]) continue;
      if (p < 0 || k[i].size() < best) {
        p = i;
        best = k[i].size();
      }
    }
    done[p] = true;
    order.push_back(p);
    auto diag_it = k[p].find(p);
    if (diag_it == k[p].end() || diag_it->second == 0) {
      // PSD: a zero pivot forces the whole remaining row to vanish.
      for (const auto& [j, v] : k[p]) {
        if (!done[j] && v != 0) return std::nullopt;
      }
      if (r[p] != 0) return std::nullopt;
      pivot_rows[p].clear();
      continue;
    }
    const Rational pivot = diag_it->second;
    std::vector<std::pair<int, Rational>> nbrs;
    for (const auto& [j, v] : k[p]) {
      if (!done[j] && v != 0) nbrs.emplace_back(j, v);
    }
    for (const auto& [i, vi] : nbrs) {
      const Rational l = vi / pivot;
      for (const auto& [j, vj] : nbrs) {
        Rational& e = k[i][j];
        e -= l * vj;
        if (e == 0) k[i].erase(j);
      }
      k[i].erase(p);
      r[i] -= l * r[p];
    }
    pivot_rows[p] = std::move(k[p]);
    k[p].clear();
  }
  std::vector<Rational> y(m);
  std::vector<bool> solved(m, false);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int p = *it;
    const auto& row = pivot_rows[p];
    auto diag_it = row.find(p);
    if (diag_it == row.end() || diag_it->second == 0) {
      y[p] = 0;
      solved[p] = true;
      continue;
    }
    Rational acc = r[p];
    for (const auto& [j, v] : row) {
      if (j != p && solved[j]) acc -= v * y[j];
    }
    y[p] = acc / diag_it->second;
    solved[p] = true;
  }
  return y;
}

/// Exact least-squares correction of x onto {A x = t}.
bool ProjectExact(const ExactSystem& sys, std::vector<Rational>& x) {
  const int m = static_cast<int>(sys.rows.size());
  std::vector<Rational> resid(m);
  for (int i = 0; i < m; ++i) {
    Rational s = -sys.rhs[i];
    for (const auto& [c, a] : sys.row_entries[i]) s += a * x[c];
    resid[i] = s;
  }
  if (std::all_of(resid.begin(), resid.end(), [](const Rational& v) { return v == 0; })) return true;
  // K = A A' (sparse): rows sharing a coordinate interact.
  std::vector<std::vector<std::pair<int, Rational>>> by_coord(sys.coords.size());
  for (int i = 0; i < m; ++i) {
    for (const auto& [c, a] : sys.row_entries[i]) by_coord[c].emplace_back(i, a);
  }
  std::vector<std::map<int, Rational>> k(m);
  for (const auto& list : by_coord) {
    for (const auto& [i, ai] : list) {
      for (const auto& [j, aj] : list) k[i][j] += ai * aj;
    }
  }
  auto y = SolvePsdSystem(std::move(k), resid);
  if (!y) return false;
  for (std::size_t c = 0; c < by_coord.size(); ++c) {
    Rational s(0);
    for (const auto& [i, a] : by_coord[c]) s += a * (*y)[i];
    x[c] -= s;
  }
  return true;
}

RationalCertificate Assemble(const SosTemplate& t, const std::vector<std::vector<Monomial>>& bases,
                             const ExactSystem& sys, const std::vector<Rational>& x) {
  RationalCertificate cert;
  cert.tmpl = t;
  cert.tmpl.basis_overrides.assign(bases.begin(), bases.end());
  for (const auto& basis : bases) {
    cert.multipliers.push_back({basis, RationalMatrix(static_cast<int>(basis.size()))});
  }
  for (std::size_t c = 0; c < sys.coords.size(); ++c) {
    const auto& co = sys.coords[c];
    cert.multipliers[co.block].gram(co.a, co.b) = x[c];
    cert.multipliers[co.block].gram(co.b, co.a) = x[c];
  }
  return cert;
}

/// Best rational approximation with denominator <= max_den (continued fractions).
std::optional<Rational> SnapSimple(double v, long max_den, double tol) {
  if (!std::isfinite(v)) return std::nullopt;
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = v;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(rest);
    if (std::fabs(a_d) > 1e15) break;
    const long a = static_cast<long>(a_d);
    const long h2 = a * h1 + h0;
    const long k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - v) <= tol) {
      Rational r(h1, k1);
      r.canonicalize();
      return r;
    }
    const double frac = rest - a_d;
    if (frac < 1e-300) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

RationalizeResult Rationalize(const SosCertificate& cert, int denom_power) {
  RationalizeResult out;
  const SosTemplate& t = cert.tmpl;
  std::vector<std::vector<Monomial>> bases;
  for (const auto& m : cert.multipliers) bases.push_back(m.basis);
  const ExactSystem sys = BuildExactSystem(t, bases);

  // Certificates whose entries are visibly simple fractions are taken verbatim.
  {
    std::vector<Rational> x(sys.coords.size());
    bool snapped = true;
    for (std::size_t c = 0; c < sys.coords.size() && snapped; ++c) {
      const auto& co = sys.coords[c];
      const double v = cert.multipliers[co.block].gram(co.a, co.b);
      auto r = SnapSimple(v, 1000, 1e-12 * std::max(1.0, std::fabs(v)));
      if (r) {
        x[c] = *r;
      } else {
        snapped = false;
      }
    }
    if (snapped) {
      RationalCertificate candidate = Assemble(t, bases, sys, x);
      if (VerifyIdentity(candidate)) {
        out.certificate = std::move(candidate);
        out.diagnostic = "entries snapped to small-denominator fractions";
        return out;
      }
    }
  }

  if (!(cert.margin > 0)) {
    out.diagnostic = "certificate has no positive margin; rounding would not preserve PSD-ness";
    out.suggested_denom_power = denom_power;
    return out;
  }
  for (int bump : {0, 8, 16}) {
    const int power = denom_power + bump;
    // Rounding moves entries by up to 2^-(p+1); a smaller margin cannot absorb it.
    if (cert.margin <= std::ldexp(1.0, -power)) continue;
    std::vector<Rational> x(sys.coords.size());
    for (std::size_t c = 0; c < sys.coords.size(); ++c) {
      const auto& co = sys.coords[c];
      x[c] = RoundToDyadic(cert.multipliers[co.block].gram(co.a, co.b), power);
    }
    if (!ProjectExact(sys, x)) {
      out.diagnostic = "coefficient-matching system is inconsistent; no exact certificate exists "
                       "with these bases";
      out.suggested_denom_power = denom_power;
      return out;
    }
    RationalCertificate candidate = Assemble(t, bases, sys, x);
    bool psd = true;
    for (const auto& m : candidate.multipliers) psd = psd && CheckPsdExact(m.gram);
    if (psd) {
      out.certificate = std::move(candidate);
      out.denom_power = power;
      out.diagnostic = "rounded to 2^-" + std::to_string(power) + " and projected exactly";
      return out;
    }
  }
  // Rounding perturbs entries by about 2^-p times the total Gram dimension.
  std::size_t dim = 0;
  for (const auto& b : bases) dim += b.size();
  const double need = std::log2(static_cast<double>(std::max<std::size_t>(dim, 1)) / cert.margin);
  out.suggested_denom_power = std::max(denom_power + 24, static_cast<int>(std::ceil(need)) + 4);
  std::ostringstream margin_text;
  margin_text << cert.margin;
  out.diagnostic = "margin " + margin_text.str() + " too small relative to rounding at 2^-" +
                   std::to_string(denom_power) + " through 2^-" + std::to_string(denom_power + 16) +
                   "; try denom_power >= " + std::to_string(out.suggested_denom_power);
  return out;
}

}  // namespace popcert
