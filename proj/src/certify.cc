#include "popcert/certify.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "popcert/errors.h"

namespace popcert {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Polynomial One(const std::vector<std::string>& vars) { return Polynomial::Constant(Rational(1), vars); }

int FloorEven(int v) { return std::max(v, 0) / 2 * 2; }

BigInt PowBig(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

/// Nonzero vectors of {-1,0,1}^n: smaller support first, then lexicographic with
/// 1 before -1 before 0.
std::vector<std::vector<int>> LatticeDirections(std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 1; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      const int digit = static_cast<int>(c % 3);
      c /= 3;
      cur[n - 1 - i] = digit == 0 ? 0 : (digit == 1 ? 1 : -1);
    }
    out.push_back(cur);
  }
  auto key = [](int v) { return v == 1 ? 0 : (v == -1 ? 1 : 2); };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    const auto sa = std::count_if(a.begin(), a.end(), [](int v) { return v != 0; });
    const auto sb = std::count_if(b.begin(), b.end(), [](int v) { return v != 0; });
    if (sa != sb) return sa < sb;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return key(a[i]) < key(b[i]);
    }
    return false;
  });
  return out;
}

constexpr std::size_t kLatticeMaxVars = 10;

std::optional<Rational> ExactSqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  BigInt num = q.get_num();
  BigInt den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  BigInt rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

Json RationalsToJson(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(ToString(x));
  return out;
}

std::vector<std::vector<std::size_t>> Subsets(std::size_t count, bool restricted) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << count); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < count; ++i) {
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    }
    if (restricted && s.size() > 1) continue;
    out.push_back(std::move(s));
  }
  // Fewer factors first keeps the template readable.
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

/// Appends products over subsets of `ineqs`, then +h and -h for every equality.
void AppendFactors(SosTemplate& t, const std::vector<Polynomial>& ineqs, const std::vector<Polynomial>& eqs,
                   int bound, bool restricted) {
  for (const auto& subset : Subsets(ineqs.size(), restricted)) {
    Polynomial prod = One(t.vars);
    for (std::size_t i : subset) prod = prod * ineqs[i];
    t.factors.push_back(prod.AlignedTo(t.vars));
    t.degree_bounds.push_back(bound);
  }
  for (const auto& h : eqs) {
    t.factors.push_back(h.AlignedTo(t.vars));
    t.degree_bounds.push_back(bound);
    t.factors.push_back((-h).AlignedTo(t.vars));
    t.degree_bounds.push_back(bound);
  }
}

std::vector<std::string> VarsOf(const std::vector<Polynomial>& ps, std::vector<std::string> vars = {}) {
  for (const auto& p : ps) vars = UnionVars(vars, p.vars());
  return vars;
}

/// Drops basis monomials whose Gram diagonal vanishes relative to the largest one.
/// Returns the number removed.
std::size_t TrimBases(SosTemplate& t, const CompiledIdentity& compiled, const SdpSolution& sol) {
  double max_diag = 0.0;
  for (const auto& b : sol.blocks) {
    for (int i = 0; i < b.rows(); ++i) max_diag = std::max(max_diag, b(i, i));
  }
  const double threshold = 1e-5 * std::max(max_diag, 1e-300);
  std::size_t removed = 0;
  t.basis_overrides.resize(t.factors.size());
  for (std::size_t j = 0; j < compiled.bases.size(); ++j) {
    std::vector<Monomial> kept;
    for (std::size_t i = 0; i < compiled.bases[j].size(); ++i) {
      if (sol.blocks[j](i, i) > threshold) {
        kept.push_back(compiled.bases[j][i]);
      } else {
        ++removed;
      }
    }
    t.basis_overrides[j] = std::move(kept);
  }
  return removed;
}

}  // namespace

BigInt BitSize(const BigInt& e) {
  if (e < 1) throw DomainError("bit() needs a positive argument");
  return BigInt(static_cast<unsigned long>(mpz_sizeinbase(e.get_mpz_t(), 2)));
}

std::string RadiusBound::ToText() const {
  std::string out;
  if (radicand != 1) out += "sqrt(" + radicand.get_str() + ")*";
  out += mantissa.get_str() + "*2^" + exponent.get_str();
  return out;
}

RadiusBound ComputeRadiusBound(int n, int d, int m, int tau) {
  if (n < 1 || d < 1 || m < 1 || tau < 1) {
    throw DomainError("radius bound needs n, d, m, tau >= 1");
  }
  RadiusBound rb;
  rb.n = n;
  rb.d = d;
  rb.m = m;
  rb.tau = tau;
  const BigInt a = BigInt(2 * d + 1) * PowBig(BigInt(2 * d), static_cast<unsigned long>(n - 1));
  const BigInt inner = BigInt(2 * tau) + BitSize(a) + BigInt(n + 1) * BitSize(BigInt(d + 1)) + BitSize(BigInt(m));
  rb.exponent = a * BigInt(2 * n * d + 2) * inner;
  rb.mantissa = a + 1;
  rb.radicand = n;
  if (mpz_perfect_square_p(rb.radicand.get_mpz_t())) {
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), rb.radicand.get_mpz_t());
    rb.mantissa *= root;
    rb.radicand = 1;
  }
  // R*^2 = radicand * mantissa^2 * 4^exponent; find the least j with radicand * mantissa^2 <= 4^j.
  const BigInt v = rb.radicand * rb.mantissa * rb.mantissa;
  unsigned long j = 0;
  BigInt pow4 = 1;
  while (pow4 < v) {
    pow4 *= 4;
    ++j;
  }
  rb.ceil_log2 = rb.exponent + BigInt(j);
  return rb;
}

RadiusInputs InputsOf(const Pop& set) {
  RadiusInputs in;
  std::vector<std::string> vars = set.objective.vars();
  for (const auto& c : set.constraints) vars = UnionVars(vars, c.poly.vars());
  in.n = static_cast<int>(vars.size());
  in.m = static_cast<int>(set.constraints.size());
  for (const auto& c : set.constraints) {
    in.d = std::max(in.d, c.poly.degree());
    BigInt lcm = 1;
    for (const auto& [mono, coef] : c.poly.terms()) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coef.get_den_mpz_t());
    }
    for (const auto& [mono, coef] : c.poly.terms()) {
      BigInt scaled = abs(coef.get_num()) * (lcm / coef.get_den());
      in.tau = std::max(in.tau, static_cast<int>(BitSize(scaled).get_si()));
    }
  }
  return in;
}

std::string_view OutcomeName(CertifyOutcome::Status s) {
  return s == CertifyOutcome::Status::kCertified ? "certified" : "inconclusive";
}

CertifyOutcome CertifyTemplate(const SosTemplate& t0, const CertifyOptions& opts) {
  const auto start = Clock::now();
  CertifyOutcome out;
  t0.Validate();
  out.tmpl = t0;
  SosTemplate t = t0;
  Json rounds = Json::array();
  std::size_t trimmed = 0;
  for (int round = 0; round <= opts.trim_rounds; ++round) {
    const CompiledIdentity compiled = CompileIdentity(t);
    if (compiled.infeasible_by_construction) {
      out.diagnostic = compiled.diagnostic;
      break;
    }
    const int dim = compiled.problem.total_dimension();
    if (dim > opts.sdp.dimension_cap) {
      out.diagnostic = "total Gram dimension " + std::to_string(dim) + " exceeds cap " +
                       std::to_string(opts.sdp.dimension_cap);
      out.checks["cap_exceeded"] = true;
      break;
    }
    const SdpSolution sol = SolveFeasibility(compiled.problem, opts.sdp);
    rounds.push_back(Json{{"status", std::string(StatusName(sol.status))},
                          {"margin", sol.margin},
                          {"iterations", sol.iterations},
                          {"max_eq_residual", sol.max_eq_residual},
                          {"total_dimension", dim}});
    if (sol.status != SdpStatus::kInconclusive) {
      const SosCertificate numeric = ExtractCertificate(t, compiled, sol);
      const RationalizeResult rr = Rationalize(numeric, opts.denom_power);
      out.checks["rationalization"] = rr.diagnostic;
      if (rr.certificate) {
        const VerifyReport vr = VerifyIdentity(*rr.certificate);
        if (vr) {
          out.status = CertifyOutcome::Status::kCertified;
          out.certificate = *rr.certificate;
          out.checks["identity_verified"] = true;
          out.checks["psd_exact"] = true;
          out.checks["denom_power"] = rr.denom_power;
          out.diagnostic.clear();
          break;
        }
        out.diagnostic = vr.diagnostic;
        break;
      }
      out.diagnostic = rr.diagnostic;
      if (sol.status == SdpStatus::kStrictlyFeasible) break;
    } else {
      out.diagnostic = "solver inconclusive (margin " + std::to_string(sol.margin) + ")";
    }
    // A margin pinned at zero means a face of the cone is forced; restrict to it.
    double scale = 1.0;
    for (const auto& eq : compiled.problem.equalities) scale = std::max(scale, std::fabs(eq.rhs));
    if (sol.margin < -1e-6 * scale || round == opts.trim_rounds) break;
    const std::size_t removed = TrimBases(t, compiled, sol);
    if (removed == 0) break;
    trimmed += removed;
  }
  out.checks["solver_rounds"] = std::move(rounds);
  out.checks["trimmed_monomials"] = trimmed;
  out.seconds = SecondsSince(start);
  return out;
}

SosTemplate CoercivityTemplate(const Polynomial& p, int r) {
  if (r < 1) throw DomainError("coercivity level r must be >= 1");
  if (p.var_index("gamma") >= 0) throw DomainError("variable name 'gamma' is reserved");
  SosTemplate t;
  t.vars = p.vars();
  t.vars.push_back("gamma");
  const Polynomial gamma = Polynomial::Variable("gamma");
  const Polynomial sub = (gamma - p).AlignedTo(t.vars);
  const Polynomial ball =
      (SumOfSquares(p.vars()) - gamma.Pow(2 * r) - Pow(Rational(2), r)).AlignedTo(t.vars);
  const int d = p.degree();
  t.target = Polynomial::Constant(Rational(-1), t.vars);
  t.factors = {One(t.vars), sub, ball, (sub * ball).AlignedTo(t.vars)};
  t.degree_bounds = {4 * r, FloorEven(4 * r - d), 2 * r, FloorEven(2 * r - d)};
  return t;
}

CertifyOutcome CertifyCoercive(const Polynomial& p, int r, const CertifyOptions& opts) {
  CertifyOutcome out = CertifyTemplate(CoercivityTemplate(p, r), opts);
  out.level = r;
  if (out.certified()) {
    out.checks["implies"] = "every sublevel set {p <= gamma} lies in the ball |x|^2 <= gamma^" +
                            std::to_string(2 * r) + " + " + std::to_string(1 << std::min(r, 30));
  }
  return out;
}

SosTemplate CompactTemplate(const Pop& set, int r, const Rational& radius, bool restricted, int product_cap) {
  if (r < 1) throw DomainError("compactness level r must be >= 1");
  std::vector<std::string> vars = set.objective.vars();
  std::vector<Polynomial> ineqs;
  std::vector<Polynomial> eqs;
  for (const auto& c : set.constraints) {
    vars = UnionVars(vars, c.poly.vars());
    switch (c.sense) {
      case Sense::kGt0: throw DomainError("strict constraints are not supported; the set must be closed");
      case Sense::kGe0: ineqs.push_back(c.poly); break;
      case Sense::kEq0: eqs.push_back(c.poly); break;
    }
  }
  if (!restricted && static_cast<int>(ineqs.size()) > product_cap) {
    throw DomainError(std::to_string(ineqs.size()) + " inequalities exceed the product cap " +
                      std::to_string(product_cap) + "; use the restricted template");
  }
  SosTemplate t;
  t.vars = vars;
  t.target = Polynomial::Constant(Rational(-1), vars);
  ineqs.push_back((SumOfSquares(vars) - radius - Rational(1)).AlignedTo(vars));
  AppendFactors(t, ineqs, eqs, 2 * r, restricted);
  return t;
}

CertifyOutcome CertifyCompact(const Pop& set, int r, const std::optional<Rational>& radius,
                              const CertifyOptions& opts) {
  if (radius) {
    if (*radius < 0) throw DomainError("radius must be nonnegative");
    CertifyOutcome out = CertifyTemplate(CompactTemplate(set, r, *radius, opts.restricted, opts.product_cap), opts);
    out.level = r;
    out.checks["radius"] = ToString(*radius);
    if (out.certified()) out.checks["implies"] = "set lies in the open ball |x|^2 < R + 1";
    return out;
  }
  const auto start = Clock::now();
  const RadiusInputs in = InputsOf(set);
  const RadiusBound rb = ComputeRadiusBound(in.n, in.d, in.m, in.tau);
  // Completeness mode: R = 2^ceil_log2(R*) is astronomically large; report only.
  Rational big(1);
  mpz_mul_2exp(big.get_num_mpz_t(), big.get_num_mpz_t(), rb.ceil_log2.get_ui());
  CertifyOutcome out;
  out.level = r;
  out.tmpl = CompactTemplate(set, r, big, opts.restricted, opts.product_cap);
  const CompiledIdentity compiled = CompileIdentity(*out.tmpl);
  out.diagnostic = "completeness mode: template built with the worst-case radius, not solved";
  out.checks["radius_bound"] = Json{{"value", rb.ToText()},
                                    {"ceil_log2", rb.ceil_log2.get_str()},
                                    {"inputs", Json{{"n", in.n}, {"d", in.d}, {"m", in.m}, {"tau", in.tau}}},
                                    {"convention", rb.convention}};
  out.checks["radius"] = "2^" + rb.ceil_log2.get_str();
  out.checks["template"] = Json{{"multipliers", compiled.problem.blocks.size()},
                                {"total_dimension", compiled.problem.total_dimension()},
                                {"equalities", compiled.problem.equalities.size()}};
  out.seconds = SecondsSince(start);
  return out;
}

SosTemplate ArchimedeanTemplate(const std::vector<Polynomial>& gs, int r, const Rational& radius) {
  if (r < 0) throw DomainError("Archimedean level r must be >= 0");
  if (radius <= 0) throw DomainError("radius R must be positive");
  SosTemplate t;
  t.vars = VarsOf(gs);
  t.target = (Polynomial::Constant(radius, t.vars) - SumOfSquares(t.vars)).AlignedTo(t.vars);
  t.factors.push_back(One(t.vars));
  t.degree_bounds.push_back(2 * r);
  for (const auto& g : gs) {
    t.factors.push_back(g.AlignedTo(t.vars));
    t.degree_bounds.push_back(2 * r);
  }
  return t;
}

CertifyOutcome CertifyArchimedean(const std::vector<Polynomial>& gs, int r, const Rational& radius,
                                  const CertifyOptions& opts) {
  CertifyOutcome out = CertifyTemplate(ArchimedeanTemplate(gs, r, radius), opts);
  out.level = r;
  out.checks["radius"] = ToString(radius);
  return out;
}

SosTemplate StableTemplate(const StableInstance& si, int r, bool restricted, int pattern_cap) {
  if (r < 1) throw DomainError("stable-compactness level r must be >= 1");
  if (si.sphere_test.empty()) throw DomainError("sphere_test is empty");
  std::vector<std::string> vars = VarsOf(si.sphere_test, si.set.objective.vars());
  for (const auto& c : si.set.constraints) vars = UnionVars(vars, c.poly.vars());
  const auto& comps = si.sphere_test;
  std::vector<bool> used(comps.size(), false);
  std::vector<Polynomial> eqs;
  std::vector<Polynomial> ineqs;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t partner = comps.size();
    for (std::size_t j = i + 1; j < comps.size(); ++j) {
      if (!used[j] && comps[j] == -comps[i]) {
        partner = j;
        break;
      }
    }
    if (partner == comps.size()) {
      ineqs.push_back(comps[i]);
      continue;
    }
    used[partner] = true;
    // c >= 0 and -c >= 0 is c = 0; prefer the unsquared h when c = +-h^2.
    Polynomial eq = comps[i];
    for (const auto& con : si.set.constraints) {
      const Polynomial sq = con.poly.Pow(2);
      if (sq == comps[i] || sq == -comps[i]) {
        eq = con.poly;
        break;
      }
    }
    eqs.push_back(eq);
  }
  const double patterns = std::ldexp(1.0, static_cast<int>(ineqs.size()));
  if (!restricted && patterns > pattern_cap) {
    throw DomainError(std::to_string(ineqs.size()) + " unpaired components exceed the pattern cap " +
                      std::to_string(pattern_cap) + "; use the restricted template");
  }
  eqs.push_back((SumOfSquares(vars) - Rational(1)).AlignedTo(vars));
  SosTemplate t;
  t.vars = vars;
  t.target = Polynomial::Constant(Rational(-1), vars);
  AppendFactors(t, ineqs, eqs, 2 * r, restricted);
  return t;
}

CertifyOutcome CertifyStableCompact(const StableInstance& si, int r, const CertifyOptions& opts) {
  CertifyOutcome out = CertifyTemplate(StableTemplate(si, r, opts.restricted, opts.pattern_cap), opts);
  out.level = r;
  if (opts.sphere_samples > 0) {
    out.checks["sampled_min_q"] = SampleStableMin(si, opts.sphere_samples, opts.seed);
    out.checks["samples"] = opts.sphere_samples;
  }
  if (!out.certified()) out.sphere_witness = FalsifyStable(si);
  return out;
}

std::optional<SphereWitness> FalsifyStable(const StableInstance& si) {
  std::vector<std::string> vars = VarsOf(si.sphere_test, si.set.objective.vars());
  for (const auto& c : si.set.constraints) vars = UnionVars(vars, c.poly.vars());
  if (vars.size() > kLatticeMaxVars) return std::nullopt;
  std::vector<Polynomial> comps;
  for (const auto& c : si.sphere_test) {
    if (!c.is_homogeneous()) return std::nullopt;
    comps.push_back(c.AlignedTo(vars));
  }
  for (const auto& dir : LatticeDirections(vars.size())) {
    std::vector<Rational> u(dir.begin(), dir.end());
    bool all_nonneg = true;
    for (const auto& c : comps) {
      if (c.Evaluate(u) < 0) {
        all_nonneg = false;
        break;
      }
    }
    if (!all_nonneg) continue;
    SphereWitness w;
    w.direction = u;
    w.norm_squared = 0;
    for (const auto& x : u) w.norm_squared += x * x;
    if (auto norm = ExactSqrt(w.norm_squared)) {
      std::vector<Rational> point;
      for (const auto& x : u) point.push_back(x / *norm);
      StableInstance aligned = si;
      aligned.sphere_test = comps;
      w.q_value = StableQ(aligned, point);
    }
    return w;
  }
  return std::nullopt;
}

double SampleStableMin(const StableInstance& si, int samples, std::uint64_t seed) {
  std::vector<std::string> vars = VarsOf(si.sphere_test, si.set.objective.vars());
  StableInstance aligned = si;
  for (auto& c : aligned.sphere_test) c = c.AlignedTo(vars);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> x(vars.size());
  for (int s = 0; s < samples; ++s) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& v : x) {
        v = normal(rng);
        norm += v * v;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (auto& v : x) v /= norm;
    best = std::min(best, StableQ(aligned, x));
  }
  return best;
}

std::optional<CoercivityWitness> FalsifyCoercive(const Polynomial& p, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  const std::size_t n = p.num_vars();
  if (n == 0) return std::nullopt;
  const std::vector<Rational> scales = {Rational(1), Rational(10), Rational(100), Rational(1000)};
  auto try_ray = [&](const std::vector<Rational>& u) -> std::optional<CoercivityWitness> {
    CoercivityWitness w;
    w.ray = u;
    w.scales = scales;
    const Rational base = p.Evaluate(u);
    w.gamma_hat = (base > 0 ? base : Rational(0)) + 1;
    std::vector<Rational> point(n);
    for (const auto& s : scales) {
      for (std::size_t i = 0; i < n; ++i) point[i] = s * u[i];
      const Rational v = p.Evaluate(point);
      if (v > w.gamma_hat) return std::nullopt;
      w.values.push_back(v);
    }
    return w;
  };
  if (n <= kLatticeMaxVars) {
    for (const auto& dir : LatticeDirections(n)) {
      if (auto w = try_ray(std::vector<Rational>(dir.begin(), dir.end()))) return w;
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_unit = [&]() {
    std::vector<double> x(n);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& v : x) {
        v = normal(rng);
        norm += v * v;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (auto& v : x) v /= norm;
    return x;
  };
  auto to_rational = [](const std::vector<double>& x) {
    std::vector<Rational> u;
    for (double v : x) u.push_back(RoundToDyadic(v, 16));
    return u;
  };
  // Rays where the top homogeneous part is smallest are the likeliest escapes.
  const auto comps = HomogeneousComponents(p);
  const Polynomial top = comps.empty() ? p : comps.back().second;
  std::vector<double> guided;
  double guided_value = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const auto x = random_unit();
    if (auto w = try_ray(to_rational(x))) return w;
    const double v = top.Evaluate(std::span<const double>(x));
    if (v < guided_value) {
      guided_value = v;
      guided = x;
    }
  }
  double step = 0.1;
  for (int it = 0; it < 400 && !guided.empty(); ++it) {
    std::vector<double> cand = guided;
    double norm = 0.0;
    for (auto& v : cand) {
      v += step * normal(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    for (auto& v : cand) v /= norm;
    const double val = top.Evaluate(std::span<const double>(cand));
    if (val < guided_value) {
      guided_value = val;
      guided = cand;
    } else {
      step *= 0.98;
    }
  }
  if (!guided.empty()) {
    if (auto w = try_ray(to_rational(guided))) return w;
  }
  return std::nullopt;
}

CertifyOutcome Ladder(int r_min, int r_max, const std::function<CertifyOutcome(int)>& attempt) {
  if (r_max < r_min) throw DomainError("ladder bound below the first level");
  CertifyOutcome last;
  Json tried = Json::array();
  double seconds = 0.0;
  for (int r = r_min; r <= r_max; ++r) {
    last = attempt(r);
    seconds += last.seconds;
    tried.push_back(Json{{"level", r}, {"status", std::string(OutcomeName(last.status))}});
    if (last.certified() || last.checks.contains("cap_exceeded")) break;
  }
  last.checks["ladder"] = std::move(tried);
  last.seconds = seconds;
  return last;
}

Json OutcomeToJson(const CertifyOutcome& outcome, const Json& certificate_ref, bool with_timings) {
  Json checks = outcome.checks;
  if (!outcome.diagnostic.empty()) checks["diagnostic"] = outcome.diagnostic;
  if (const auto& w = outcome.coercivity_witness) {
    checks["falsifier"] = Json{{"ray", RationalsToJson(w->ray)},
                               {"gamma_hat", ToString(w->gamma_hat)},
                               {"scales", RationalsToJson(w->scales)},
                               {"values", RationalsToJson(w->values)}};
  }
  if (const auto& w = outcome.sphere_witness) {
    Json jw{{"direction", RationalsToJson(w->direction)}, {"norm_squared", ToString(w->norm_squared)}};
    if (w->q_value) jw["q"] = ToString(*w->q_value);
    checks["sphere_falsifier"] = std::move(jw);
  }
  Json out{{"status", std::string(OutcomeName(outcome.status))},
           {"level", outcome.level},
           {"certificate", certificate_ref},
           {"checks", std::move(checks)}};
  if (with_timings) out["timings"] = Json{{"seconds", outcome.seconds}};
  return out;
}

}  // namespace popcert
