// Acceptance suite: one PASS/FAIL line per criterion, each within its runtime budget.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "known_certificates.h"
#include "popcert/certify.h"
#include "popcert/exactcert.h"
#include "popcert/json_io.h"
#include "popcert/reductions.h"
#include "popcert/sat.h"
#include "popcert/sdp.h"
#include "test_util.h"

namespace popcert {
namespace {

using testing::Phi1;
using testing::Phi2;
using testing::Q;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Criterion(int id, const char* title, double budget_seconds, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (v.pass && secs >= budget_seconds) {
    v.pass = false;
    v.detail += " (over the " + std::to_string(budget_seconds) + " s budget)";
  }
  if (!v.pass) ++failures;
  std::printf("%s criterion %d: %s [%.2f s] %s\n", v.pass ? "PASS" : "FAIL", id, title, secs, v.detail.c_str());
  std::fflush(stdout);
}

std::vector<Rational> Signs(int mask, int n) {
  std::vector<Rational> x;
  for (int j = 0; j < n; ++j) x.push_back((mask >> j) & 1 ? 1 : -1);
  return x;
}

Verdict QuarticFixture() {
  const VerifyReport r = VerifyIdentity(testing::QuarticCertificate());
  return {r.ok, r.ok ? "identity and PSD checks exact" : r.diagnostic};
}

Verdict CertifiedAndVerified(const CertifyOutcome& out) {
  if (!out.certified() || !out.certificate) return {false, "outcome " + std::string(OutcomeName(out.status)) + " " + out.diagnostic};
  const VerifyReport r = VerifyIdentity(*out.certificate);
  return {r.ok, "level " + std::to_string(out.level) + (r.ok ? ", re-verified exactly" : ": " + r.diagnostic)};
}

Verdict EndToEndQuartic() { return CertifiedAndVerified(CertifyCoercive(testing::QuarticExample(), 1)); }

Verdict DerivedQuadratic() {
  const VerifyReport witness = VerifyIdentity(testing::FourSeventhsCertificate());
  if (!witness.ok) return {false, "4/7 witness: " + witness.diagnostic};
  Verdict v = CertifiedAndVerified(CertifyCoercive(testing::QuadraticExample(), 1));
  v.detail = "4/7 witness verified; " + v.detail;
  return v;
}

// Satisfiable counts per (n, k) from tests/oracles/enumeration.py.
Verdict ReductionGroundTruth() {
  const long expected_sat[3][3] = {{1, 6, 18}, {1, 60, 1980}, {1, 210, 32526}};
  long total = 0;
  for (int n = 1; n <= 3; ++n) {
    std::vector<Literal> lits;
    for (int v = 1; v <= n; ++v) {
      lits.push_back(v);
      lits.push_back(-v);
    }
    std::vector<Clause> clauses;
    for (Literal a : lits)
      for (Literal b : lits)
        for (Literal c : lits) clauses.push_back({a, b, c});
    for (int k = 0; k <= 2; ++k) {
      long sat_count = 0;
      const std::size_t count = k == 0 ? 1 : (k == 1 ? clauses.size() : clauses.size() * clauses.size());
      for (std::size_t idx = 0; idx < count; ++idx) {
        OneInThreeInstance inst;
        inst.num_vars = n;
        if (k >= 1) inst.clauses.push_back(clauses[idx % clauses.size()]);
        if (k == 2) inst.clauses.push_back(clauses[idx / clauses.size()]);
        const bool sat = BruteForceSolve(inst).has_value();
        const Polynomial s = GenSPhi(inst);
        bool zero = false;
        for (int mask = 0; mask < (1 << n) && !zero; ++mask) zero = s.Evaluate(Signs(mask, n)) == 0;
        if (zero != sat) return {false, "mismatch on " + SerializeCnf(inst)};
        sat_count += sat;
        ++total;
      }
      if (sat_count != expected_sat[n - 1][k]) {
        return {false, "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + std::to_string(sat_count) +
                           " satisfiable, oracle says " + std::to_string(expected_sat[n - 1][k])};
      }
    }
  }
  return {true, std::to_string(total) + " instances, SAT counts match the oracle"};
}

Verdict AttainmentDichotomy() {
  if (GenPPhi(Phi1()).Evaluate(std::vector<Rational>{1, -1, -1, 0, 0, 1}) != 0) return {false, "p_phi1 nonzero"};
  const Polynomial p2 = GenPPhi(Phi2());
  Rational prev = -1;
  for (long t : {10L, 100L, 1000L}) {
    const Rational v = p2.Evaluate(std::vector<Rational>{-1, Q(1, t), t, 0});
    if (v <= 0 || (prev >= 0 && v >= prev)) return {false, "tail not strictly decreasing and positive"};
    prev = v;
  }
  // (x1, y, z, lambda, chi1, w) with w = 1, chi = lambda x over a rational (y, z) grid.
  const Polynomial ph = GenPHatPhi(Phi2());
  const std::vector<Rational> grid = {0, Q(1, 2), Q(-1, 2), 1, -1, 2, -2, 10, Q(1, 10)};
  for (long x : {-1L, 1L})
    for (long lam : {0L, 1L})
      for (const auto& y : grid)
        for (const auto& z : grid) {
          if (ph.Evaluate(std::vector<Rational>{x, y, z, lam, lam * x, 1}) == 0) return {false, "p_hat_phi2 has a zero"};
        }
  return {true, "phi1 zero exact; phi2 tail 1/100, 1/10^4, 1/10^6; no lifted zero"};
}

Verdict CoercivityLabels() {
  const Polynomial h2 = GenSPhiH(Phi2());
  const CertifyOutcome ok = Ladder(1, 3, [&](int r) { return CertifyCoercive(h2, r); });
  Verdict v = CertifiedAndVerified(ok);
  if (!v.pass) return {false, "s_phi_h(phi2): " + v.detail};
  const Polynomial h1 = GenSPhiH(Phi1());
  const auto w = FalsifyCoercive(h1, 1000, 0);
  if (!w) return {false, "no ray witness for s_phi_h(phi1)"};
  for (long s : {1L, 10L, 100L}) {
    std::vector<Rational> pt;
    for (const auto& u : w->ray) pt.push_back(s * u);
    if (h1.Evaluate(pt) != 0) return {false, "nonzero value at scale " + std::to_string(s)};
  }
  std::string ray;
  for (const auto& u : w->ray) ray += (ray.empty() ? "" : ",") + u.get_str();
  return {true, "phi2 certified at r=" + std::to_string(ok.level) + "; phi1 ray (" + ray + ") value 0"};
}

Verdict CompactCircle() {
  const Pop circle = PopFromJson(ParseJson(testing::ReadFile(testing::FixturePath("circle.json"))));
  return CertifiedAndVerified(Ladder(1, 2, [&](int r) { return CertifyCompact(circle, r, Rational(1)); }));
}

Verdict ArchimedeanDisk() {
  const Polynomial g = Q(1) - testing::V("x1").Pow(2) - testing::V("x2").Pow(2);
  const CertifyOutcome out = CertifyArchimedean({g}, 0, Rational(1));
  Verdict v = CertifiedAndVerified(out);
  if (!v.pass) return v;
  const auto& m = out.certificate->multipliers;
  const bool shape = m.size() == 2 && m[0].gram == RationalMatrix{{0}} && m[1].gram == RationalMatrix{{1}};
  return {shape, shape ? "sigma0 = 0, sigma1 = 1" : "unexpected multipliers"};
}

Verdict RadiusBoundValue() {
  // Independent big-integer script (tests/oracles/radius_bound.py) gives 6*2^300.
  const RadiusBound rb = ComputeRadiusBound(1, 2, 1, 1);
  const bool matches_script = rb.ToText() == "6*2^300" && rb.ceil_log2 == 303;
  const bool matches_expected = rb.radicand == 1 && rb.mantissa == 6 && rb.exponent == 200;
  return {matches_expected, "computed " + rb.ToText() + " (ceil_log2 " + rb.ceil_log2.get_str() + ", " +
                                (matches_script ? "agrees with" : "DISAGREES with") +
                                " the independent script); expected 6*2^200"};
}

Verdict StableFalsifier() {
  const StableInstance s1 = GenStableInstance(Phi1());
  const Rational q = StableQ(s1, std::vector<Rational>{Q(1, 2), Q(1, 2), Q(-1, 2), Q(-1, 2)});
  if (q != 0) return {false, "q_phi1 = " + q.get_str()};
  const double m = SampleStableMin(GenStableInstance(Phi2()), 10000, 0);
  return {m > 0.05, "q_phi1 = 0 exactly; sampled min q_phi2 = " + std::to_string(m)};
}

Verdict SolverHonesty() {
  SdpProblem neg, pos;
  neg.blocks = pos.blocks = {1};
  neg.equalities.push_back({{{0, 0, 0, 1.0}}, -1.0});
  pos.equalities.push_back({{{0, 0, 0, 1.0}}, 2.0});
  const SdpSolution a = SolveFeasibility(neg);
  const SdpSolution b = SolveFeasibility(pos);
  const bool ok = a.status == SdpStatus::kInconclusive && a.margin <= -0.9 &&
                  b.status == SdpStatus::kStrictlyFeasible && std::abs(b.margin - 2.0) <= 1e-6;
  return {ok, "q11=-1: " + std::string(StatusName(a.status)) + " margin " + std::to_string(a.margin) +
                  "; q11=2: " + std::string(StatusName(b.status)) + " margin " + std::to_string(b.margin)};
}

}  // namespace
}  // namespace popcert

int main() {
  using namespace popcert;
  Criterion(1, "hand-encoded coercivity certificate for x1^4 + x2^2 verifies exactly", 1, QuarticFixture);
  Criterion(2, "end-to-end coercivity of x1^4 + x2^2 at r=1", 60, EndToEndQuartic);
  Criterion(3, "derived witness and coercivity of x1^2 + x2^2 at r=1", 60, DerivedQuadratic);
  Criterion(4, "reduction ground truth over all n<=3, k<=2 instances", 120, ReductionGroundTruth);
  Criterion(5, "attainment dichotomy for phi1 / phi2", 10, AttainmentDichotomy);
  Criterion(6, "coercivity labels for s_phi_h", 300, CoercivityLabels);
  Criterion(7, "compactness certificate for the unit circle", 120, CompactCircle);
  Criterion(8, "Archimedean certificate for the unit disk", 5, ArchimedeanDisk);
  Criterion(9, "radius bound for (n,d,m,tau) = (1,2,1,1)", 1, RadiusBoundValue);
  Criterion(10, "stable-compactness falsifier and sampling", 30, StableFalsifier);
  Criterion(11, "solver honesty on 1x1 fixtures", 1, SolverHonesty);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
