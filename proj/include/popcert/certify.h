// Certifiers for compactness, coercivity, Archimedean and stable-compactness
// hierarchies; radius bound; coercivity falsifier.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "popcert/exactcert.h"
#include "popcert/json_io.h"
#include "popcert/reductions.h"
#include "popcert/sdp.h"
#include "popcert/sos.h"

namespace popcert {

/// sqrt(radicand) * mantissa * 2^exponent; radicand is n, or 1 when n is a perfect
/// square (its root is then folded into the mantissa).
struct RadiusBound {
  int n = 0;
  int d = 0;
  int m = 0;
  int tau = 0;
  BigInt radicand;
  BigInt mantissa;
  BigInt exponent;
  /// Smallest k with R* <= 2^k.
  BigInt ceil_log2;
  std::string convention = "bit(e) = floor(log2 e) + 1";

  /// "6*2^300" or "sqrt(2)*21*2^2800".
  std::string ToText() const;
};

/// Evaluates the degree/bitsize ball radius for n variables, degree d, m polynomials
/// and coefficient bitsize tau. Throws DomainError when any input is below 1.
RadiusBound ComputeRadiusBound(int n, int d, int m, int tau);

/// bit(e) = floor(log2 e) + 1 for e >= 1.
BigInt BitSize(const BigInt& e);

struct RadiusInputs {
  int n = 0;
  int d = 0;
  int m = 0;
  int tau = 0;
};

/// (n, d, m, tau) of a constraint set; each polynomial is scaled to integer
/// coefficients first and tau is the largest resulting bitsize.
RadiusInputs InputsOf(const Pop& set);

struct CertifyOptions {
  SdpOptions sdp;
  /// Rounding exponent for rationalization.
  int denom_power = 20;
  /// Facial-reduction rounds that drop numerically vanishing basis monomials.
  int trim_rounds = 4;
  /// Products of at most one constraint (sound, not complete).
  bool restricted = false;
  /// Max inequality count for full product templates.
  int product_cap = 6;
  /// Max sign patterns for the stable-compactness encoding.
  int pattern_cap = 1 << 10;
  std::uint64_t seed = 0;
  int sphere_samples = 10000;
  int falsifier_trials = 1000;
};

struct CoercivityWitness {
  /// Direction u; the points are s*u for s in `scales`.
  std::vector<Rational> ray;
  Rational gamma_hat;
  std::vector<Rational> scales;
  std::vector<Rational> values;
};

struct SphereWitness {
  /// Lattice direction u; the sphere point is u / |u|.
  std::vector<Rational> direction;
  /// |u|^2.
  Rational norm_squared;
  /// q(u/|u|) when |u| is rational.
  std::optional<Rational> q_value;
};

struct CertifyOutcome {
  enum class Status { kCertified, kInconclusive };
  Status status = Status::kInconclusive;
  int level = 0;
  std::optional<RationalCertificate> certificate;
  /// Template that was built (also set in completeness mode, where it is not solved).
  std::optional<SosTemplate> tmpl;
  std::string diagnostic;
  Json checks = Json::object();
  std::optional<CoercivityWitness> coercivity_witness;
  std::optional<SphereWitness> sphere_witness;
  double seconds = 0.0;

  bool certified() const { return status == Status::kCertified; }
};

std::string_view OutcomeName(CertifyOutcome::Status s);

/// Compiles, solves, trims vanishing faces, rationalizes and verifies one template.
CertifyOutcome CertifyTemplate(const SosTemplate& t, const CertifyOptions& opts);

/// Coercivity template over (x, gamma):
/// -1 = s0 + s1 (gamma - p) + s2 (|x|^2 - gamma^(2r) - 2^r) + s3 (gamma - p)(|x|^2 - gamma^(2r) - 2^r).
SosTemplate CoercivityTemplate(const Polynomial& p, int r);
CertifyOutcome CertifyCoercive(const Polynomial& p, int r, const CertifyOptions& opts = {});

/// Emptiness template for the set intersected with {|x|^2 - R - 1 >= 0}.
SosTemplate CompactTemplate(const Pop& set, int r, const Rational& radius, bool restricted,
                            int product_cap);
/// Without a radius override the worst-case radius is used to build the template,
/// which is reported but not solved.
CertifyOutcome CertifyCompact(const Pop& set, int r, const std::optional<Rational>& radius,
                              const CertifyOptions& opts = {});

/// R - |x|^2 = s0 + sum_i s_i g_i, every s of degree <= 2r.
SosTemplate ArchimedeanTemplate(const std::vector<Polynomial>& gs, int r, const Rational& radius);
CertifyOutcome CertifyArchimedean(const std::vector<Polynomial>& gs, int r, const Rational& radius,
                                  const CertifyOptions& opts = {});

/// Emptiness of {|x|^2 = 1, every sphere_test component >= 0}.
SosTemplate StableTemplate(const StableInstance& si, int r, bool restricted, int pattern_cap);
CertifyOutcome CertifyStableCompact(const StableInstance& si, int r, const CertifyOptions& opts = {});

/// Lattice direction u with every (homogeneous) component >= 0 at u, hence q <= 0
/// on the sphere point u/|u|.
std::optional<SphereWitness> FalsifyStable(const StableInstance& si);

/// Minimum of q over seeded uniform unit-sphere samples.
double SampleStableMin(const StableInstance& si, int samples, std::uint64_t seed);

/// Searches rays along which p stays <= gamma_hat while |x| grows by 10x per step.
/// Numerical evidence only.
std::optional<CoercivityWitness> FalsifyCoercive(const Polynomial& p, int trials, std::uint64_t seed);

/// Tries r = r_min..r_max and returns the first certified level, else the last outcome.
CertifyOutcome Ladder(int r_min, int r_max, const std::function<CertifyOutcome(int)>& attempt);

/// {"status", "level", "certificate", "checks"}; timings only on request.
Json OutcomeToJson(const CertifyOutcome& outcome, const Json& certificate_ref, bool with_timings);

}  // namespace popcert
