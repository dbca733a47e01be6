// Exact rational certificates: rounding, projection, and zero-tolerance verification.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "popcert/rational.h"
#include "popcert/sos.h"

namespace popcert {

/// Dense symmetric rational matrix, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  int size() const { return n_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const Rational& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  bool IsSymmetric() const;
  Eigen::MatrixXd ToDouble() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<Rational> data_;
};

struct RationalMultiplier {
  std::vector<Monomial> basis;
  RationalMatrix gram;
};

struct RationalCertificate {
  SosTemplate tmpl;
  std::vector<RationalMultiplier> multipliers;
};

/// PSD test by exact LDL' with symmetric pivoting; zero pivots are accepted when
/// their whole remaining row vanishes. Throws DomainError for non-symmetric input.
bool CheckPsdExact(const RationalMatrix& m);

struct RationalizeResult {
  std::optional<RationalCertificate> certificate;
  /// Denominator exponent that succeeded (0 when small-denominator snapping did).
  int denom_power = 0;
  std::string diagnostic;
  /// Larger exponent worth trying after a failure.
  int suggested_denom_power = 0;
};

/// Snaps entries that are numerically simple fractions, otherwise rounds to
/// multiples of 2^-denom_power and projects exactly onto the identity's equality
/// constraints (rational least squares). Retries with denom_power + 8 and + 16.
RationalizeResult Rationalize(const SosCertificate& cert, int denom_power);

struct VerifyReport {
  bool ok = false;
  std::string diagnostic;
  /// First mismatching monomial when the identity fails.
  std::optional<Monomial> mismatch;
  explicit operator bool() const { return ok; }
};

/// Expands sum_j z_j' G_j z_j * factor_j exactly and compares with the target
/// term by term; also requires every Gram matrix to be exactly PSD.
VerifyReport VerifyIdentity(const RationalCertificate& cert);

/// Exact polynomial z' G z.
Polynomial GramToPolynomial(const std::vector<std::string>& vars, const RationalMultiplier& m);

}  // namespace popcert
