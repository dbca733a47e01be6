#include "popcert/rational.h"

#include <cmath>
#include <stdexcept>

namespace popcert {

namespace {

bool IsInteger(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!IsInteger(num) || !IsInteger(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  BigInt n(std::string(num[0] == '+' ? num.substr(1) : num));
  BigInt d{std::string(den)};
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string ToString(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational FromDouble(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite value cannot be made rational");
  }
  return Rational(value);
}

Rational RoundToDyadic(double value, int denom_power) {
  const double scaled = std::ldexp(value, denom_power);
  if (!std::isfinite(scaled)) {
    throw std::invalid_argument("value overflows dyadic rounding");
  }
  Rational r(BigInt(std::nearbyint(scaled)));
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(denom_power));
  r.canonicalize();
  return r;
}

double ToDouble(const Rational& value) { return value.get_d(); }

Rational Pow(const Rational& base, unsigned exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace popcert
