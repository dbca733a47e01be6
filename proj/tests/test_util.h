// Shared construction helpers for the unit tests.
#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "popcert/poly.h"
#include "popcert/sat.h"

namespace popcert::testing {

inline Polynomial V(const std::string& name) { return Polynomial::Variable(name); }
inline Polynomial C(const Rational& c) { return Polynomial::Constant(c); }
inline Rational Q(long n, long d = 1) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline OneInThreeInstance Phi1() { return ParseCnf("p o3sat 3 1\n1 2 3 0\n"); }
inline OneInThreeInstance Phi2() { return ParseCnf("p o3sat 1 1\n1 1 1 0\n"); }

inline std::string FixturePath(const std::string& name) {
  return std::string(POPCERT_FIXTURE_DIR) + "/" + name;
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Random polynomial over `vars` with total degree <= max_deg and integer
/// coefficients in [-10, 10].
inline Polynomial RandomPoly(std::mt19937_64& rng, const std::vector<std::string>& vars,
                             int max_deg, int max_terms = 6) {
  std::uniform_int_distribution<int> coef(-10, 10);
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(0, max_deg);
  std::vector<std::pair<Monomial, Rational>> terms;
  const int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    std::vector<int> e(vars.size(), 0);
    int budget = exp(rng);
    for (std::size_t v = 0; v < vars.size() && budget > 0; ++v) {
      std::uniform_int_distribution<int> take(0, budget);
      e[v] = take(rng);
      budget -= e[v];
    }
    terms.emplace_back(Monomial(e), Rational(coef(rng)));
  }
  return Polynomial(vars, terms);
}

inline Rational RandomRational(std::mt19937_64& rng, int span = 7, int den = 5) {
  std::uniform_int_distribution<int> num(-span * den, span * den);
  std::uniform_int_distribution<int> d(1, den);
  Rational q(num(rng), d(rng));
  q.canonicalize();
  return q;
}

}  // namespace popcert::testing
