// Command-line front end; exit 0 = certified/verified/produced, 2 = inconclusive, 1 = error.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace popcert {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

/// Shared knobs; each comes from its flag, else its environment variable, else the default.
struct Config {
  double tol = 1e-8;
  int max_iter = 100000;
  int dimension_cap = 200;
  int r_max = 3;
  std::uint64_t seed = 0;
  int brute_force_cap = 24;
  int denom_power = 20;
  bool timings = false;
};

/// `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace popcert
