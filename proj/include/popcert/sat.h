// ONE-IN-THREE 3SAT instances and a brute-force decision oracle.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace popcert {

/// Signed literal: +v is x_v, -v is its negation (v is 1-based).
using Literal = int;
using Clause = std::array<Literal, 3>;

struct OneInThreeInstance {
  int num_vars = 0;
  std::vector<Clause> clauses;

  int num_clauses() const { return static_cast<int>(clauses.size()); }
  /// Throws FormatError when a literal is zero or out of range.
  void Validate() const;
};

/// Truth values, one per variable (index 0 is x1).
struct Assignment {
  std::vector<bool> values;

  /// true -> +1, false -> -1.
  std::vector<int> AsSigns() const;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

inline constexpr int kDefaultBruteForceCap = 24;

/// Reads "p o3sat n k" followed by k clause lines "l1 l2 l3 0"; "c" lines are comments.
OneInThreeInstance ParseCnf(std::string_view text);
std::string SerializeCnf(const OneInThreeInstance& inst);

/// Number of true literals in `clause` under `a`.
int CountTrue(const Clause& clause, const Assignment& a);
bool Satisfies(const OneInThreeInstance& inst, const Assignment& a);

/// First satisfying assignment in counting order (x1 is the least significant bit,
/// false before true), or nullopt when the instance is unsatisfiable.
/// Refuses instances with more than `cap` variables.
std::optional<Assignment> BruteForceSolve(const OneInThreeInstance& inst,
                                          int cap = kDefaultBruteForceCap);

}  // namespace popcert
