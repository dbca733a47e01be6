#include "popcert/sat.h"

#include <cstdint>
#include <sstream>

#include "popcert/errors.h"

namespace popcert {

void OneInThreeInstance::Validate() const {
  if (num_vars < 0) throw FormatError("negative variable count");
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    for (Literal lit : clauses[i]) {
      if (lit == 0 || lit > num_vars || -lit > num_vars) {
        throw FormatError("clause " + std::to_string(i + 1) + ": literal " + std::to_string(lit) +
                          " out of range for " + std::to_string(num_vars) + " variables");
      }
    }
  }
}

std::vector<int> Assignment::AsSigns() const {
  std::vector<int> out;
  out.reserve(values.size());
  for (bool v : values) out.push_back(v ? 1 : -1);
  return out;
}

OneInThreeInstance ParseCnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int declared_clauses = 0;
  OneInThreeInstance inst;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first[0] == 'c') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (first == "p") {
      std::string fmt;
      if (have_header || !(ls >> fmt >> inst.num_vars >> declared_clauses) || fmt != "o3sat" ||
          inst.num_vars < 0 || declared_clauses < 0) {
        throw FormatError(where + "expected header 'p o3sat <n> <k>'");
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw FormatError(where + "clause before 'p o3sat' header");
    std::vector<long> lits;
    std::istringstream cs(line);
    long v;
    while (cs >> v) lits.push_back(v);
    if (!cs.eof()) throw FormatError(where + "non-integer token in clause");
    if (lits.empty() || lits.back() != 0) throw FormatError(where + "clause must end with 0");
    lits.pop_back();
    if (lits.size() != 3) {
      throw FormatError(where + "clause must have 3 literals, found " + std::to_string(lits.size()));
    }
    Clause c{};
    for (int t = 0; t < 3; ++t) {
      if (lits[t] == 0 || lits[t] > inst.num_vars || -lits[t] > inst.num_vars) {
        throw FormatError(where + "literal " + std::to_string(lits[t]) + " out of range");
      }
      c[t] = static_cast<Literal>(lits[t]);
    }
    inst.clauses.push_back(c);
  }
  if (!have_header) throw FormatError("missing 'p o3sat <n> <k>' header");
  if (inst.num_clauses() != declared_clauses) {
    throw FormatError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                      std::to_string(inst.num_clauses()));
  }
  return inst;
}

std::string SerializeCnf(const OneInThreeInstance& inst) {
  std::ostringstream os;
  os << "p o3sat " << inst.num_vars << " " << inst.num_clauses() << "\n";
  for (const auto& c : inst.clauses) os << c[0] << " " << c[1] << " " << c[2] << " 0\n";
  return os.str();
}

int CountTrue(const Clause& clause, const Assignment& a) {
  int count = 0;
  for (Literal lit : clause) {
    const bool v = a.values[(lit > 0 ? lit : -lit) - 1];
    count += (lit > 0) == v ? 1 : 0;
  }
  return count;
}

bool Satisfies(const OneInThreeInstance& inst, const Assignment& a) {
  for (const auto& c : inst.clauses) {
    if (CountTrue(c, a) != 1) return false;
  }
  return true;
}

std::optional<Assignment> BruteForceSolve(const OneInThreeInstance& inst, int cap) {
  inst.Validate();
  if (inst.num_vars > cap) {
    throw DomainError("brute force refused: " + std::to_string(inst.num_vars) +
                      " variables exceeds cap " + std::to_string(cap));
  }
  const int n = inst.num_vars;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    bool ok = true;
    for (const auto& c : inst.clauses) {
      int count = 0;
      for (Literal lit : c) {
        const bool v = (mask >> ((lit > 0 ? lit : -lit) - 1)) & 1U;
        count += (lit > 0) == v ? 1 : 0;
      }
      if (count != 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      Assignment a;
      a.values.resize(n);
      for (int i = 0; i < n; ++i) a.values[i] = (mask >> i) & 1U;
      return a;
    }
  }
  return std::nullopt;
}

}  // namespace popcert
