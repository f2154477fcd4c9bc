#pragma once

#include <string>
#include <vector>

namespace patpos {

struct TermEntry {
  std::string label;
  long long value = 0;
};

/// Outcome of checking one identity on one interval. Serializes to the shared
/// JSON shape {"interval","equation","lhs","terms","rhs","pass"}.
struct VerificationReport {
  std::string interval;
  std::string equation;
  long long lhs = 0;
  long long rhs = 0;
  std::vector<TermEntry> terms;
  bool pass = false;

  std::string to_json() const;
  std::string to_text() const;
};

}  // namespace patpos
