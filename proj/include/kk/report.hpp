#pragma once

#include <string>
#include <vector>

namespace kk {

struct Assertion {
  std::string name;
  bool pass = false;
  std::string witness;  // single whitespace-free token
};

enum class ReportFormat { kText, kMachine };

/// Verification report for one CLI invocation. Everything emitted to the
/// byte stream is a pure function of the inputs; timing is kept out of the
/// stream (callers may log it to stderr).
struct Report {
  std::string command;            // echo of the invocation
  std::string digest;             // hash over all inputs
  std::vector<std::string> info;  // descriptive lines, deterministic order
  std::vector<Assertion> assertions;
  long long timing_ms = 0;        // never emitted

  void add(const std::string& name, bool pass, const std::string& witness);
  void note(const std::string& line) { info.push_back(line); }
  bool all_pass() const;
};

/// Text format: command/inputs header, info lines, assertion lines, result
/// summary. Machine format: only `assertion <name> <pass|fail> <witness>`
/// lines. Both are byte-deterministic.
std::string emit_report(const Report& r, ReportFormat format);

/// Accepts "text" or "machine"; throws UsageError otherwise.
ReportFormat parse_format(const std::string& name);

/// FNV-1a 64-bit over the concatenated parts, as 16 hex digits.
std::string fnv1a_hex(const std::vector<std::string>& parts);

/// Collapses whitespace runs to single dashes so witnesses stay one token.
std::string witness_token(const std::string& s);

}  // namespace kk
