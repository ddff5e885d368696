#include "kk/report.hpp"

#include <cctype>
#include <cstdint>
#include <iomanip>
#include <sstream>

#include "kk/errors.hpp"

namespace kk {

void Report::add(const std::string& name, bool pass,
                 const std::string& witness) {
  assertions.push_back({name, pass, witness_token(witness)});
}

bool Report::all_pass() const {
  for (const Assertion& a : assertions)
    if (!a.pass) return false;
  return true;
}

std::string emit_report(const Report& r, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::kMachine) {
    for (const Assertion& a : r.assertions)
      out << "assertion " << a.name << ' ' << (a.pass ? "pass" : "fail")
          << ' ' << (a.witness.empty() ? "-" : a.witness) << '\n';
    return out.str();
  }
  out << "command: " << r.command << '\n';
  out << "inputs: fnv1a=" << r.digest << '\n';
  for (const std::string& line : r.info) out << line << '\n';
  std::size_t passed = 0;
  for (const Assertion& a : r.assertions) {
    out << "assertion " << a.name << ' ' << (a.pass ? "pass" : "fail") << ' '
        << (a.witness.empty() ? "-" : a.witness) << '\n';
    if (a.pass) ++passed;
  }
  out << "result: " << (passed == r.assertions.size() ? "pass" : "fail")
      << ' ' << passed << '/' << r.assertions.size() << '\n';
  return out.str();
}

ReportFormat parse_format(const std::string& name) {
  if (name == "text") return ReportFormat::kText;
  if (name == "machine") return ReportFormat::kMachine;
  throw UsageError("unknown format: " + name);
}

std::string fnv1a_hex(const std::vector<std::string>& parts) {
  std::uint64_t h = 1469598103934665603ull;
  for (const std::string& part : parts) {
    for (unsigned char c : part) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xffu;  // separator so part boundaries matter
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string witness_token(const std::string& s) {
  std::string out;
  bool gap = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      gap = true;
      continue;
    }
    if (gap && !out.empty()) out += '-';
    gap = false;
    out += static_cast<char>(c);
  }
  return out;
}

}  // namespace kk
