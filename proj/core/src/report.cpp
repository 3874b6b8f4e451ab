#include "tilespec/report.hpp"

#include <sstream>

namespace tilespec {

void Report::add_pass(const std::string& name) {
  checks.push_back(CheckResult{name, true, "", ""});
}

void Report::add_fail(const std::string& name, const std::string& code,
                      const std::string& witness) {
  checks.push_back(CheckResult{name, false, code, witness});
}

void Report::note(const std::string& key, const std::string& value) {
  notes.emplace_back(key, value);
}

bool Report::ok() const { return failure_count() == 0; }

int Report::failure_count() const {
  int n = 0;
  for (const CheckResult& c : checks) {
    if (!c.pass) ++n;
  }
  return n;
}

std::string Report::first_code() const {
  for (const CheckResult& c : checks) {
    if (!c.pass) return c.code;
  }
  return "";
}

std::string Report::text() const {
  std::ostringstream out;
  out << "== report: " << subject << "\n";
  for (const CheckResult& c : checks) {
    if (c.pass) {
      out << "[pass] " << c.name << "\n";
    } else {
      out << "[FAIL] " << c.name << " " << c.code;
      if (!c.witness.empty()) out << ": " << c.witness;
      out << "\n";
    }
  }
  for (const auto& [key, value] : notes) {
    out << "note " << key << " = " << value << "\n";
  }
  const int failed = failure_count();
  if (failed == 0) {
    out << "status: PASS (" << checks.size() << " checks)\n";
  } else {
    out << "status: FAIL (" << failed << "/" << checks.size()
        << " checks failed)\n";
  }
  return out.str();
}

}  // namespace tilespec
