#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tilespec {

// One validation check with its outcome. Failing checks carry a stable
// machine-readable code plus a witness describing the counterexample.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string code;
  std::string witness;
};

// Validation result: a list of named checks and free-form notes. Renders to
// structured text with one line per check.
struct Report {
  std::string subject;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, std::string>> notes;

  void add_pass(const std::string& name);
  void add_fail(const std::string& name, const std::string& code,
                const std::string& witness);
  void note(const std::string& key, const std::string& value);

  bool ok() const;
  int failure_count() const;
  // Code of the first failing check, empty when all pass.
  std::string first_code() const;
  std::string text() const;
};

}  // namespace tilespec
