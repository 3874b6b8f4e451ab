#pragma once

#include <stdexcept>
#include <string>

namespace tilespec {

// Validation and search failures carry a stable machine-readable code next
// to the human-readable message, so CLI reports and tests can match on the
// code without parsing prose.
class TilespecError : public std::runtime_error {
 public:
  TilespecError(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace tilespec
