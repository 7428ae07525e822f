#pragma once

#include <stdexcept>
#include <string>

namespace solhp {

enum class ErrorKind { Parse, Validation, Verification, Arithmetic, Internal };

// Every error carries the module that raised it and the check that failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, std::string check, const std::string& message)
      : std::runtime_error(module + ": " + check + ": " + message),
        kind_(kind),
        module_(std::move(module)),
        check_(std::move(check)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& check() const noexcept { return check_; }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string check_;
};

}  // namespace solhp
