#pragma once

#include <stdexcept>
#include <string>

namespace ni {

// Validation errors (bad inputs, violated preconditions) map to CLI exit 2;
// numerical errors (NoConvergence, IllConditioned, ...) map to exit 3.
class error_base : public std::runtime_error {
public:
  error_base(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

class validation_error : public error_base {
public:
  using error_base::error_base;
};

class numerical_error : public error_base {
public:
  using error_base::error_base;
};

[[noreturn]] inline void fail_validation(const std::string& code, const std::string& what) {
  throw validation_error(code, what);
}

[[noreturn]] inline void fail_numerical(const std::string& code, const std::string& what) {
  throw numerical_error(code, what);
}

} // namespace ni
