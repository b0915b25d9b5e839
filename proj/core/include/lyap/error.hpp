#pragma once

#include <stdexcept>
#include <string>

namespace lyap {

// Failure categories; the CLI maps each one to its own exit status.
enum class ErrorKind {
  kInvalidInput,
  kHypothesis,
  kBudget,
  kNonConvergence,
  kNumeric,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_input(const std::string& what) {
  return Error(ErrorKind::kInvalidInput, what);
}

}  // namespace lyap
