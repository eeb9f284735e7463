#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bec {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to reach its own accuracy target.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One violated admissibility inequality, e.g. {"gamma.lower", bound = 5 - alpha + beta}.
struct Violation {
  std::string name;
  double bound = 0.0;
  double value = 0.0;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }
  bool has(const std::string& name) const;

 private:
  std::vector<Violation> violations_;
};

}  // namespace bec
