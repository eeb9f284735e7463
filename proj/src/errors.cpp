#include "bec/errors.hpp"

#include <algorithm>

namespace bec {

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::string msg = "invalid parameters:";
  for (const auto& v : violations) msg += " " + v.name;
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

bool ValidationError::has(const std::string& name) const {
  return std::any_of(violations_.begin(), violations_.end(),
                     [&](const Violation& v) { return v.name == name; });
}

}  // namespace bec
