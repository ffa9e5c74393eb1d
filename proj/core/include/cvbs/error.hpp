#pragma once

#include <stdexcept>
#include <string>

namespace cvbs {

// Rejected inputs: bad arguments, malformed files, contract violations.
// The command line harness maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric guard refusals: a computation that would silently produce an
// untrustworthy result declines to run instead. Exit code 3 in the harness.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cvbs
