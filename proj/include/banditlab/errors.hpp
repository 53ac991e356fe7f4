#pragma once

#include <stdexcept>
#include <string>

namespace banditlab {

// Bad arguments, malformed configs, out-of-domain parameters.  The CLI maps
// this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Sufficient statistics that do not yet identify an estimate (all samples
// equal, zero second moment).  The run loop maps this to an infinite index,
// forcing the arm to be explored again.
class DegenerateDataError : public std::runtime_error {
 public:
  explicit DegenerateDataError(const std::string& what) : std::runtime_error(what) {}
};

// A score level no distribution in the family reaches.
class UnattainableScoreError : public std::runtime_error {
 public:
  explicit UnattainableScoreError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace banditlab
