#ifndef RFFSVM_ERRORS_HPP
#define RFFSVM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rffsvm {

// Input file could not be parsed (bad line, ragged row, ...).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Semantically invalid inputs (non-binary labels, bad fractions, shape
// mismatches, out-of-range parameters).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Invalid run configuration (missing B under a theory schedule, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failure during optimization (divergent step size).
class TrainingError : public std::runtime_error {
 public:
  explicit TrainingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rffsvm

#endif  // RFFSVM_ERRORS_HPP
