#pragma once

#include <stdexcept>
#include <string>

namespace udwq {

// Configuration / input errors. CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical invariant failed beyond tolerance. Carries the name of the
// violated invariant and the offending value. CLI maps these to exit code 3.
class ContractViolation : public std::runtime_error {
 public:
  ContractViolation(std::string invariant, double value, const std::string& detail)
      : std::runtime_error(invariant + " violated (" + detail + ")"),
        invariant_(std::move(invariant)),
        value_(value) {}

  const std::string& invariant() const noexcept { return invariant_; }
  double value() const noexcept { return value_; }

 private:
  std::string invariant_;
  double value_;
};

}  // namespace udwq
