#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace topochain {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size or index is outside the allowed range (zero cells, site out of range).
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter violates its precondition (negative sigma, bad tolerance).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Parameters lie outside the topological phase an analytic formula requires.
class PhaseDomainError : public Error {
 public:
  using Error::Error;
};

/// Non-finite input or a numerical kernel that failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// ODE integration failed (step underflow, norm drift).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// One or more schema violations in a schedule or experiment config.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "schema violation";
    if (items.size() > 1) out += "s";
    out += ": ";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += "; ";
      out += items[i];
    }
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace topochain
