#pragma once

#include <stdexcept>
#include <string>

namespace gkr {

// Argument outside an operation's domain (x <= 0 for K, J < 0, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A series, continued fraction or quadrature failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gkr
