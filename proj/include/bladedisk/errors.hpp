#pragma once

#include <stdexcept>
#include <string>

namespace bladedisk {

// Bad input: geometry, schema, or event constraints. CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Solver breakdown: singular systems, non-convergence. CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bladedisk
