#pragma once

#include <stdexcept>
#include <string>

namespace hsk {

/// Operands live in different rings (characteristic or variable count differ).
class ContextMismatch : public std::invalid_argument {
 public:
  explicit ContextMismatch(const std::string& what)
      : std::invalid_argument("ring context mismatch: " + what) {}
};

/// A configured desk-scale bound was exceeded. Never a wrong answer.
class DeskScaleExceeded : public std::runtime_error {
 public:
  explicit DeskScaleExceeded(const std::string& what)
      : std::runtime_error("desk-scale cap exceeded: " + what) {}
};

class InvalidHS : public std::invalid_argument {
 public:
  explicit InvalidHS(const std::string& what)
      : std::invalid_argument("invalid Hasse-Schmidt derivation: " + what) {}
};

class NotAnOperator : public std::runtime_error {
 public:
  explicit NotAnOperator(const std::string& what)
      : std::runtime_error("not a differential operator of the stated order: " + what) {}
};

class NotIntegrable : public std::domain_error {
 public:
  explicit NotIntegrable(const std::string& what) : std::domain_error(what) {}
};

class Unsupported : public std::logic_error {
 public:
  explicit Unsupported(const std::string& what) : std::logic_error(what) {}
};

}  // namespace hsk
