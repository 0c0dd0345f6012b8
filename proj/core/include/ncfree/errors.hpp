#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncfree {

/// Operands live in incompatible algebras (dimension or kind).
class AlgebraMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A word exceeds the configured degree cap of an engine.
class DegreeCapExceeded : public std::runtime_error {
 public:
  DegreeCapExceeded(std::size_t degree, std::size_t cap)
      : std::runtime_error("word degree " + std::to_string(degree) +
                           " exceeds the degree cap " + std::to_string(cap)),
        degree_(degree),
        cap_(cap) {}

  std::size_t degree() const noexcept { return degree_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t degree_;
  std::size_t cap_;
};

/// Argument outside the domain where an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A resolvent or element inverse that does not exist numerically.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed JSON input; the message carries a JSON-pointer style location.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(location) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace ncfree
