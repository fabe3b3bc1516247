#pragma once

#include <stdexcept>
#include <string>

namespace crlab {

// Base class for every error raised by the library. Callers that want to
// distinguish failure kinds catch the derived types below.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by zero") {}
};

// Raised when a derivation would push a jet word past its field's order cap.
class JetOrderOverflow : public Error {
public:
  JetOrderOverflow(const std::string& field, int cap)
      : Error("jet order overflow: field '" + field + "' is capped at order " +
              std::to_string(cap)) {}
};

class RegistryError : public Error {
public:
  explicit RegistryError(const std::string& what) : Error(what) {}
};

class ParamError : public Error {
public:
  explicit ParamError(const std::string& what) : Error(what) {}
};

// Expression / config parse failure; offset is a byte offset into the input.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

}  // namespace crlab
