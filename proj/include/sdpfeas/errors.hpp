#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdpfeas {

enum class ErrorKind {
  InvalidInput,
  ParseError,
  AssumptionViolation,
  DomainError,
  WrongVariant,
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

// Base of every exception the library throws. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::InvalidInput, what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t record_index, const std::string& what)
      : Error(ErrorKind::ParseError,
              "record " + std::to_string(record_index) + ": " + what),
        index_(record_index) {}
  std::size_t record_index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::DomainError, what) {}
};

class WrongVariant : public Error {
 public:
  explicit WrongVariant(const std::string& what)
      : Error(ErrorKind::WrongVariant, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(ErrorKind::Internal, what) {}
};

}  // namespace sdpfeas
