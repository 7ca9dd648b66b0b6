#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text; `offset` is the byte position of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UndeclaredSymbolError : public Error {
 public:
  UndeclaredSymbolError(const std::string& name, std::size_t offset)
      : Error("undeclared symbol '" + name + "' at offset " + std::to_string(offset)),
        name_(name), offset_(offset) {}
  const std::string& name() const noexcept { return name_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

/// Numeric evaluation hit a point outside the domain (pole, log of a
/// nonpositive value, even root of a negative value).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::string subtree)
      : Error(what + " in '" + subtree + "'"), subtree_(std::move(subtree)) {}
  const std::string& subtree() const noexcept { return subtree_; }

 private:
  std::string subtree_;
};

/// The requested operation lies outside what the engine supports
/// (essential singularity in a series, non-elementary antiderivative, ...).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace tq
