#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lensspec {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// A lens parameter shares a factor with q. `index()` is 1-based.
class NotCoprime : public Error {
 public:
  NotCoprime(std::size_t index, const std::string& what) : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class DimensionTooSmall : public Error {
 public:
  using Error::Error;
};

/// q even and m odd: the lens space is not spin.
class NoSpinStructure : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share (q, m) do not.
class Mismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Brute-force enumeration refused because of its size guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class VerificationFailed : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed result file. Line and column are 1-based; 0 when unknown.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace lensspec
