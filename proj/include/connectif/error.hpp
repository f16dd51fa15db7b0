#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace connectif {

/// Base class of every fault raised by the library. Domain faults (a family
/// that violates the closure axiom, a part that is not connected, ...) derive
/// from it so callers can tell them apart from programming errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySet : public Error {
 public:
  EmptySet() : Error("empty subset") {}
};

class OutOfRange : public Error {
 public:
  OutOfRange(std::uint64_t mask, unsigned n)
      : Error("subset has elements outside {1.." + std::to_string(n) + "}"), mask_(mask) {}
  std::uint64_t mask() const noexcept { return mask_; }

 private:
  std::uint64_t mask_;
};

class InvalidGround : public Error {
 public:
  explicit InvalidGround(long long n)
      : Error("ground set size " + std::to_string(n) + " outside 1..64") {}
};

class TooLarge : public Error {
 public:
  TooLarge(unsigned n, unsigned bound)
      : Error("n = " + std::to_string(n) + " exceeds the bound " + std::to_string(bound)) {}
};

class AxiomViolation : public Error {
 public:
  AxiomViolation(std::uint64_t a, std::uint64_t b, const std::string& what)
      : Error(what), a_(a), b_(b) {}
  std::uint64_t first() const noexcept { return a_; }
  std::uint64_t second() const noexcept { return b_; }

 private:
  std::uint64_t a_;
  std::uint64_t b_;
};

class NotConnected : public Error {
 public:
  explicit NotConnected(const std::string& what) : Error(what) {}
};

class CoverageGap : public Error {
 public:
  explicit CoverageGap(const std::string& what) : Error(what) {}
};

class SingletonMember : public Error {
 public:
  explicit SingletonMember(const std::string& what) : Error(what) {}
};

class EmptyList : public Error {
 public:
  EmptyList() : Error("empty list of spaces") {}
};

class BadArity : public Error {
 public:
  explicit BadArity(const std::string& what) : Error(what) {}
};

class OutOfDomain : public Error {
 public:
  explicit OutOfDomain(const std::string& what) : Error(what) {}
};

/// Raised by the tree and link-expression parsers.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& expected)
      : Error("syntax error at position " + std::to_string(position) + ": expected " + expected),
        position_(position),
        expected_(expected) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class ArityError : public Error {
 public:
  ArityError(std::size_t position, const std::string& what)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace connectif
