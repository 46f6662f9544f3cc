#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace relct {

using Count = std::uint64_t;

/// Encoded value of a first-order variable. Domain values are 0..r-1.
using Value = std::uint8_t;

/// Relationship attribute value when the relationship does not hold.
inline constexpr Value kNA = 0xFF;
/// Internal marker for a column whose relationship status is unconstrained.
inline constexpr Value kDontCare = 0xFE;
/// Largest domain a declared attribute may have.
inline constexpr std::size_t kMaxDomainSize = 250;

inline constexpr Value kFalse = 0;
inline constexpr Value kTrue = 1;

/// Index into Schema::variables().
using VarId = std::uint32_t;
/// Index into Schema::population_vars().
using PopVarId = std::uint32_t;

/// Bit i set means relationship i is a member.
using RelSet = std::uint32_t;
/// Bit i set means population variable i is a member.
using PopSet = std::uint64_t;

inline constexpr std::size_t kMaxRelationships = 32;
inline constexpr std::size_t kMaxPopulationVars = 64;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Raised when input data violates a schema or integrity constraint.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// The row cap on cached ct-tables could not be honoured.
class MemoryCapExceeded : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline Count checked_mul(Count a, Count b) {
  Count out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("count overflow in multiplication");
  return out;
}

inline Count checked_add(Count a, Count b) {
  Count out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("count overflow in addition");
  return out;
}

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

}  // namespace relct
