#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace augcat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Composition undefined, identities missing, malformed input structure.
struct StructuralError : Error {
  using Error::Error;
};

// Violated precondition or bad argument.
struct ArgumentError : Error {
  using Error::Error;
};

// Object, degree or level outside what is available.
struct RangeError : Error {
  using Error::Error;
};

struct TruncationError : RangeError {
  using RangeError::RangeError;
};

// A search exceeded its state budget; the answer is inconclusive.
struct EnumerationLimit : Error {
  EnumerationLimit(const std::string& what, std::uint64_t states)
      : Error(what), states(states) {}
  std::uint64_t states;
};

struct AmalgamationRefused : Error {
  AmalgamationRefused(const std::string& gate, const std::string& detail)
      : Error("amalgamation refused: " + gate + " gate failed: " + detail), gate(gate) {}
  std::string gate;
};

}  // namespace augcat
