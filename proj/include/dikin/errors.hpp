#pragma once

#include <stdexcept>
#include <string>

namespace dikin {

// Base type for all typed numeric failures.  CLI maps these to exit code 1.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionViolated : Error {
  using Error::Error;
};

// Factorization pivot collapsed relative to the matrix scale.
struct IllConditioned : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

// Dikin step at theta = 1 annihilates the maximal coordinate.
struct DegenerateStep : Error {
  using Error::Error;
};

struct DegenerateInput : Error {
  using Error::Error;
};

struct NotApplicable : Error {
  using Error::Error;
};

struct BracketError : Error {
  using Error::Error;
};

// A certified inequality of the contraction argument failed.
struct ClaimViolated : Error {
  using Error::Error;
};

struct NonInterior : Error {
  using Error::Error;
};

struct NoInteriorFound : Error {
  using Error::Error;
};

struct NotFound : Error {
  using Error::Error;
};

// Bad command line or malformed input file.  CLI maps to exit code 2.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dikin
