#pragma once

#include <stdexcept>

namespace xyergo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the alphabet [0,1] or another declared domain.
struct DomainError : Error {
  using Error::Error;
};

struct NondifferentiableError : Error {
  using Error::Error;
};

struct NegativeCycleError : Error {
  using Error::Error;
};

// Peierls barrier requested from a source outside the minimizer set.
struct SourceNotInAubryError : Error {
  using Error::Error;
};

struct InfiniteBarrierError : Error {
  using Error::Error;
};

// Exhaustive routines refuse instances above their stated bounds.
struct SizeError : Error {
  using Error::Error;
};

struct HypothesisError : Error {
  using Error::Error;
};

struct FamilyError : Error {
  using Error::Error;
};

struct EmptyGroundStateError : Error {
  using Error::Error;
};

// Malformed potential document or run configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace xyergo
