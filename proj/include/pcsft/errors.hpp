#pragma once

#include <stdexcept>
#include <string>

namespace pcsft {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  using Error::Error;
};

struct NotPsd : Error {
  using Error::Error;
};

struct NotProjector : Error {
  using Error::Error;
};

struct NotOrthogonal : Error {
  using Error::Error;
};

struct IncompleteProjectors : Error {
  using Error::Error;
};

struct InvalidCovariance : Error {
  using Error::Error;
};

struct InvalidState : Error {
  using Error::Error;
};

struct ZeroField : Error {
  using Error::Error;
};

struct NotTracePreserving : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  using Error::Error;
};

// Raised on malformed or schema-violating input files.
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace pcsft
