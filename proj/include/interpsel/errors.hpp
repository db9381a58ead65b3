#pragma once

#include <stdexcept>

namespace interpsel {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied configuration (generator settings, grids, weights).
struct ConfigError : Error {
  using Error::Error;
};

// Malformed input file; the message carries file and line context.
struct ParseError : Error {
  using Error::Error;
};

// Structurally invalid in-process input (dimension mismatch, non-finite
// values, labels outside {-1, +1}).
struct InputError : Error {
  using Error::Error;
};

// A zero weight vector has no direction, so its map is undefined.
struct DegenerateModelError : Error {
  using Error::Error;
};

// The reference solution collapsed to the zero vector (no class signal).
struct DegenerateReferenceError : Error {
  using Error::Error;
};

// A metric could not be evaluated (e.g. every replicate was degenerate).
struct MetricError : Error {
  using Error::Error;
};

// Bootstrap resampling could not produce a usable replicate.
struct PerturbationError : Error {
  using Error::Error;
};

// Model selection failed (e.g. no candidate above the performance floor).
struct SelectionError : Error {
  using Error::Error;
};

}  // namespace interpsel
