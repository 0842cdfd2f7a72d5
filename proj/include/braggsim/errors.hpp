#pragma once

#include <stdexcept>
#include <string>

namespace braggsim {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the physical or mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Numerical resolution insufficient (cutoffs, quadrature grids, Nyquist limits).
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Bloch functions could not be brought to the real-positive gauge.
class GaugeError : public Error {
 public:
  using Error::Error;
};

// Requested Hilbert space exceeds the configured capacity.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Operands built on incompatible bases.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Zero detuning: outside the dispersive regime.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

// Frequency grid does not cover the spectral lines.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// Malformed command line or configuration file.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Well-formed but inconsistent configuration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace braggsim
