#pragma once

#include <stdexcept>
#include <string>

namespace orbisymp {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidSignatureError : Error {
  using Error::Error;
};

// Requested construction violates the negative-Euler-characteristic requirement.
struct EulerObstructionError : Error {
  using Error::Error;
};

struct NotOrderTwoError : Error {
  using Error::Error;
};

// Spectrum is not real, positive, and simple.
struct NonHyperbolicError : Error {
  using Error::Error;
};

// Real spectrum whose eigenvalue gaps are too small to separate reliably.
struct ClusteredSpectrumError : NonHyperbolicError {
  using NonHyperbolicError::NonHyperbolicError;
};

struct NewtonDivergedError : Error {
  NewtonDivergedError(const std::string& msg, int iterations_, double residual_)
      : Error(msg), iterations(iterations_), residual(residual_) {}

  int iterations = 0;
  double residual = 0.0;
};

struct NotParabolicError : Error {
  using Error::Error;
};

// A torsion generator whose power is far from the identity, or whose averaged
// adjoint operator has no clean singular gap at the rank threshold.
struct DegenerateSpectrumError : Error {
  using Error::Error;
};

// A cocycle value violates the torsion condition at a cone generator.
struct TorsionViolationError : Error {
  using Error::Error;
};

// A rank decision came out inconsistent with the representation's centralizer
// assumptions, or the singular spectrum is ambiguous at the threshold.
struct RankDeficientError : Error {
  using Error::Error;
};

struct FlavorNotAvailableError : Error {
  using Error::Error;
};

struct InvalidSplittingError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace orbisymp
