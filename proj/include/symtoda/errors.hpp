#pragma once

#include <stdexcept>
#include <string>

namespace symtoda {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (wrong size, det != 1, not SPD, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine broke down (overflow, rank ambiguity, drift).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The point is non-generic: repeated eigenvalues or a vanishing angle chart.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// An identity that should hold numerically did not.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace symtoda
