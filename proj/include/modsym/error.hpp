#ifndef MODSYM_ERROR_HPP
#define MODSYM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace modsym {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: mismatched algebras, ill-shaped templates, bad catalog keys.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A validation failed numerically (invariant out of tolerance, element
/// outside a required span, non-action template).
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Requested functionality the tool deliberately refuses (unsupported
/// symmetry source, noncompact gauge group in the orbit optimizer, ...).
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// Raised when the commuting-hypothesis check fails; aborts the pipeline.
class HypothesisError : public Error {
public:
  HypothesisError(const std::string& msg, double group_residual, double algebra_residual)
      : Error(msg), group_residual(group_residual), algebra_residual(algebra_residual) {}
  double group_residual;
  double algebra_residual;
};

} // namespace modsym

#endif
