#pragma once

#include <stdexcept>
#include <string>

namespace dualcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series was evaluated outside its convergence domain, or a label |z|
/// lies outside the convergence radius of the coherent-state family.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A convergent series did not meet its tolerance within the term cap.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The automatic truncation reached its cap before the tail target.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Quantity is undefined at this point (e.g. Mandel parameter at <N> = 0).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Operands are incompatible (different families, models or truncations).
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Index outside the truncated Fock space.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Model class has no closed-form weight in this library.
class UnsupportedClassError : public Error {
 public:
  using Error::Error;
};

/// Model parameters are valid but outside the range a weight class accepts.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A rescaled argument left the support of a radial weight.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// An adaptive quadrature failed to reach its error target.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

}  // namespace dualcs
