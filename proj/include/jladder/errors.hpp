#pragma once

#include <stdexcept>
#include <string>

namespace jladder {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. t < 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Ordinate outside a table or model range; iterate escaped the ladder.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Parameters violate an admissibility condition such as U <= T / ln^2 T.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

/// Quadrature, Newton or root bracketing failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A zero search exhausted its span without finding what it was asked for.
class SearchExhaustedError : public Error {
 public:
  using Error::Error;
};

/// Malformed file, cache or report payload.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace jladder
