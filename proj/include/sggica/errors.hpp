#pragma once

#include <stdexcept>
#include <string>

namespace sggica {

// Argument outside the mathematical domain (non-positive scale, bad shape, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A projection direction whose left or right side carries no mass: the
// closed-form scale estimators do not exist there.  The optimizer treats
// points raising this as infeasible.
class DegenerateSideError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |det W| below threshold, or a factorization too ill-conditioned to use.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; message carries the position where known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed container, but a payload we do not decode (compressed WAV, ...).
class UnsupportedFormatError : public ParseError {
 public:
  using ParseError::ParseError;
};

// End-to-end fitting failure (no feasible start, all restarts failed, ...).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sggica
