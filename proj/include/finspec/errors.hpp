#pragma once

#include <stdexcept>
#include <string>

namespace finspec {

// Base type for every error the toolkit raises on bad input or a failed
// numerical precondition. Internal logic errors use assertions instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  NotHermitian(const std::string& what, double defect)
      : Error(what), defect(defect) {}
  double defect;
};

class NotInvertible : public Error {
 public:
  NotInvertible(const std::string& what, double smallest_singular_value)
      : Error(what), smallest_singular_value(smallest_singular_value) {}
  double smallest_singular_value;
};

class NotInAlgebra : public Error {
 public:
  NotInAlgebra(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

class LadderDepthExceeded : public Error {
 public:
  using Error::Error;
};

class NotAnOmegaForm : public Error {
 public:
  using Error::Error;
};

class BadBlockLayout : public Error {
 public:
  using Error::Error;
};

class OutsideNeighborhood : public Error {
 public:
  OutsideNeighborhood(const std::string& what, double distance)
      : Error(what), distance(distance) {}
  double distance;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class BadWeights : public Error {
 public:
  using Error::Error;
};

class NotSorted : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace finspec
