#ifndef LCTKIT_ERRORS_HPP
#define LCTKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lctkit {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class OrderOverflowError : public RangeError {
 public:
  OrderOverflowError(int order, int max_order)
      : RangeError("Hermite order " + std::to_string(order) +
                   " exceeds the configured maximum " +
                   std::to_string(max_order)),
        order_(order) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

class GridMismatchError : public Error {
 public:
  using Error::Error;
};

class RepresentationError : public Error {
 public:
  using Error::Error;
};

class ZeroNormError : public Error {
 public:
  using Error::Error;
};

class SymplecticViolationError : public Error {
 public:
  explicit SymplecticViolationError(double residual)
      : Error("parameters are not symplectic: a*d - b*c - 1 = " +
              std::to_string(residual)),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ScaleMismatchError : public Error {
 public:
  using Error::Error;
};

/// Raised when b (coordinate side) or c (momentum side) is too small for the
/// integral kernel; callers should route to the degenerate scaling path.
class DegenerateParameterError : public Error {
 public:
  using Error::Error;
};

class ChirpUndersampledError : public Error {
 public:
  ChirpUndersampledError(double step, double required_step)
      : Error("input grid does not resolve the kernel chirp: step " +
              std::to_string(step) + " > required " +
              std::to_string(required_step)),
        step_(step),
        required_step_(required_step) {}
  double step() const noexcept { return step_; }
  double required_step() const noexcept { return required_step_; }

 private:
  double step_;
  double required_step_;
};

class DuplicateIndexError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lctkit

#endif  // LCTKIT_ERRORS_HPP
