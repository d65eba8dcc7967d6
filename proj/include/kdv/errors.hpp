#ifndef KDV_ERRORS_HPP
#define KDV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kdv {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectral data or a derived input violates its invariants.
class InvalidData : public Error {
 public:
  using Error::Error;
};

/// The coupling linear system is rank deficient and the perturbation
/// fallback did not converge.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// A solved polynomial pair fails the growth and positivity condition.
class NotHerglotz : public Error {
 public:
  using Error::Error;
};

/// A single-pair problem with a negative coupling constant.
class Unsolvable : public Error {
 public:
  using Error::Error;
};

class PoleAt : public Error {
 public:
  PoleAt(double location, const std::string& what)
      : Error(what), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

class NegativeSquare : public Error {
 public:
  using Error::Error;
};

class InvalidN : public Error {
 public:
  using Error::Error;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

class IntegratorFailure : public Error {
 public:
  using Error::Error;
};

class NearPole : public Error {
 public:
  using Error::Error;
};

class MissedEigenvalue : public Error {
 public:
  using Error::Error;
};

}  // namespace kdv

#endif  // KDV_ERRORS_HPP
