#pragma once

#include <stdexcept>
#include <string>

namespace blowlab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A grid cannot represent the requested object to the required accuracy.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// The blowup criterion cannot be applied (e.g. the source violates Osgood).
class CriterionInapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blowlab
