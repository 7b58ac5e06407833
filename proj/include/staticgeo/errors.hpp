#pragma once

#include <stdexcept>
#include <string>

namespace staticgeo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension outside 3 <= n <= 7.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Evaluation point outside the domain of a metric, flow or surface.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// A hypothesis the operation depends on is not met.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Quadrature did not converge under node doubling.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Flow speed left [1e-8, 1e8] (or time stopped advancing) at flow time `time()`.
class SingularFlowError : public Error {
 public:
  SingularFlowError(const std::string& what, double t) : Error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

// Explicit step size starved by the parabolic stability bound.
class StiffnessError : public Error {
 public:
  StiffnessError(const std::string& what, double t) : Error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace staticgeo
