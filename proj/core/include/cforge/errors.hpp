#pragma once

#include <stdexcept>
#include <string>

namespace cforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interface violations: overlapping or unknown variables, cyclic connections.
class InterfaceError : public Error {
 public:
  using Error::Error;
};

/// Bounds or optimization requested over an empty region.
class InfeasibleRegion : public Error {
 public:
  InfeasibleRegion() : Error("infeasible region") {}
  using Error::Error;
};

/// Fourier-Motzkin intermediate term count exceeded the guard.
class ExplosionError : public Error {
 public:
  using Error::Error;
};

/// Quotient post-verification failed: compose(partial, result) does not refine top.
class QuotientUnsound : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cforge
