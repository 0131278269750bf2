#pragma once

#include <stdexcept>
#include <string>

namespace uavnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by a caller-supplied value.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// No feasible solution exists (e.g. no perfect matching over reachable pairs).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace uavnet
