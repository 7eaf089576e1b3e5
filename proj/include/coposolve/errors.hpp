#pragma once

#include <stdexcept>
#include <string>

namespace coposolve {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class ZeroMatrixError : public Error {
public:
  using Error::Error;
};

class ExactSolverCapError : public Error {
public:
  using Error::Error;
};

class GridTooLargeError : public Error {
public:
  using Error::Error;
};

class EpsilonRangeError : public Error {
public:
  using Error::Error;
};

class ZeroSubgradientError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class FormatError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace coposolve
