#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rimc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A - sigma*B is singular to working precision.
class ShiftIsEigenvalue : public Error {
 public:
  explicit ShiftIsEigenvalue(std::complex<double> sigma);
  std::complex<double> sigma() const noexcept { return sigma_; }

 private:
  std::complex<double> sigma_;
};

/// I + (sigma - z) H is singular: -1/(sigma - z) is a Ritz value.
class ReducedSingular : public Error {
 public:
  explicit ReducedSingular(std::complex<double> z);
  std::complex<double> z() const noexcept { return z_; }

 private:
  std::complex<double> z_;
};

class CacheEmpty : public Error {
 public:
  CacheEmpty() : Error("shift cache is empty") {}
};

class ShiftBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ShiftConstructionFailed : public Error {
 public:
  using Error::Error;
};

class OnContour : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rimc
