#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptosc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension mismatch or oversize operand.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Raised when the spectrum leaves the real axis.
class PtBrokenError : public Error {
 public:
  PtBrokenError(const std::string& what, std::vector<std::complex<double>> eigenvalues)
      : Error(what), eigenvalues_(std::move(eigenvalues)) {}
  const std::vector<std::complex<double>>& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  std::vector<std::complex<double>> eigenvalues_;
};

class DegenerateNormError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  ConstructionError(const std::string& what, double defect) : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class BasisError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptosc
