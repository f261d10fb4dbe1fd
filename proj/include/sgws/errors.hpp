#pragma once

#include <stdexcept>
#include <string>

namespace sgws {

enum class ErrorKind {
  Validation,   // malformed or out-of-range input
  Shape,        // dimension mismatch
  SizeLimit,    // configured caps exceeded
  Contract,     // precondition violated (e.g. non-Hermitian input)
  NotPsd,       // matrix expected PSD but is not
  NotEntangled, // pure state has fewer than two nonzero Schmidt coefficients
  Refused,      // operation declined (PSD restriction fails, v above threshold)
  Numeric,      // iteration failed to converge
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NotPsdError : public Error {
 public:
  NotPsdError(double eigenvalue, const std::string& what)
      : Error(ErrorKind::NotPsd, what), eigenvalue_(eigenvalue) {}

  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class NumericError : public Error {
 public:
  NumericError(double residual, const std::string& what)
      : Error(ErrorKind::Numeric, what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace sgws
