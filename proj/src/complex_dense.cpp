#include "sgws/complex_dense.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sgws/errors.hpp"
#include "sgws/kernels.hpp"

namespace sgws {

ComplexDense::ComplexDense(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorKind::Shape, "ComplexDense: dimensions must be positive");
  }
}

ComplexDense::ComplexDense(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorKind::Shape, "ComplexDense: dimensions must be positive");
  }
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::Shape, "ComplexDense: expected " + std::to_string(rows * cols) +
                                      " entries, got " + std::to_string(data_.size()));
  }
}

ComplexDense::ComplexDense(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  if (rows_ == 0 || cols_ == 0) {
    throw Error(ErrorKind::Shape, "ComplexDense: dimensions must be positive");
  }
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorKind::Shape, "ComplexDense: ragged initializer");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexDense ComplexDense::identity(std::size_t n) {
  ComplexDense out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

ComplexDense ComplexDense::diagonal(std::span<const double> values) {
  ComplexDense out(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
  return out;
}

ComplexDense ComplexDense::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexDense ComplexDense::column(std::span<const cplx> values) {
  return ComplexDense(values.size(), 1, std::vector<cplx>(values.begin(), values.end()));
}

ComplexDense ComplexDense::adjoint() const {
  ComplexDense out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexDense ComplexDense::transpose() const {
  ComplexDense out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexDense ComplexDense::conj() const {
  ComplexDense out = *this;
  for (auto& x : out.data_) x = std::conj(x);
  return out;
}

cplx ComplexDense::trace() const {
  if (!is_square()) throw Error(ErrorKind::Shape, "trace: matrix is not square");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexDense::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& x : data_) sum += std::norm(x);
  return std::sqrt(sum);
}

double ComplexDense::hermitian_defect() const {
  if (!is_square()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

ComplexDense& ComplexDense::operator+=(const ComplexDense& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorKind::Shape, "ComplexDense +=: shape mismatch");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexDense& ComplexDense::operator-=(const ComplexDense& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorKind::Shape, "ComplexDense -=: shape mismatch");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexDense& ComplexDense::operator*=(cplx scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

ComplexDense operator*(const ComplexDense& a, const ComplexDense& b) {
  return kernels::parallel::matmul(a, b);
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::SizeLimit: return "size-limit";
    case ErrorKind::Contract: return "contract";
    case ErrorKind::NotPsd: return "not-psd";
    case ErrorKind::NotEntangled: return "not-entangled";
    case ErrorKind::Refused: return "refused";
    case ErrorKind::Numeric: return "numeric";
  }
  return "unknown";
}

}  // namespace sgws
