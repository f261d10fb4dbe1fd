#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sgws {

using cplx = std::complex<double>;

/// Largest total Hilbert-space dimension any operator may have.
inline constexpr std::size_t kMaxDimension = 1024;

/// Dense complex matrix, row-major. Column vectors are n x 1 matrices.
class ComplexDense {
 public:
  ComplexDense() = default;
  ComplexDense(std::size_t rows, std::size_t cols);
  ComplexDense(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexDense(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexDense identity(std::size_t n);
  static ComplexDense diagonal(std::span<const double> values);
  static ComplexDense diagonal(std::initializer_list<double> values);
  static ComplexDense column(std::span<const cplx> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexDense adjoint() const;
  ComplexDense transpose() const;
  ComplexDense conj() const;

  cplx trace() const;
  double frobenius_norm() const;
  /// max_{i,j} |A_ij - conj(A_ji)|; infinity for non-square matrices.
  double hermitian_defect() const;

  ComplexDense& operator+=(const ComplexDense& other);
  ComplexDense& operator-=(const ComplexDense& other);
  ComplexDense& operator*=(cplx scale);

  friend ComplexDense operator+(ComplexDense a, const ComplexDense& b) { return a += b; }
  friend ComplexDense operator-(ComplexDense a, const ComplexDense& b) { return a -= b; }
  friend ComplexDense operator*(ComplexDense a, cplx s) { return a *= s; }
  friend ComplexDense operator*(cplx s, ComplexDense a) { return a *= s; }
  friend ComplexDense operator*(const ComplexDense& a, const ComplexDense& b);

  bool operator==(const ComplexDense& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

}  // namespace sgws
