#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sgws/complex_dense.hpp"
#include "sgws/rng.hpp"

namespace testing {

using sgws::ComplexDense;
using sgws::cplx;

inline ComplexDense random_matrix(sgws::SplitMix64& rng, std::size_t n, std::size_t m) {
  ComplexDense out(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto [re, im] = rng.normal_pair();
      out(i, j) = {re, im};
    }
  }
  return out;
}

inline ComplexDense random_hermitian(sgws::SplitMix64& rng, std::size_t n) {
  const ComplexDense g = random_matrix(rng, n, n);
  ComplexDense out = g + g.adjoint();
  out *= cplx{0.5};
  return out;
}

/// Random density matrix G G^dagger / tr.
inline ComplexDense random_density(sgws::SplitMix64& rng, std::size_t n, std::size_t rank) {
  const ComplexDense g = random_matrix(rng, n, rank);
  ComplexDense out = g * g.adjoint();
  out *= cplx{1.0 / out.trace().real()};
  return out;
}

inline ComplexDense random_unitary(sgws::SplitMix64& rng, std::size_t n) {
  const ComplexDense g = random_matrix(rng, n, n);
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = g(i, j);
  const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
  ComplexDense out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = q(i, j);
  return out;
}

/// Reference spectrum from Eigen's self-adjoint solver, ascending.
inline std::vector<double> oracle_eigenvalues(const ComplexDense& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  const Eigen::VectorXd values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m).eigenvalues();
  std::vector<double> out(values.data(), values.data() + values.size());
  std::sort(out.begin(), out.end());
  return out;
}

inline double max_abs_diff(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return INFINITY;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double out = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) out = std::max(out, std::abs(a[k] - b[k]));
  return out;
}

inline bool bit_identical(const ComplexDense& a, const ComplexDense& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    if (a.data()[k].real() != b.data()[k].real() || a.data()[k].imag() != b.data()[k].imag()) {
      return false;
    }
  }
  return true;
}

}  // namespace testing
