#pragma once

// Data-parallel inner loops. Each kernel exists twice: a plain serial
// reference in `serial` and an OpenMP version in `parallel`. Both produce
// bit-identical results: parallelism is only over independent output rows,
// and every reduction runs in the same order as the serial loop.

#include <cstddef>
#include <span>
#include <vector>

#include "sgws/complex_dense.hpp"

namespace sgws::kernels {

/// One failed instance of the Cauchy-Schwarz necessary condition
/// sqrt(rho_nn rho_mm) >= |rho_mu,nu|. All indices are flat basis indices.
struct CsViolation {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t mu = 0;
  std::size_t nu = 0;
  double lhs = 0.0;  // sqrt(rho_nn rho_mm)
  double rhs = 0.0;  // |rho_mu,nu|
};

/// Packed product terms: factor r of term t has entry (a, b) at
/// factors[((t * parties + r) * local_dim + a) * local_dim + b].
struct PackedProducts {
  std::size_t local_dim = 0;
  std::size_t parties = 0;
  std::span<const double> weights;
  std::span<const cplx> factors;
};

namespace serial {

ComplexDense matmul(const ComplexDense& a, const ComplexDense& b);
ComplexDense kron(const ComplexDense& a, const ComplexDense& b);
/// transposed[r] selects the subsystems whose indices are swapped.
ComplexDense partial_transpose(const ComplexDense& rho, std::span<const std::size_t> dims,
                               std::span<const bool> transposed);
/// Sum_t w_t (F_t1 x ... x F_tN), evaluated entry by entry.
ComplexDense reconstruct(const PackedProducts& products);
std::vector<CsViolation> cauchy_schwarz_scan(const ComplexDense& rho, std::size_t local_dim,
                                             std::size_t parties, double tolerance);

}  // namespace serial

namespace parallel {

ComplexDense matmul(const ComplexDense& a, const ComplexDense& b);
ComplexDense kron(const ComplexDense& a, const ComplexDense& b);
ComplexDense partial_transpose(const ComplexDense& rho, std::span<const std::size_t> dims,
                               std::span<const bool> transposed);
ComplexDense reconstruct(const PackedProducts& products);
std::vector<CsViolation> cauchy_schwarz_scan(const ComplexDense& rho, std::size_t local_dim,
                                             std::size_t parties, double tolerance);

}  // namespace parallel

/// True when the parallel kernels were compiled with OpenMP.
bool openmp_enabled() noexcept;

}  // namespace sgws::kernels
