#pragma once

// Dense complex linear algebra used throughout: Kronecker products, a cyclic
// Jacobi Hermitian eigensolver, PSD square roots and partial operations on
// multipartite operators.
//
// Subsystems are numbered 1..N. Subsystem 1 is the most significant digit of
// a flat basis index: |i_1 ... i_N> maps to sum_r i_r * prod_{s>r} dims[s].

#include <cstddef>
#include <span>
#include <vector>

#include "sgws/complex_dense.hpp"
#include "sgws/tolerances.hpp"

namespace sgws {

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexDense eigenvectors;        // column k belongs to eigenvalues[k]
  int sweeps = 0;
};

struct JacobiOptions {
  double off_diagonal_tolerance = tol::kJacobiOffDiagonal;
  int max_sweeps = tol::kJacobiMaxSweeps;
};

ComplexDense matmul(const ComplexDense& a, const ComplexDense& b);

/// Kronecker product. Throws SizeLimit when either result dimension exceeds
/// kMaxDimension.
ComplexDense kron(const ComplexDense& a, const ComplexDense& b);

/// kron(factors[0], kron(factors[1], ...)).
ComplexDense kron_all(std::span<const ComplexDense> factors);

/// |a><b| for column vectors a and b.
ComplexDense outer(const ComplexDense& a, const ComplexDense& b);

/// (A + A^dagger) / 2.
ComplexDense hermitian_part(const ComplexDense& a);

bool is_hermitian(const ComplexDense& a, double tolerance = tol::kHermitian);

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// The input is checked against tol::kHermitian and symmetrized before the
/// sweeps start. Iteration stops once the off-diagonal Frobenius norm drops
/// below off_diagonal_tolerance * max(1, ||A||_F); if that has not happened
/// after max_sweeps a NumericError carrying the residual is thrown.
/// Eigenvalues are returned ascending; the order within a degenerate cluster
/// is unspecified.
EigenResult hermitian_eigen(const ComplexDense& a, const JacobiOptions& options = {});

std::vector<double> hermitian_eigenvalues(const ComplexDense& a);

double min_eigenvalue(const ComplexDense& a);

/// Principal square root of a PSD matrix. Eigenvalues in [-tol::kPsd, 0) are
/// clamped to zero; anything more negative throws NotPsdError.
ComplexDense psd_sqrt(const ComplexDense& a);

/// Transposes the indices of the subsystems listed in `subset` (1-based).
/// `subset` must be a nonempty proper subset of {1..dims.size()}.
ComplexDense partial_transpose(const ComplexDense& rho, std::span<const std::size_t> dims,
                               std::span<const std::size_t> subset);

/// Traces out the subsystems listed in `traced` (1-based).
ComplexDense partial_trace(const ComplexDense& rho, std::span<const std::size_t> dims,
                           std::span<const std::size_t> traced);

double frobenius_distance(const ComplexDense& a, const ComplexDense& b);

}  // namespace sgws
