#pragma once

// Special generalized Werner states
//
//   W(v) = (1 - v) I / d^N + v |psi><psi|,   |psi> = sum_i alpha_i |i i ... i>
//
// and the separability threshold v_c = T / (d^N + T) with
// T = 1 / max_{i != j} |alpha_i alpha_j|.

#include <cstddef>
#include <span>
#include <vector>

#include "sgws/complex_dense.hpp"

namespace sgws {

/// Validated Schmidt coefficients of |psi>.
struct CoeffVector {
  std::size_t d = 0;
  std::vector<cplx> alpha;
  double T = 0.0;
  /// Whether the single-qudit matrix (1/d)(I + T sum_{i!=j} a_i conj(a_j) |i><j|)
  /// is a density matrix (min eigenvalue >= -tol::kPsd).
  bool restriction2_ok = false;
  double restriction2_min_eig = 0.0;
};

struct SgwsSpec {
  std::size_t d = 0;
  std::size_t N = 0;
  CoeffVector coeffs;
  double v = 0.0;
};

/// d^N, throwing SizeLimit when it exceeds kMaxDimension.
std::size_t total_dimension(std::size_t d, std::size_t N);

/// Checks normalization and entanglement of alpha, derives T and records
/// whether the PSD restriction holds: the coherence matrix below must be
/// positive semidefinite for the constructive decomposition to exist.
/// Throws Validation or NotEntangled.
CoeffVector validate_coeffs(std::span<const cplx> alpha, std::size_t d);

/// (1/d)(I + T sum_{i != j} alpha_i conj(alpha_j) |i><j|).
ComplexDense coherence_matrix(const CoeffVector& coeffs);

/// Builds and checks an SgwsSpec (d^N cap, v in [0,1], consistent d).
SgwsSpec make_spec(CoeffVector coeffs, std::size_t N, double v);

/// Column vector of length d^N with alpha_i at flat index i (d^N - 1)/(d - 1).
ComplexDense build_pure_state(const CoeffVector& coeffs, std::size_t N);

ComplexDense build_sgws(const SgwsSpec& spec);

double critical_v(const CoeffVector& coeffs, std::size_t N);

// One-parameter family: alpha_0 = cos(theta)/sqrt(d),
// alpha_i = sqrt((d - cos^2 theta) / (d (d - 1))) for i >= 1.
// Only |cos theta| enters.

CoeffVector family_coeffs(std::size_t d, double theta);

/// Closed form of critical_v(family_coeffs(d, theta), N). For d >= 3 this is
/// d(d-1) / (d^N (d - cos^2) + d(d-1)); for d = 2 the single pair gives
/// 1 / (2^N alpha_0 alpha_1 + 1).
double family_critical_v(std::size_t d, std::size_t N, double theta);

/// Closed-form spectrum of coherence_matrix(family_coeffs(d, theta)):
/// {eig_plus, eig_minus, 0 x (d-2)}. For d = 2 the matrix is always a
/// rank-one projector, so the result is {1, 0}.
std::vector<double> family_rho_eigs(std::size_t d, double theta);

}  // namespace sgws
