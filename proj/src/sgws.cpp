#include "sgws/sgws.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "sgws/cmatrix.hpp"
#include "sgws/errors.hpp"
#include "sgws/tolerances.hpp"

namespace sgws {

namespace {

void require_local_dim(std::size_t d, const char* op) {
  if (d < 2) throw Error(ErrorKind::Validation, std::string(op) + ": d must be at least 2");
}

double family_cos(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorKind::Validation, "family: theta must be finite");
  return std::abs(std::cos(theta));
}

void require_family_entangled(std::size_t d, double c) {
  // For d >= 3 every alpha_i with i >= 1 is positive, so only d = 2 can
  // degenerate to a product state (alpha_0 = 0).
  if (d == 2 && c / std::sqrt(2.0) <= tol::kNonzeroCoeff) {
    throw Error(ErrorKind::NotEntangled,
                "family: cos(theta) = 0 leaves a single nonzero coefficient for d = 2");
  }
}

}  // namespace

std::size_t total_dimension(std::size_t d, std::size_t N) {
  require_local_dim(d, "total_dimension");
  if (N < 1) throw Error(ErrorKind::Validation, "total_dimension: N must be at least 1");
  std::size_t dim = 1;
  for (std::size_t r = 0; r < N; ++r) {
    dim *= d;
    if (dim > kMaxDimension) {
      throw Error(ErrorKind::SizeLimit, "d^N = " + std::to_string(d) + "^" + std::to_string(N) +
                                            " exceeds dimension cap " +
                                            std::to_string(kMaxDimension));
    }
  }
  return dim;
}

CoeffVector validate_coeffs(std::span<const cplx> alpha, std::size_t d) {
  require_local_dim(d, "validate_coeffs");
  if (alpha.size() != d) {
    throw Error(ErrorKind::Validation, "validate_coeffs: expected " + std::to_string(d) +
                                           " coefficients, got " + std::to_string(alpha.size()));
  }
  double norm = 0.0;
  std::size_t nonzero = 0;
  for (const cplx& a : alpha) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorKind::Validation, "validate_coeffs: non-finite coefficient");
    }
    norm += std::norm(a);
    if (std::abs(a) > tol::kNonzeroCoeff) ++nonzero;
  }
  if (std::abs(norm - 1.0) > tol::kNormalization) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "validate_coeffs: sum |alpha_i|^2 = " << norm << " is not 1";
    throw Error(ErrorKind::Validation, msg.str());
  }
  if (nonzero < 2) {
    throw Error(ErrorKind::NotEntangled,
                "validate_coeffs: fewer than two nonzero coefficients (product state)");
  }

  double max_pair = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      max_pair = std::max(max_pair, std::abs(alpha[i]) * std::abs(alpha[j]));

  CoeffVector out;
  out.d = d;
  out.alpha.assign(alpha.begin(), alpha.end());
  out.T = 1.0 / max_pair;
  out.restriction2_min_eig = min_eigenvalue(coherence_matrix(out));
  out.restriction2_ok = out.restriction2_min_eig >= -tol::kPsd;
  return out;
}

ComplexDense coherence_matrix(const CoeffVector& coeffs) {
  const std::size_t d = coeffs.d;
  ComplexDense rho(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      rho(i, j) = i == j ? cplx(1.0) : coeffs.T * coeffs.alpha[i] * std::conj(coeffs.alpha[j]);
      rho(i, j) /= static_cast<double>(d);
    }
  }
  return rho;
}

SgwsSpec make_spec(CoeffVector coeffs, std::size_t N, double v) {
  if (coeffs.alpha.size() != coeffs.d || coeffs.d < 2) {
    throw Error(ErrorKind::Validation, "make_spec: coefficient vector is not validated");
  }
  total_dimension(coeffs.d, N);
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << "make_spec: v = " << v << " outside [0, 1]";
    throw Error(ErrorKind::Validation, msg.str());
  }
  SgwsSpec spec;
  spec.d = coeffs.d;
  spec.N = N;
  spec.coeffs = std::move(coeffs);
  spec.v = v;
  return spec;
}

ComplexDense build_pure_state(const CoeffVector& coeffs, std::size_t N) {
  const std::size_t d = coeffs.d;
  const std::size_t dim = total_dimension(d, N);
  const std::size_t step = (dim - 1) / (d - 1);  // 1 + d + ... + d^{N-1}
  ComplexDense psi(dim, 1);
  for (std::size_t i = 0; i < d; ++i) psi(i * step, 0) = coeffs.alpha[i];
  return psi;
}

ComplexDense build_sgws(const SgwsSpec& spec) {
  const std::size_t dim = total_dimension(spec.d, spec.N);
  const ComplexDense psi = build_pure_state(spec.coeffs, spec.N);
  ComplexDense w = outer(psi, psi);
  w *= spec.v;
  const double mixed = (1.0 - spec.v) / static_cast<double>(dim);
  for (std::size_t i = 0; i < dim; ++i) w(i, i) += mixed;
  return w;
}

double critical_v(const CoeffVector& coeffs, std::size_t N) {
  const double dim = static_cast<double>(total_dimension(coeffs.d, N));
  return coeffs.T / (dim + coeffs.T);
}

CoeffVector family_coeffs(std::size_t d, double theta) {
  require_local_dim(d, "family_coeffs");
  const double c = family_cos(theta);
  require_family_entangled(d, c);
  const double dd = static_cast<double>(d);
  std::vector<cplx> alpha(d, std::sqrt((dd - c * c) / (dd * (dd - 1.0))));
  alpha[0] = c / std::sqrt(dd);
  return validate_coeffs(alpha, d);
}

double family_critical_v(std::size_t d, std::size_t N, double theta) {
  require_local_dim(d, "family_critical_v");
  const double c = family_cos(theta);
  require_family_entangled(d, c);
  const double dim = static_cast<double>(total_dimension(d, N));
  if (d == 2) {
    const double pair = (c / std::sqrt(2.0)) * std::sqrt((2.0 - c * c) / 2.0);
    return 1.0 / (dim * pair + 1.0);
  }
  const double dd = static_cast<double>(d);
  return dd * (dd - 1.0) / (dim * (dd - c * c) + dd * (dd - 1.0));
}

std::vector<double> family_rho_eigs(std::size_t d, double theta) {
  require_local_dim(d, "family_rho_eigs");
  const double c = family_cos(theta);
  require_family_entangled(d, c);
  std::vector<double> eigs(d, 0.0);
  if (d == 2) {
    eigs[0] = 1.0;
    return eigs;
  }
  const double dd = static_cast<double>(d);
  const double c2 = c * c;
  const double r = std::sqrt(((dd - 2.0) * (dd - 2.0) + (3.0 * dd - 4.0) * c2) / (dd * (dd - c2)));
  eigs[0] = 0.5 * (1.0 + r);
  eigs[1] = 0.5 * (1.0 - r);
  return eigs;
}

}  // namespace sgws
