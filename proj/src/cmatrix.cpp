#include "sgws/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>

#include "sgws/errors.hpp"
#include "sgws/kernels.hpp"

namespace sgws {

namespace {

void require_square(const ComplexDense& a, const char* op) {
  if (!a.is_square()) {
    throw Error(ErrorKind::Shape, std::string(op) + ": matrix is " + std::to_string(a.rows()) +
                                      "x" + std::to_string(a.cols()) + ", expected square");
  }
}

void require_hermitian(const ComplexDense& a, const char* op) {
  require_square(a, op);
  const double defect = a.hermitian_defect();
  if (!(defect <= tol::kHermitian)) {
    std::ostringstream msg;
    msg << op << ": input is not Hermitian (max |A_ij - conj(A_ji)| = " << defect << ")";
    throw Error(ErrorKind::Contract, msg.str());
  }
}

double off_diagonal_norm(const ComplexDense& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// Zeroes a(p,q) with the unitary J = [[c, s e], [-s conj(e), c]] acting on
// the (p,q) plane, where e = a(p,q)/|a(p,q)|. Updates a <- J^dagger a J and
// v <- v J.
void jacobi_rotate(ComplexDense& a, ComplexDense& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cplx e = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx se = s * e;
  const cplx se_conj = std::conj(se);
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp - se_conj * akq;
    a(k, q) = se * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk - se * aqk;
    a(q, k) = se_conj * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = c * vkp - se_conj * vkq;
    v(k, q) = se * vkp + c * vkq;
  }
}

std::vector<std::size_t> subsystem_mask(std::span<const std::size_t> dims,
                                        std::span<const std::size_t> subset, const char* op) {
  std::vector<std::size_t> unique(subset.begin(), subset.end());
  std::sort(unique.begin(), unique.end());
  if (std::adjacent_find(unique.begin(), unique.end()) != unique.end()) {
    throw Error(ErrorKind::Contract, std::string(op) + ": duplicate subsystem index");
  }
  if (unique.empty() || unique.size() >= dims.size()) {
    throw Error(ErrorKind::Contract,
                std::string(op) + ": subset must be a nonempty proper subset of the subsystems");
  }
  std::vector<std::size_t> mask(dims.size(), 0);
  for (std::size_t idx : unique) {
    if (idx < 1 || idx > dims.size()) {
      throw Error(ErrorKind::Contract, std::string(op) + ": subsystem index " +
                                           std::to_string(idx) + " outside 1.." +
                                           std::to_string(dims.size()));
    }
    mask[idx - 1] = 1;
  }
  return mask;
}

void require_dims(const ComplexDense& rho, std::span<const std::size_t> dims, const char* op) {
  require_square(rho, op);
  if (dims.empty()) throw Error(ErrorKind::Shape, std::string(op) + ": no subsystems");
  std::size_t prod = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw Error(ErrorKind::Shape, std::string(op) + ": zero subsystem dimension");
    prod *= d;
  }
  if (prod != rho.rows()) {
    throw Error(ErrorKind::Shape, std::string(op) + ": subsystem dimensions multiply to " +
                                      std::to_string(prod) + " but matrix is " +
                                      std::to_string(rho.rows()) + "-dimensional");
  }
}

}  // namespace

ComplexDense matmul(const ComplexDense& a, const ComplexDense& b) {
  return kernels::parallel::matmul(a, b);
}

ComplexDense kron(const ComplexDense& a, const ComplexDense& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxDimension || cols > kMaxDimension) {
    throw Error(ErrorKind::SizeLimit, "kron: result " + std::to_string(rows) + "x" +
                                          std::to_string(cols) + " exceeds dimension cap " +
                                          std::to_string(kMaxDimension));
  }
  return kernels::parallel::kron(a, b);
}

ComplexDense kron_all(std::span<const ComplexDense> factors) {
  if (factors.empty()) throw Error(ErrorKind::Shape, "kron_all: no factors");
  ComplexDense out = factors.back();
  for (std::size_t r = factors.size() - 1; r-- > 0;) out = kron(factors[r], out);
  return out;
}

ComplexDense outer(const ComplexDense& a, const ComplexDense& b) {
  if (a.cols() != 1 || b.cols() != 1) throw Error(ErrorKind::Shape, "outer: expected columns");
  ComplexDense out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) out(i, j) = a(i, 0) * std::conj(b(j, 0));
  return out;
}

ComplexDense hermitian_part(const ComplexDense& a) {
  require_square(a, "hermitian_part");
  ComplexDense out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return out;
}

bool is_hermitian(const ComplexDense& a, double tolerance) {
  return a.is_square() && a.hermitian_defect() <= tolerance;
}

EigenResult hermitian_eigen(const ComplexDense& input, const JacobiOptions& options) {
  require_hermitian(input, "hermitian_eigen");
  ComplexDense a = hermitian_part(input);
  const std::size_t n = a.rows();
  ComplexDense v = ComplexDense::identity(n);
  const double threshold = options.off_diagonal_tolerance * std::max(1.0, a.frobenius_norm());

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > threshold) {
    if (sweep == options.max_sweeps) {
      std::ostringstream msg;
      msg << "hermitian_eigen: no convergence after " << sweep
          << " sweeps (off-diagonal norm " << off << ")";
      throw NumericError(off, msg.str());
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    ++sweep;
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenResult out;
  out.sweeps = sweep;
  out.eigenvalues.reserve(n);
  out.eigenvectors = ComplexDense(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues.push_back(a(order[k], order[k]).real());
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexDense& a) {
  return hermitian_eigen(a).eigenvalues;
}

double min_eigenvalue(const ComplexDense& a) { return hermitian_eigen(a).eigenvalues.front(); }

ComplexDense psd_sqrt(const ComplexDense& a) {
  const EigenResult eig = hermitian_eigen(a);
  const std::size_t n = a.rows();
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda < -tol::kPsd) {
      std::ostringstream msg;
      msg << "psd_sqrt: matrix has eigenvalue " << lambda << " below -" << tol::kPsd;
      throw NotPsdError(lambda, msg.str());
    }
    roots[k] = std::sqrt(std::max(0.0, lambda));
  }
  ComplexDense scaled = eig.eigenvectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) scaled(i, k) *= roots[k];
  return hermitian_part(matmul(scaled, eig.eigenvectors.adjoint()));
}

ComplexDense partial_transpose(const ComplexDense& rho, std::span<const std::size_t> dims,
                               std::span<const std::size_t> subset) {
  require_dims(rho, dims, "partial_transpose");
  const auto mask = subsystem_mask(dims, subset, "partial_transpose");
  auto flags = std::make_unique<bool[]>(mask.size());
  for (std::size_t r = 0; r < mask.size(); ++r) flags[r] = mask[r] != 0;
  return kernels::parallel::partial_transpose(rho, dims,
                                              std::span<const bool>(flags.get(), mask.size()));
}

ComplexDense partial_trace(const ComplexDense& rho, std::span<const std::size_t> dims,
                           std::span<const std::size_t> traced) {
  require_dims(rho, dims, "partial_trace");
  const auto mask = subsystem_mask(dims, traced, "partial_trace");
  const std::size_t n = rho.rows();
  std::size_t kept_dim = 1;
  for (std::size_t r = 0; r < dims.size(); ++r)
    if (!mask[r]) kept_dim *= dims[r];

  std::vector<std::size_t> kept(n), gone(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t y = x, ks = 1, gs = 1;
    for (std::size_t r = dims.size(); r-- > 0;) {
      const std::size_t digit = y % dims[r];
      y /= dims[r];
      if (mask[r]) {
        gone[x] += digit * gs;
        gs *= dims[r];
      } else {
        kept[x] += digit * ks;
        ks *= dims[r];
      }
    }
  }
  ComplexDense out(kept_dim, kept_dim);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (gone[x] == gone[y]) out(kept[x], kept[y]) += rho(x, y);
  return out;
}

double frobenius_distance(const ComplexDense& a, const ComplexDense& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::Shape, "frobenius_distance: shape mismatch");
  }
  double sum = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) sum += std::norm(da[k] - db[k]);
  return std::sqrt(sum);
}

}  // namespace sgws
