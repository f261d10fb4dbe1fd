// OpenMP kernels. Work is split over output rows only; per-entry arithmetic
// follows the serial reference operation for operation, so results match it
// bit for bit regardless of thread count.

#include <cmath>
#include <cstdint>

#include "sgws/errors.hpp"
#include "sgws/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sgws::kernels {

bool openmp_enabled() noexcept {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

namespace {

// Below this many output entries the fork/join overhead dominates.
constexpr std::size_t kParallelThreshold = 4096;

std::vector<std::size_t> flat_digits(std::size_t dim, std::size_t d, std::size_t parties) {
  std::vector<std::size_t> digits(dim * parties);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t y = x;
    for (std::size_t r = parties; r-- > 0;) {
      digits[x * parties + r] = y % d;
      y /= d;
    }
  }
  return digits;
}

}  // namespace

namespace parallel {

ComplexDense matmul(const ComplexDense& a, const ComplexDense& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::Shape, "matmul: inner dimensions differ");
  ComplexDense out(a.rows(), b.cols());
  const auto rows = static_cast<std::int64_t>(a.rows());
  const std::size_t inner = a.cols();
  const std::size_t cols = b.cols();
  const cplx* pa = a.data().data();
  const cplx* pb = b.data().data();
  cplx* po = out.data().data();
#pragma omp parallel for schedule(static) if (out.size() * inner >= kParallelThreshold * 16)
  for (std::int64_t i = 0; i < rows; ++i) {
    cplx* orow = po + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const cplx aik = pa[i * inner + k];
      const cplx* brow = pb + k * cols;
      for (std::size_t j = 0; j < cols; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

ComplexDense kron(const ComplexDense& a, const ComplexDense& b) {
  ComplexDense out(a.rows() * b.rows(), a.cols() * b.cols());
  const auto out_rows = static_cast<std::int64_t>(out.rows());
  const std::size_t br = b.rows(), bc = b.cols();
#pragma omp parallel for schedule(static) if (out.size() >= kParallelThreshold)
  for (std::int64_t row = 0; row < out_rows; ++row) {
    const std::size_t i = static_cast<std::size_t>(row) / br;
    const std::size_t k = static_cast<std::size_t>(row) % br;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t l = 0; l < bc; ++l) out(row, j * bc + l) = aij * b(k, l);
    }
  }
  return out;
}

ComplexDense partial_transpose(const ComplexDense& rho, std::span<const std::size_t> dims,
                               std::span<const bool> transposed) {
  const std::size_t n = rho.rows();
  // part[x]: contribution of the transposed subsystems to flat index x
  std::vector<std::size_t> part(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t y = x, stride = 1;
    for (std::size_t r = dims.size(); r-- > 0;) {
      if (transposed[r]) part[x] += (y % dims[r]) * stride;
      y /= dims[r];
      stride *= dims[r];
    }
  }
  ComplexDense out(n, n);
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (out.size() >= kParallelThreshold)
  for (std::int64_t i = 0; i < rows; ++i) {
    const std::size_t pi = part[i];
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = rho(i - pi + part[j], j - part[j] + pi);
    }
  }
  return out;
}

ComplexDense reconstruct(const PackedProducts& p) {
  const std::size_t d = p.local_dim;
  const std::size_t parties = p.parties;
  std::size_t dim = 1;
  for (std::size_t r = 0; r < parties; ++r) dim *= d;
  const std::size_t term_stride = parties * d * d;
  const std::size_t terms = p.weights.size();
  const auto digits = flat_digits(dim, d, parties);

  ComplexDense out(dim, dim);
  const auto rows = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(dynamic, 1) if (dim * dim * terms >= kParallelThreshold)
  for (std::int64_t i = 0; i < rows; ++i) {
    std::vector<std::size_t> offsets(parties);
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t r = 0; r < parties; ++r) {
        offsets[r] = (r * d + digits[i * parties + r]) * d + digits[j * parties + r];
      }
      cplx sum = 0.0;
      const cplx* term = p.factors.data();
      for (std::size_t t = 0; t < terms; ++t, term += term_stride) {
        cplx prod = p.weights[t];
        for (std::size_t r = 0; r < parties; ++r) prod *= term[offsets[r]];
        sum += prod;
      }
      out(i, j) = sum;
    }
  }
  return out;
}

std::vector<CsViolation> cauchy_schwarz_scan(const ComplexDense& rho, std::size_t d,
                                             std::size_t parties, double tolerance) {
  const std::size_t dim = rho.rows();
  const auto digits = flat_digits(dim, d, parties);
  std::vector<std::size_t> stride(parties);
  for (std::size_t r = parties, s = 1; r-- > 0; s *= d) stride[r] = s;

  std::vector<std::vector<CsViolation>> per_mu(dim);
  const auto rows = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(dynamic, 4) if (dim >= 64)
  for (std::int64_t mu_signed = 0; mu_signed < rows; ++mu_signed) {
    const auto mu = static_cast<std::size_t>(mu_signed);
    const std::size_t* dmu = &digits[mu * parties];
    auto& found = per_mu[mu];
    for (std::size_t nu = 0; nu < dim; ++nu) {
      const std::size_t* dnu = &digits[nu * parties];
      bool differ = true;
      for (std::size_t r = 0; r < parties && differ; ++r) differ = dmu[r] != dnu[r];
      if (!differ) continue;
      const double rhs = std::abs(rho(mu, nu));
      if (rhs <= tolerance) continue;
      for (std::size_t mask = 0; mask < (std::size_t{1} << parties); ++mask) {
        std::size_t n = mu, m = nu;
        for (std::size_t r = 0; r < parties; ++r) {
          if ((mask >> r) & 1U) {
            n = n - dmu[r] * stride[r] + dnu[r] * stride[r];
            m = m - dnu[r] * stride[r] + dmu[r] * stride[r];
          }
        }
        if (n > m) continue;
        const double lhs =
            std::sqrt(std::max(0.0, rho(n, n).real()) * std::max(0.0, rho(m, m).real()));
        if (lhs < rhs - tolerance) found.push_back({n, m, mu, nu, lhs, rhs});
      }
    }
  }

  std::vector<CsViolation> out;
  for (auto& chunk : per_mu) out.insert(out.end(), chunk.begin(), chunk.end());
  return out;
}

}  // namespace parallel
}  // namespace sgws::kernels
