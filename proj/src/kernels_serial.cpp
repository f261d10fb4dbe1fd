// Reference kernels: straightforward loops, no threading. The parallel
// versions in kernels_parallel.cpp are checked against these.

#include <cmath>

#include "sgws/errors.hpp"
#include "sgws/kernels.hpp"

namespace sgws::kernels::serial {

ComplexDense matmul(const ComplexDense& a, const ComplexDense& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::Shape, "matmul: inner dimensions differ");
  ComplexDense out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexDense kron(const ComplexDense& a, const ComplexDense& b) {
  ComplexDense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

ComplexDense partial_transpose(const ComplexDense& rho, std::span<const std::size_t> dims,
                               std::span<const bool> transposed) {
  const std::size_t n = rho.rows();
  ComplexDense out(n, n);
  std::vector<std::size_t> digits_i(dims.size()), digits_j(dims.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t x = i, y = j;
      for (std::size_t r = dims.size(); r-- > 0;) {
        digits_i[r] = x % dims[r];
        digits_j[r] = y % dims[r];
        x /= dims[r];
        y /= dims[r];
      }
      std::size_t src_i = 0, src_j = 0;
      for (std::size_t r = 0; r < dims.size(); ++r) {
        const bool swap = transposed[r];
        src_i = src_i * dims[r] + (swap ? digits_j[r] : digits_i[r]);
        src_j = src_j * dims[r] + (swap ? digits_i[r] : digits_j[r]);
      }
      out(i, j) = rho(src_i, src_j);
    }
  }
  return out;
}

ComplexDense reconstruct(const PackedProducts& p) {
  const std::size_t d = p.local_dim;
  std::size_t dim = 1;
  for (std::size_t r = 0; r < p.parties; ++r) dim *= d;
  const std::size_t term_stride = p.parties * d * d;

  ComplexDense out(dim, dim);
  std::vector<std::size_t> row_digits(p.parties), col_digits(p.parties);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      std::size_t x = i, y = j;
      for (std::size_t r = p.parties; r-- > 0;) {
        row_digits[r] = x % d;
        col_digits[r] = y % d;
        x /= d;
        y /= d;
      }
      cplx sum = 0.0;
      for (std::size_t t = 0; t < p.weights.size(); ++t) {
        cplx prod = p.weights[t];
        for (std::size_t r = 0; r < p.parties; ++r) {
          prod *= p.factors[t * term_stride + (r * d + row_digits[r]) * d + col_digits[r]];
        }
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
  auto digit = [&](std::size_t x, std::size_t r) {
    for (std::size_t s = parties - 1; s > r; --s) x /= d;
    return x % d;
  };
  auto all_differ = [&](std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < parties; ++r)
      if (digit(a, r) == digit(b, r)) return false;
    return true;
  };

  std::vector<CsViolation> out;
  for (std::size_t mu = 0; mu < dim; ++mu) {
    for (std::size_t nu = 0; nu < dim; ++nu) {
      if (!all_differ(mu, nu)) continue;
      const double rhs = std::abs(rho(mu, nu));
      if (rhs <= tolerance) continue;
      for (std::size_t mask = 0; mask < (std::size_t{1} << parties); ++mask) {
        // digit r of n comes from nu when bit r of mask is set, else from mu
        std::size_t n = 0, m = 0;
        for (std::size_t r = 0; r < parties; ++r) {
          const bool from_nu = (mask >> r) & 1U;
          n = n * d + (from_nu ? digit(nu, r) : digit(mu, r));
          m = m * d + (from_nu ? digit(mu, r) : digit(nu, r));
        }
        if (n > m) continue;
        const double lhs =
            std::sqrt(std::max(0.0, rho(n, n).real()) * std::max(0.0, rho(m, m).real()));
        if (lhs < rhs - tolerance) out.push_back({n, m, mu, nu, lhs, rhs});
      }
    }
  }
  return out;
}

}  // namespace sgws::kernels::serial
