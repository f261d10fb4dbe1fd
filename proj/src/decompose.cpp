#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include "sgws/cmatrix.hpp"
#include "sgws/errors.hpp"
#include "sgws/sep.hpp"

namespace sgws::sep {

namespace {

constexpr cplx kUnitPowers[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void require_restriction2(const CoeffVector& coeffs, bool allowed, const char* op) {
  if (!coeffs.restriction2_ok && !allowed) {
    std::ostringstream msg;
    msg << op << ": the PSD restriction fails (min eigenvalue " << coeffs.restriction2_min_eig
        << "); pass the override flag to proceed anyway";
    throw Error(ErrorKind::Refused, msg.str());
  }
}

std::size_t pow_checked(std::size_t base, std::size_t exp, std::size_t cap, const char* what) {
  std::size_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (out > cap / base) {
      throw Error(ErrorKind::SizeLimit, std::string(what) + " exceeds cap " + std::to_string(cap));
    }
    out *= base;
  }
  return out;
}

// Index in {0..3} of a phase that is exactly one of 1, i, -1, -i.
unsigned phase_index(cplx z) {
  for (unsigned k = 0; k < 4; ++k)
    if (z == kUnitPowers[k]) return k;
  return 4;
}

}  // namespace

std::vector<PhaseTuple> phase_vectors(std::size_t d) {
  if (d > kMaxPhaseDim) {
    throw Error(ErrorKind::SizeLimit, "phase_vectors: d = " + std::to_string(d) +
                                          " exceeds " + std::to_string(kMaxPhaseDim));
  }
  if (d == 0) throw Error(ErrorKind::Validation, "phase_vectors: d must be positive");
  const std::size_t count = std::size_t{1} << (2 * d);
  std::vector<PhaseTuple> out(count, PhaseTuple(d));
  for (std::size_t k = 0; k < count; ++k)
    for (std::size_t r = 0; r < d; ++r) out[k][r] = kUnitPowers[(k >> (2 * r)) & 3U];
  return out;
}

ComplexDense phase_projector(std::span<const cplx> z) {
  const std::size_t d = z.size();
  const double inv = 1.0 / static_cast<double>(d);
  ComplexDense out(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s)
      out(r, s) = r == s ? cplx(inv) : z[r] * std::conj(z[s]) * inv;
  return out;
}

ComplexDense rho1_with_phases(const CoeffVector& coeffs, std::span<const cplx> phases,
                              bool allow_restriction2_failure) {
  require_restriction2(coeffs, allow_restriction2_failure, "rho1_with_phases");
  const std::size_t d = coeffs.d;
  if (phases.size() != d) {
    throw Error(ErrorKind::Shape, "rho1_with_phases: expected " + std::to_string(d) + " phases");
  }
  const double inv = 1.0 / static_cast<double>(d);
  ComplexDense out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) {
        out(i, j) = inv;
      } else {
        const cplx left = coeffs.alpha[i] * phases[i];
        const cplx right = std::conj(coeffs.alpha[j] * phases[j]);
        out(i, j) = coeffs.T * left * right * inv;
      }
    }
  }
  return out;
}

ProductDecomposition decompose_rho_N(const CoeffVector& coeffs, std::size_t N,
                                     bool allow_restriction2_failure) {
  require_restriction2(coeffs, allow_restriction2_failure, "decompose_rho_N");
  if (N < 1) throw Error(ErrorKind::Validation, "decompose_rho_N: N must be at least 1");
  const std::size_t d = coeffs.d;
  const auto phases = phase_vectors(d);
  const std::size_t per_step = phases.size();
  const std::size_t count = pow_checked(per_step, N - 1, kMaxDecompositionTerms,
                                        "decompose_rho_N: term count (4^d)^(N-1)");

  // The appended factor carries conj(z): averaging z_i conj(z_j) conj(z_r) z_s
  // over the phase set gives delta(i,r) delta(j,s), which is what turns
  // |i><j| x |r><s| into |ii><jj|. With z itself the average pairs i with s.
  std::vector<ComplexDense> appended;
  appended.reserve(per_step);
  for (const auto& z : phases) {
    PhaseTuple conjugated(z.size());
    std::transform(z.begin(), z.end(), conjugated.begin(), [](cplx x) { return std::conj(x); });
    appended.push_back(phase_projector(conjugated));
  }

  // The first factor only depends on the accumulated phase product xi, whose
  // entries stay in {1, i, -1, -i}; there are at most 4^d distinct ones.
  std::vector<ComplexDense> first_by_xi(per_step);
  for (std::size_t key = 0; key < per_step; ++key) {
    first_by_xi[key] = rho1_with_phases(coeffs, phases[key], true);
  }

  ProductDecomposition out;
  out.d = d;
  out.N = N;
  out.terms.resize(count);
  const double weight = std::ldexp(1.0, -static_cast<int>(2 * d * (N - 1)));

  // Term index = sum_r k_r (4^d)^{N-r}: the factor appended first varies
  // slowest, matching the order in which the induction spawns children.
  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static) if (count >= 256)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::vector<std::size_t> ks(N - 1);
    std::size_t rest = static_cast<std::size_t>(idx);
    for (std::size_t r = N - 1; r-- > 0;) {
      ks[r] = rest % per_step;
      rest /= per_step;
    }
    std::vector<unsigned> xi(d, 0);  // exponents of i
    for (std::size_t k : ks)
      for (std::size_t r = 0; r < d; ++r) xi[r] += phase_index(phases[k][r]);
    std::size_t key = 0;
    for (std::size_t r = d; r-- > 0;) key = key * 4 + (xi[r] & 3U);

    ProductTerm& term = out.terms[static_cast<std::size_t>(idx)];
    term.weight = weight;
    term.factors.reserve(N);
    term.factors.push_back(first_by_xi[key]);
    for (std::size_t k : ks) term.factors.push_back(appended[k]);
  }
  return out;
}

ProductDecomposition decompose_sgws(const SgwsSpec& spec, bool allow_restriction2_failure) {
  const std::size_t d = spec.d;
  const std::size_t N = spec.N;
  const double dim = static_cast<double>(total_dimension(d, N));
  const double vc = critical_v(spec.coeffs, N);
  if (spec.v > vc + tol::kCriticalSlack) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "decompose_sgws: v = " << spec.v << " exceeds the critical value " << vc
        << "; the state is entangled and has no separable decomposition";
    throw Error(ErrorKind::Refused, msg.str());
  }
  const double ratio = spec.v >= vc - tol::kCriticalSlack ? 1.0 : spec.v / vc;

  ProductDecomposition out;
  out.d = d;
  out.N = N;

  if (ratio > 0.0) {
    require_restriction2(spec.coeffs, allow_restriction2_failure, "decompose_sgws");
    for (std::size_t i = 0; i < d; ++i) {
      const double mag2 = std::norm(spec.coeffs.alpha[i]);
      if (std::sqrt(mag2) <= tol::kNonzeroCoeff) continue;
      ComplexDense projector(d, d);
      projector(i, i) = 1.0;
      out.terms.push_back({ratio * vc * mag2, std::vector<ComplexDense>(N, projector)});
    }
    ProductDecomposition rest = decompose_rho_N(spec.coeffs, N, allow_restriction2_failure);
    const double scale = ratio * dim / (dim + spec.coeffs.T);
    out.terms.reserve(out.terms.size() + rest.terms.size() + 1);
    for (auto& term : rest.terms) {
      term.weight *= scale;
      out.terms.push_back(std::move(term));
    }
  }

  if (1.0 - ratio > 0.0) {
    ComplexDense mixed = ComplexDense::identity(d);
    mixed *= 1.0 / static_cast<double>(d);
    out.terms.push_back({1.0 - ratio, std::vector<ComplexDense>(N, mixed)});
  }
  return out;
}

namespace {

bool has_expected_shape(const ProductDecomposition& decomposition, std::string& why) {
  if (decomposition.d == 0 || decomposition.N == 0) {
    why = "decomposition has zero local dimension or party count";
    return false;
  }
  for (std::size_t t = 0; t < decomposition.terms.size(); ++t) {
    const auto& factors = decomposition.terms[t].factors;
    if (factors.size() != decomposition.N) {
      why = "term " + std::to_string(t) + " has " + std::to_string(factors.size()) +
            " factors, expected " + std::to_string(decomposition.N);
      return false;
    }
    for (const auto& f : factors) {
      if (f.rows() != decomposition.d || f.cols() != decomposition.d) {
        why = "term " + std::to_string(t) + " has a factor that is not " +
              std::to_string(decomposition.d) + "x" + std::to_string(decomposition.d);
        return false;
      }
    }
  }
  return true;
}

}  // namespace

ComplexDense reconstruct(const ProductDecomposition& decomposition) {
  std::string why;
  if (!has_expected_shape(decomposition, why)) throw Error(ErrorKind::Shape, "reconstruct: " + why);
  const std::size_t d = decomposition.d;
  const std::size_t N = decomposition.N;
  total_dimension(d, N);
  std::vector<double> weights;
  std::vector<cplx> packed;
  weights.reserve(decomposition.terms.size());
  packed.reserve(decomposition.terms.size() * N * d * d);
  for (const auto& term : decomposition.terms) {
    weights.push_back(term.weight);
    for (const auto& f : term.factors) packed.insert(packed.end(), f.data().begin(), f.data().end());
  }
  if (weights.empty()) {
    const std::size_t dim = total_dimension(d, N);
    return ComplexDense(dim, dim);
  }
  return kernels::parallel::reconstruct({d, N, weights, packed});
}

Verification verify_decomposition(const ProductDecomposition& decomposition,
                                  const ComplexDense& target) {
  Verification out;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto fail = [&](std::string why) {
    out.pass = false;
    out.failure = std::move(why);
    return out;
  };

  std::string why;
  if (!has_expected_shape(decomposition, why)) {
    out.reconstruction_error = kInf;
    return fail(why);
  }

  double weight_sum = 0.0;
  for (const auto& term : decomposition.terms) {
    weight_sum += term.weight;
    if (!(term.weight > 0.0 && term.weight <= 1.0)) out.weights_in_range = false;
  }
  out.weight_sum_error = std::abs(weight_sum - 1.0);

  // Per-factor checks, flattened so the loop can be shared between threads.
  std::vector<const ComplexDense*> factors;
  for (const auto& term : decomposition.terms)
    for (const auto& f : term.factors) factors.push_back(&f);
  std::vector<double> min_eigs(factors.size(), kInf);
  std::vector<double> trace_errs(factors.size(), 0.0);
  std::vector<double> defects(factors.size(), 0.0);
  const auto total = static_cast<std::int64_t>(factors.size());
#pragma omp parallel for schedule(dynamic, 64) if (total >= 1024)
  for (std::int64_t k = 0; k < total; ++k) {
    const ComplexDense& f = *factors[k];
    defects[k] = f.hermitian_defect();
    trace_errs[k] = std::abs(f.trace() - cplx(1.0));
    if (defects[k] <= tol::kHermitian) {
      try {
        min_eigs[k] = min_eigenvalue(f);
      } catch (const Error&) {
        min_eigs[k] = -kInf;
      }
    } else {
      min_eigs[k] = -kInf;
    }
  }
  out.min_factor_eig = factors.empty() ? 0.0 : kInf;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    out.min_factor_eig = std::min(out.min_factor_eig, min_eigs[k]);
    out.max_factor_trace_error = std::max(out.max_factor_trace_error, trace_errs[k]);
    out.max_factor_hermitian_defect = std::max(out.max_factor_hermitian_defect, defects[k]);
  }

  const std::size_t dim = [&] {
    std::size_t n = 1;
    for (std::size_t r = 0; r < decomposition.N; ++r) {
      n *= decomposition.d;
      if (n > kMaxDimension) return std::size_t{0};
    }
    return n;
  }();
  if (dim == 0 || target.rows() != dim || target.cols() != dim) {
    out.reconstruction_error = kInf;
    return fail("target is " + std::to_string(target.rows()) + "x" +
                std::to_string(target.cols()) + " but the decomposition acts on dimension " +
                (dim == 0 ? std::string("> cap") : std::to_string(dim)));
  }
  out.reconstruction_error = frobenius_distance(reconstruct(decomposition), target);

  std::ostringstream msg;
  msg.precision(3);
  if (!(out.reconstruction_error <= tol::kReconstruction))
    msg << "reconstruction error " << out.reconstruction_error << " > " << tol::kReconstruction << "; ";
  if (!(out.min_factor_eig >= -tol::kPsd))
    msg << "factor eigenvalue " << out.min_factor_eig << " < -" << tol::kPsd << "; ";
  if (!(out.weight_sum_error <= tol::kWeightSum))
    msg << "weight sum off by " << out.weight_sum_error << "; ";
  if (!(out.max_factor_trace_error <= tol::kTrace))
    msg << "factor trace off by " << out.max_factor_trace_error << "; ";
  if (!(out.max_factor_hermitian_defect <= tol::kHermitian))
    msg << "factor not Hermitian (" << out.max_factor_hermitian_defect << "); ";
  if (!out.weights_in_range) msg << "weight outside (0, 1]; ";
  out.failure = msg.str();
  if (!out.failure.empty()) out.failure.resize(out.failure.size() - 2);
  out.pass = out.failure.empty();
  return out;
}

}  // namespace sgws::sep
