#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <sstream>
#include <string>

#include "sgws/cmatrix.hpp"
#include "sgws/errors.hpp"
#include "sgws/rng.hpp"
#include "sgws/sep.hpp"

namespace sgws::sep {

namespace {

std::size_t uniform_local_dim(std::span<const std::size_t> dims, const char* op) {
  if (dims.empty()) throw Error(ErrorKind::Shape, std::string(op) + ": no subsystems");
  for (std::size_t d : dims) {
    if (d != dims.front()) {
      throw Error(ErrorKind::Shape, std::string(op) + ": subsystems must share one dimension");
    }
  }
  return dims.front();
}

// Certify runs every split up to this many parties, single parties beyond.
constexpr std::size_t kAllSplitsMaxParties = 4;
// Numeric PPT thresholds in certify are skipped above this dimension.
constexpr std::size_t kNumericThresholdMaxDim = 256;

}  // namespace

const char* to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::SeparableCertified: return "separable-certified";
    case Verdict::EntangledCertified: return "entangled-certified";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<CsViolation> cauchy_schwarz_scan(const ComplexDense& rho,
                                             std::span<const std::size_t> dims) {
  const std::size_t d = uniform_local_dim(dims, "cauchy_schwarz_scan");
  std::size_t dim = 1;
  for (std::size_t r = 0; r < dims.size(); ++r) dim *= d;
  if (!rho.is_square() || rho.rows() != dim) {
    throw Error(ErrorKind::Shape, "cauchy_schwarz_scan: matrix is " + std::to_string(rho.rows()) +
                                      "x" + std::to_string(rho.cols()) + ", dims give " +
                                      std::to_string(dim));
  }
  if (!is_hermitian(rho)) {
    throw Error(ErrorKind::Contract, "cauchy_schwarz_scan: input is not Hermitian");
  }
  return kernels::parallel::cauchy_schwarz_scan(rho, d, dims.size(), tol::kCauchySchwarz);
}

double ppt_min_eig(const ComplexDense& rho, std::span<const std::size_t> dims,
                   std::span<const std::size_t> subset) {
  return min_eigenvalue(hermitian_part(partial_transpose(rho, dims, subset)));
}

PptThreshold ppt_threshold(const CoeffVector& coeffs, std::size_t N,
                           std::span<const std::size_t> subset) {
  total_dimension(coeffs.d, N);
  const std::vector<std::size_t> dims(N, coeffs.d);
  auto min_eig_at = [&](double v) {
    return ppt_min_eig(build_sgws(make_spec(coeffs, N, v)), dims, subset);
  };

  PptThreshold out;
  if (min_eig_at(1.0) >= -tol::kPsd) return out;
  out.crossed = true;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < tol::kBisectionIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (min_eig_at(mid) >= -tol::kPsd) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.v = lo;
  return out;
}

std::vector<std::vector<std::size_t>> bipartitions(std::size_t N) {
  std::vector<std::vector<std::size_t>> out;
  if (N < 2) return out;
  if (N > 20) throw Error(ErrorKind::SizeLimit, "bipartitions: too many parties");
  for (std::size_t mask = 1; mask < (std::size_t{1} << (N - 1)); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t r = 0; r + 1 < N; ++r)
      if ((mask >> r) & 1U) subset.push_back(r + 2);
    out.push_back(std::move(subset));
  }
  return out;
}

std::vector<std::vector<std::size_t>> certify_bipartitions(std::size_t N) {
  if (N <= kAllSplitsMaxParties) return bipartitions(N);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t r = 1; r <= N; ++r) out.push_back({r});
  return out;
}

CertReport certify(const SgwsSpec& spec, const CertifyOptions& options) {
  CertReport report;
  const std::size_t dim = total_dimension(spec.d, spec.N);
  report.threshold_formula = critical_v(spec.coeffs, spec.N);
  const ComplexDense target = build_sgws(spec);
  const auto splits = certify_bipartitions(spec.N);
  const std::vector<std::size_t> dims(spec.N, spec.d);
  const bool restriction2 = spec.coeffs.restriction2_ok || options.allow_restriction2_failure;

  if (!spec.coeffs.restriction2_ok) {
    std::ostringstream msg;
    msg << "the PSD restriction fails (min eigenvalue " << spec.coeffs.restriction2_min_eig << ")";
    report.notes.push_back(msg.str());
  }

  if (options.numeric_threshold && !splits.empty() && dim <= kNumericThresholdMaxDim) {
    std::vector<double> thresholds(splits.size());
    const auto count = static_cast<std::int64_t>(splits.size());
    bool failed = false;
#pragma omp parallel for schedule(dynamic, 1) if (count > 1) reduction(|| : failed)
    for (std::int64_t s = 0; s < count; ++s) {
      try {
        thresholds[s] = ppt_threshold(spec.coeffs, spec.N, splits[s]).v;
      } catch (const Error&) {
        failed = true;
      }
    }
    if (!failed) report.threshold_numeric = *std::min_element(thresholds.begin(), thresholds.end());
  }

  auto try_decomposition = [&](ProductDecomposition decomposition) {
    report.decomposition_terms = decomposition.terms.size();
    report.verification = verify_decomposition(decomposition, target);
    if (report.verification->pass) {
      report.verdict = Verdict::SeparableCertified;
    } else {
      report.notes.push_back("decomposition failed verification: " + report.verification->failure);
    }
  };

  if (spec.N == 1) {
    report.notes.push_back("single party: the state is its own one-term decomposition");
    try_decomposition({spec.d, 1, {{1.0, {target}}}});
    return report;
  }

  if (spec.v <= report.threshold_formula + tol::kCriticalSlack) {
    if (restriction2) {
      try_decomposition(decompose_sgws(spec, options.allow_restriction2_failure));
      return report;
    }
    report.notes.push_back("no constructive decomposition without the PSD restriction");
  }

  for (const auto& subset : splits) {
    PptResult result{subset, ppt_min_eig(target, dims, subset)};
    if (result.min_eigenvalue < -tol::kPsd &&
        (!report.ppt_witness || result.min_eigenvalue < report.ppt_witness->min_eigenvalue)) {
      report.ppt_witness = result;
    }
    report.ppt.push_back(std::move(result));
  }

  const auto violations = cauchy_schwarz_scan(target, dims);
  report.cs_violation_count = violations.size();
  for (const auto& v : violations) {
    if (!report.cs_witness || v.rhs - v.lhs > report.cs_witness->rhs - report.cs_witness->lhs) {
      report.cs_witness = v;
    }
  }

  if (report.ppt_witness || report.cs_witness) {
    report.verdict = Verdict::EntangledCertified;
  } else if (spec.v > report.threshold_formula) {
    report.notes.push_back("no entanglement witness found above the threshold formula");
  }
  return report;
}

ConjectureReport conjecture_scan(std::size_t d, std::size_t N, std::size_t samples,
                                 std::uint64_t seed) {
  const std::size_t dim = total_dimension(d, N);
  if (dim > 256) {
    throw Error(ErrorKind::SizeLimit, "conjecture_scan: d^N = " + std::to_string(dim) +
                                          " exceeds 256");
  }
  if (N < 2) throw Error(ErrorKind::Validation, "conjecture_scan: N must be at least 2");

  ConjectureReport report;
  report.d = d;
  report.N = N;
  report.samples = samples;
  report.seed = seed;

  SplitMix64 rng(seed);
  std::vector<CoeffVector> kept;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<cplx> alpha(d);
    double norm = 0.0;
    for (auto& a : alpha) {
      const auto [re, im] = rng.normal_pair();
      a = {re, im};
      norm += std::norm(a);
    }
    for (auto& a : alpha) a /= std::sqrt(norm);
    CoeffVector coeffs;
    try {
      coeffs = validate_coeffs(alpha, d);
    } catch (const Error&) {
      continue;
    }
    if (coeffs.restriction2_ok) continue;
    ConjectureRow row;
    row.sample = s;
    row.alpha = coeffs.alpha;
    row.restriction2_min_eig = coeffs.restriction2_min_eig;
    row.formula_v = critical_v(coeffs, N);
    report.rows.push_back(std::move(row));
    kept.push_back(std::move(coeffs));
  }

  const auto splits = bipartitions(N);
  const auto count = static_cast<std::int64_t>(kept.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) if (count > 1)
  for (std::int64_t k = 0; k < count; ++k) {
    try {
      ConjectureRow& row = report.rows[k];
      bool first = true;
      for (const auto& subset : splits) {
        const PptThreshold t = ppt_threshold(kept[k], N, subset);
        if (first || t.v < row.ppt_v) {
          row.ppt_v = t.v;
          row.crossed = t.crossed;
          row.subset = subset;
          first = false;
        }
      }
      row.difference = row.ppt_v - row.formula_v;
    } catch (...) {
#pragma omp critical(sgws_conjecture_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return report;
}

}  // namespace sgws::sep
