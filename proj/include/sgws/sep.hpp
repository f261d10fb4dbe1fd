#pragma once

// Separability certification for SGWS instances: necessary conditions
// (partial transpose, Cauchy-Schwarz on matrix elements) and the inductive
// phase-averaging construction of an explicit fully separable decomposition.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgws/complex_dense.hpp"
#include "sgws/kernels.hpp"
#include "sgws/sgws.hpp"
#include "sgws/tolerances.hpp"

namespace sgws::sep {

inline constexpr std::size_t kMaxDecompositionTerms = std::size_t{1} << 20;
inline constexpr std::size_t kMaxPhaseDim = 6;

/// One N-fold product state p * (rho_1 x ... x rho_N).
struct ProductTerm {
  double weight = 0.0;
  std::vector<ComplexDense> factors;
};

struct ProductDecomposition {
  std::size_t d = 0;
  std::size_t N = 0;
  std::vector<ProductTerm> terms;
};

using PhaseTuple = std::vector<cplx>;

/// All 4^d tuples with entries in {1, i, -1, -i}. Tuple k has
/// z_r = i^{(k / 4^r) mod 4}.
std::vector<PhaseTuple> phase_vectors(std::size_t d);

/// |z><z| / d. Each induction step appends phase_projector(conj(z)).
ComplexDense phase_projector(std::span<const cplx> z);

/// (1/d)(I + T sum_{i != j} alpha_i xi_i conj(alpha_j xi_j) |i><j|).
/// Refuses when the PSD restriction fails unless allow_restriction2_failure.
ComplexDense rho1_with_phases(const CoeffVector& coeffs, std::span<const cplx> phases,
                              bool allow_restriction2_failure = false);

/// Fully expanded separable decomposition of
/// (1/d^N)(I + T sum_{i != j} alpha_i conj(alpha_j) |i..i><j..j|).
/// Produces (4^d)^{N-1} terms, each of weight 4^{-d(N-1)}.
ProductDecomposition decompose_rho_N(const CoeffVector& coeffs, std::size_t N,
                                     bool allow_restriction2_failure = false);

/// Separable decomposition of build_sgws(spec) for v <= critical_v.
ProductDecomposition decompose_sgws(const SgwsSpec& spec,
                                    bool allow_restriction2_failure = false);

/// Sum of weight * (kron of factors), evaluated with the parallel kernel.
ComplexDense reconstruct(const ProductDecomposition& decomposition);

struct Verification {
  double reconstruction_error = 0.0;
  double min_factor_eig = 0.0;
  double weight_sum_error = 0.0;
  double max_factor_trace_error = 0.0;
  double max_factor_hermitian_defect = 0.0;
  bool weights_in_range = true;
  bool pass = false;
  std::string failure;  // empty when pass
};

/// Never throws; shape problems are reported as a failed record.
Verification verify_decomposition(const ProductDecomposition& decomposition,
                                  const ComplexDense& target);

using CsViolation = kernels::CsViolation;

/// Every (n, m, mu, nu) with n < m differing in all digits for which
/// sqrt(rho_nn rho_mm) < |rho_mu,nu| - tol::kCauchySchwarz. An empty result is
/// only consistent with separability, it does not prove it.
std::vector<CsViolation> cauchy_schwarz_scan(const ComplexDense& rho,
                                             std::span<const std::size_t> dims);

double ppt_min_eig(const ComplexDense& rho, std::span<const std::size_t> dims,
                   std::span<const std::size_t> subset);

struct PptThreshold {
  double v = 1.0;
  bool crossed = false;  // false: PT stays PSD on all of [0, 1]
};

/// Bisection for the largest v with ppt_min_eig(build_sgws(v)) >= -tol::kPsd.
PptThreshold ppt_threshold(const CoeffVector& coeffs, std::size_t N,
                           std::span<const std::size_t> subset);

/// Nontrivial bipartitions of N parties, one representative per split
/// (the side not containing subsystem 1), ordered by bitmask.
std::vector<std::vector<std::size_t>> bipartitions(std::size_t N);

/// Splits used by certify: all bipartitions for N <= 4, single parties above.
std::vector<std::vector<std::size_t>> certify_bipartitions(std::size_t N);

enum class Verdict { SeparableCertified, EntangledCertified, Inconclusive };

const char* to_string(Verdict verdict) noexcept;

struct PptResult {
  std::vector<std::size_t> subset;
  double min_eigenvalue = 0.0;
};

struct ToleranceRecord {
  double hermitian = tol::kHermitian;
  double psd = tol::kPsd;
  double reconstruction = tol::kReconstruction;
  double weight_sum = tol::kWeightSum;
  double cauchy_schwarz = tol::kCauchySchwarz;
  double critical_slack = tol::kCriticalSlack;
  double jacobi_off_diagonal = tol::kJacobiOffDiagonal;
  int bisection_iterations = tol::kBisectionIterations;
};

struct CertReport {
  Verdict verdict = Verdict::Inconclusive;
  double threshold_formula = 0.0;
  std::optional<double> threshold_numeric;
  std::vector<PptResult> ppt;              // every split evaluated
  std::optional<PptResult> ppt_witness;    // most negative, when < -tol::kPsd
  std::optional<CsViolation> cs_witness;   // largest rhs - lhs gap
  std::size_t cs_violation_count = 0;
  std::optional<std::size_t> decomposition_terms;
  std::optional<Verification> verification;
  ToleranceRecord tolerances;
  std::vector<std::string> notes;
};

struct CertifyOptions {
  bool allow_restriction2_failure = false;
  bool numeric_threshold = true;
};

CertReport certify(const SgwsSpec& spec, const CertifyOptions& options = {});

struct ConjectureRow {
  std::size_t sample = 0;
  std::vector<cplx> alpha;
  double restriction2_min_eig = 0.0;
  double formula_v = 0.0;
  double ppt_v = 0.0;
  std::vector<std::size_t> subset;  // split attaining ppt_v
  bool crossed = false;
  double difference = 0.0;  // ppt_v - formula_v
};

struct ConjectureReport {
  std::size_t d = 0;
  std::size_t N = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<ConjectureRow> rows;
};

/// Samples random alpha (normalized complex Gaussians from SplitMix64), keeps
/// those violating the PSD restriction and compares the threshold formula with
/// the PPT threshold. Deterministic in seed.
ConjectureReport conjecture_scan(std::size_t d, std::size_t N, std::size_t samples,
                                 std::uint64_t seed);

}  // namespace sgws::sep
