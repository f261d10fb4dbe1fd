#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <array>
#include <memory>

#include "sgws/kernels.hpp"
#include "sgws/sep.hpp"
#include "sgws/sgws.hpp"
#include "support.hpp"

using namespace sgws;
using testing::bit_identical;

namespace {

struct ThreadScope {
  explicit ThreadScope(int n) : previous(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadScope() { omp_set_num_threads(previous); }
  int previous;
};

bool same_violations(const std::vector<kernels::CsViolation>& a,
                     const std::vector<kernels::CsViolation>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].n != b[k].n || a[k].m != b[k].m || a[k].mu != b[k].mu || a[k].nu != b[k].nu ||
        a[k].lhs != b[k].lhs || a[k].rhs != b[k].rhs) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("openmp is compiled in") { CHECK(kernels::openmp_enabled()); }

TEST_CASE("matmul and kron agree bit for bit") {
  ThreadScope threads(4);
  SplitMix64 rng(1);
  for (std::size_t n : {3, 40, 96}) {
    const auto a = testing::random_matrix(rng, n, n + 1);
    const auto b = testing::random_matrix(rng, n + 1, n);
    CHECK(bit_identical(kernels::serial::matmul(a, b), kernels::parallel::matmul(a, b)));
    const auto c = testing::random_matrix(rng, 4, 5);
    CHECK(bit_identical(kernels::serial::kron(a, c), kernels::parallel::kron(a, c)));
  }
}

TEST_CASE("partial_transpose agrees bit for bit") {
  ThreadScope threads(4);
  SplitMix64 rng(2);
  const std::array<std::size_t, 3> dims{4, 3, 6};
  const auto rho = testing::random_hermitian(rng, 72);
  for (std::size_t mask = 1; mask < 7; ++mask) {
    const auto flags = std::make_unique<bool[]>(3);
    for (std::size_t r = 0; r < 3; ++r) flags[r] = (mask >> r) & 1U;
    const std::span<const bool> transposed(flags.get(), 3);
    CHECK(bit_identical(kernels::serial::partial_transpose(rho, dims, transposed),
                        kernels::parallel::partial_transpose(rho, dims, transposed)));
  }
}

TEST_CASE("reconstruct agrees bit for bit") {
  ThreadScope threads(4);
  const auto coeffs = family_coeffs(3, 1.0);
  const auto decomposition = sep::decompose_sgws(make_spec(coeffs, 3, 0.05));
  std::vector<double> weights;
  std::vector<cplx> factors;
  for (const auto& term : decomposition.terms) {
    weights.push_back(term.weight);
    for (const auto& f : term.factors) factors.insert(factors.end(), f.data().begin(), f.data().end());
  }
  const kernels::PackedProducts packed{3, 3, weights, factors};
  CHECK(bit_identical(kernels::serial::reconstruct(packed), kernels::parallel::reconstruct(packed)));
}

TEST_CASE("cauchy_schwarz_scan agrees exactly, including order") {
  ThreadScope threads(4);
  for (const auto& [d, N, v] : std::vector<std::tuple<std::size_t, std::size_t, double>>{
           {2, 2, 0.5}, {3, 2, 0.3}, {2, 5, 0.9}, {4, 3, 0.6}}) {
    const auto w = build_sgws(make_spec(family_coeffs(d, 0.4), N, v));
    const auto serial = kernels::serial::cauchy_schwarz_scan(w, d, N, 1e-12);
    const auto parallel = kernels::parallel::cauchy_schwarz_scan(w, d, N, 1e-12);
    CHECK(!serial.empty());
    CHECK(same_violations(serial, parallel));
  }
}
