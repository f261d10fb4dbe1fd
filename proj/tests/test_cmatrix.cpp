#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "sgws/cmatrix.hpp"
#include "sgws/errors.hpp"
#include "support.hpp"

using namespace sgws;
using testing::max_abs_diff;
using testing::oracle_eigenvalues;

namespace {

const std::array<std::size_t, 2> kQubits{2, 2};
const std::array<std::size_t, 1> kSecond{2};

ComplexDense bell_projector() {
  const double s = 1.0 / std::sqrt(2.0);
  const std::array<cplx, 4> psi{s, 0.0, 0.0, s};
  const ComplexDense col = ComplexDense::column(psi);
  return outer(col, col);
}

double reconstruction_error(const ComplexDense& a, const EigenResult& eig) {
  std::vector<double> values = eig.eigenvalues;
  const ComplexDense& v = eig.eigenvectors;
  ComplexDense lambda = ComplexDense::diagonal(values);
  return frobenius_distance(a, v * lambda * v.adjoint());
}

double orthonormality_error(const ComplexDense& v) {
  return frobenius_distance(v.adjoint() * v, ComplexDense::identity(v.cols()));
}

}  // namespace

TEST_CASE("kron examples") {
  CHECK(kron(ComplexDense::identity(2), ComplexDense::identity(2)) == ComplexDense::identity(4));
  CHECK(kron(ComplexDense::diagonal({1, 0}), ComplexDense::diagonal({0, 1})) ==
        ComplexDense::diagonal({0, 1, 0, 0}));

  const ComplexDense x{{0, 1}, {1, 0}};
  const ComplexDense expected{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  CHECK(kron(ComplexDense::diagonal({1, 0}), x) == expected);
}

TEST_CASE("kron index layout and shape") {
  const ComplexDense a{{1, 2}, {3, 4}, {5, 6}};
  const ComplexDense b{{cplx(0, 1), 7}};
  const ComplexDense k = kron(a, b);
  REQUIRE(k.rows() == 3);
  REQUIRE(k.cols() == 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t l = 0; l < 2; ++l) CHECK(k(i, j * 2 + l) == a(i, j) * b(0, l));
}

TEST_CASE("kron is associative") {
  // Gaussian-integer entries: every product is exact, so equality is bitwise.
  const ComplexDense a{{cplx(1, 2), 3, cplx(0, -1)}, {4, cplx(-2, 1), 5}};
  const ComplexDense b{{cplx(2, -3), 1}, {0, cplx(1, 1)}, {-7, 2}};
  const ComplexDense c{{cplx(0, 1), 6}, {cplx(-1, -1), 3}};
  CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));

  SplitMix64 rng(11);
  const auto x = testing::random_matrix(rng, 2, 3);
  const auto y = testing::random_matrix(rng, 3, 2);
  const auto z = testing::random_matrix(rng, 2, 2);
  const auto left = kron(kron(x, y), z);
  CHECK(frobenius_distance(left, kron(x, kron(y, z))) <= 1e-15 * left.frobenius_norm());
}

TEST_CASE("kron refuses results above the dimension cap") {
  const auto big = ComplexDense::identity(64);
  CHECK_THROWS_AS(kron(big, ComplexDense::identity(32)), Error);
  try {
    kron(big, ComplexDense::identity(32));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeLimit);
  }
  CHECK(kron(big, ComplexDense::identity(16)).rows() == 1024);
}

TEST_CASE("hermitian_eigen examples") {
  auto eig = hermitian_eigen(ComplexDense::identity(3));
  CHECK(max_abs_diff(eig.eigenvalues, {1, 1, 1}) == 0.0);

  eig = hermitian_eigen(ComplexDense{{0, 1}, {1, 0}});
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

  // d = 3 coherence matrix at cos(theta) = 0: (1/3)(I + 2 * (1/2)(|1><2| + |2><1|))
  const double third = 1.0 / 3.0;
  const ComplexDense rho{{third, 0, 0}, {0, third, third}, {0, third, third}};
  CHECK(max_abs_diff(hermitian_eigenvalues(rho), {0.0, third, 2 * third}) <= 1e-14);
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
  const ComplexDense a{{0, 1}, {0, 0}};
  try {
    hermitian_eigen(a);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Contract);
  }
  CHECK_THROWS_AS(hermitian_eigen(ComplexDense(2, 3)), Error);
}

TEST_CASE("hermitian_eigen reports non-convergence") {
  SplitMix64 rng(5);
  const auto a = testing::random_hermitian(rng, 8);
  try {
    hermitian_eigen(a, JacobiOptions{1e-13, 1});
    FAIL("expected a numeric error");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::Numeric);
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("random Hermitian matrices: reconstruction, orthonormality, spectrum") {
  SplitMix64 rng(2024);
  for (std::size_t n : {1, 2, 3, 5, 8, 16, 33, 64}) {
    CAPTURE(n);
    const auto a = testing::random_hermitian(rng, n);
    const auto eig = hermitian_eigen(a);
    const double scale = std::max(1.0, a.frobenius_norm());
    CHECK(reconstruction_error(a, eig) <= 1e-10 * scale);
    CHECK(orthonormality_error(eig.eigenvectors) <= 1e-10);
    CHECK(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
    CHECK(max_abs_diff(eig.eigenvalues, oracle_eigenvalues(a)) <= 1e-10 * scale);
    for (std::size_t k = 0; k < n; ++k) {
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += std::norm(eig.eigenvectors(i, k));
      CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("degenerate spectra") {
  SplitMix64 rng(9);
  const auto u = testing::random_unitary(rng, 6);
  const ComplexDense a = u * ComplexDense::diagonal({2, 2, 2, -1, -1, 0}) * u.adjoint();
  const auto eig = hermitian_eigen(hermitian_part(a));
  CHECK(max_abs_diff(eig.eigenvalues, {-1, -1, 0, 2, 2, 2}) <= 1e-12);
  CHECK(orthonormality_error(eig.eigenvectors) <= 1e-10);
}

TEST_CASE("2x2 analytic spectra") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = rng.normal_pair().first;
    const double c = rng.normal_pair().first;
    const auto [br, bi] = rng.normal_pair();
    const cplx b{br, bi};
    const ComplexDense m{{a, b}, {std::conj(b), c}};
    const double mean = 0.5 * (a + c);
    const double radius = std::hypot(0.5 * (a - c), std::abs(b));
    CHECK(max_abs_diff(hermitian_eigenvalues(m), {mean - radius, mean + radius}) <= 1e-12);
  }
}

TEST_CASE("psd_sqrt examples") {
  CHECK(frobenius_distance(psd_sqrt(ComplexDense::identity(4)), ComplexDense::identity(4)) <= 1e-14);
  CHECK(frobenius_distance(psd_sqrt(ComplexDense::diagonal({4, 1, 0})),
                           ComplexDense::diagonal({2, 1, 0})) <= 1e-14);
  const ComplexDense plus{{0.5, 0.5}, {0.5, 0.5}};
  CHECK(frobenius_distance(psd_sqrt(plus), plus) <= 1e-12);
}

TEST_CASE("psd_sqrt squares back and rejects negative spectra") {
  SplitMix64 rng(3);
  for (std::size_t n : {2, 4, 9}) {
    const auto g = testing::random_matrix(rng, n, n);
    const ComplexDense s = hermitian_part(g * g.adjoint());
    const ComplexDense a = hermitian_part(s * s);
    const ComplexDense root = psd_sqrt(a);
    CHECK(root.hermitian_defect() <= 1e-12);
    CHECK(min_eigenvalue(root) >= -1e-10);
    CHECK(frobenius_distance(root * root, a) <= 1e-9 * std::max(1.0, a.frobenius_norm()));
  }
  // clamping window
  CHECK(frobenius_distance(psd_sqrt(ComplexDense::diagonal({1, -5e-11})),
                           ComplexDense::diagonal({1, 0})) == 0.0);
  try {
    psd_sqrt(ComplexDense::diagonal({1, -1e-6}));
    FAIL("expected NotPsdError");
  } catch (const NotPsdError& e) {
    CHECK(e.kind() == ErrorKind::NotPsd);
    CHECK(e.eigenvalue() == doctest::Approx(-1e-6));
  }
}

TEST_CASE("partial_transpose examples") {
  const auto mixed = ComplexDense::identity(4) * cplx{0.25};
  CHECK(partial_transpose(mixed, kQubits, kSecond) == mixed);

  const ComplexDense pt = partial_transpose(bell_projector(), kQubits, kSecond);
  CHECK(max_abs_diff(hermitian_eigenvalues(pt), {-0.5, 0.5, 0.5, 0.5}) <= 1e-14);
  CHECK(min_eigenvalue(pt) == doctest::Approx(-0.5).epsilon(1e-14));

  // PT of a product state acts as a local transpose.
  SplitMix64 rng(8);
  const auto ra = testing::random_density(rng, 2, 2);
  const auto rb = testing::random_density(rng, 2, 2);
  const auto product_pt = partial_transpose(kron(ra, rb), kQubits, kSecond);
  CHECK(frobenius_distance(product_pt, kron(ra, rb.transpose())) <= 1e-15);
  CHECK(min_eigenvalue(product_pt) >= -1e-10);
}

TEST_CASE("partial_transpose is an exact involution and preserves the trace") {
  SplitMix64 rng(21);
  const std::array<std::size_t, 3> dims{2, 3, 2};
  const auto rho = testing::random_density(rng, 12, 4);
  for (const auto& subset : std::vector<std::vector<std::size_t>>{{1}, {2}, {3}, {1, 3}, {2, 3}}) {
    const auto pt = partial_transpose(rho, dims, subset);
    CHECK(partial_transpose(pt, dims, subset) == rho);
    CHECK(std::abs(pt.trace() - rho.trace()) <= 1e-14);
    CHECK(pt.hermitian_defect() <= 1e-12);
  }
  // transposing every subsystem is the full transpose, which is not a valid subset
  CHECK_THROWS_AS(partial_transpose(rho, dims, std::vector<std::size_t>{1, 2, 3}), Error);
  CHECK_THROWS_AS(partial_transpose(rho, dims, std::vector<std::size_t>{}), Error);
  CHECK_THROWS_AS(partial_transpose(rho, dims, std::vector<std::size_t>{4}), Error);
}

TEST_CASE("partial_transpose checks the shape") {
  const std::array<std::size_t, 2> wrong{2, 3};
  try {
    partial_transpose(ComplexDense::identity(4), wrong, kSecond);
    FAIL("expected a shape error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Shape);
  }
}

TEST_CASE("partial_trace of a product state") {
  SplitMix64 rng(4);
  const auto ra = testing::random_density(rng, 2, 2);
  const auto rb = testing::random_density(rng, 3, 3);
  const std::array<std::size_t, 2> dims{2, 3};
  const std::array<std::size_t, 1> first{1};
  const std::array<std::size_t, 1> second{2};
  CHECK(frobenius_distance(partial_trace(kron(ra, rb), dims, second), ra) <= 1e-14);
  CHECK(frobenius_distance(partial_trace(kron(ra, rb), dims, first), rb) <= 1e-14);
  const auto reduced = partial_trace(bell_projector(), kQubits, kSecond);
  CHECK(frobenius_distance(reduced, ComplexDense::identity(2) * cplx{0.5}) <= 1e-15);
}

TEST_CASE("min_eigenvalue and frobenius_distance examples") {
  CHECK(min_eigenvalue(ComplexDense::identity(2) * cplx{0.5}) == 0.5);
  CHECK(min_eigenvalue(ComplexDense::diagonal({1, -3})) == -3.0);

  CHECK(frobenius_distance(ComplexDense::identity(2), ComplexDense::identity(2)) == 0.0);
  CHECK(frobenius_distance(ComplexDense::identity(2), ComplexDense(2, 2)) ==
        doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
  CHECK(frobenius_distance(ComplexDense::diagonal({1, 0}), ComplexDense::diagonal({0, 1})) ==
        doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
  CHECK_THROWS_AS(frobenius_distance(ComplexDense(2, 2), ComplexDense(3, 3)), Error);
}
