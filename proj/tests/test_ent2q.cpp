#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "sgws/cmatrix.hpp"
#include "sgws/ent2q.hpp"
#include "sgws/errors.hpp"
#include "sgws/sep.hpp"
#include "sgws/sgws.hpp"
#include "support.hpp"

using namespace sgws;
using namespace sgws::ent2q;
using std::numbers::pi;

namespace {

ComplexDense pure(std::array<cplx, 4> psi) {
  const auto col = ComplexDense::column(psi);
  return outer(col, col);
}

ComplexDense bell() {
  const double s = 1.0 / std::sqrt(2.0);
  return pure({s, 0, 0, s});
}

double entropy_nats_oracle(double x) {
  auto term = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  return (term(x) + term(1.0 - x)) / std::log(2.0);
}

}  // namespace

TEST_CASE("TwoQubitState validation") {
  CHECK_NOTHROW(TwoQubitState(ComplexDense::identity(4) * cplx{0.25}));
  CHECK_THROWS_AS(TwoQubitState(ComplexDense::identity(3) * cplx{1.0 / 3}), Error);
  CHECK_THROWS_AS(TwoQubitState(ComplexDense::identity(4)), Error);
  CHECK_THROWS_AS(TwoQubitState(ComplexDense::diagonal({1.5, -0.5, 0, 0})), Error);
  ComplexDense skew = ComplexDense::identity(4) * cplx{0.25};
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(TwoQubitState{skew}, Error);
}

TEST_CASE("spin_flip examples") {
  const auto mixed = ComplexDense::identity(4) * cplx{0.25};
  CHECK(frobenius_distance(spin_flip(TwoQubitState(mixed)), mixed) <= 1e-15);
  CHECK(frobenius_distance(spin_flip(TwoQubitState(bell())), bell()) <= 1e-15);
  CHECK(frobenius_distance(spin_flip(TwoQubitState(pure({1, 0, 0, 0}))), pure({0, 0, 0, 1})) <= 1e-15);

  SplitMix64 rng(6);
  const auto rho = testing::random_density(rng, 4, 3);
  const auto flipped = spin_flip(TwoQubitState(rho));
  CHECK(flipped.hermitian_defect() <= 1e-15);
  CHECK(std::abs(flipped.trace() - 1.0) <= 1e-14);
  CHECK(min_eigenvalue(flipped) >= -1e-12);

  // against an explicit sigma_y x sigma_y
  const ComplexDense sy{{0, cplx(0, -1)}, {cplx(0, 1), 0}};
  const auto yy = kron(sy, sy);
  CHECK(frobenius_distance(flipped, yy * rho.conj() * yy) <= 1e-15);
}

TEST_CASE("concurrence examples") {
  CHECK(concurrence(TwoQubitState(ComplexDense::identity(4) * cplx{0.25})) <= 1e-12);
  CHECK(concurrence(TwoQubitState(bell())) == doctest::Approx(1.0).epsilon(1e-9));
  for (double theta : {0.1, 0.4, pi / 4, 1.2}) {
    const auto state = pure({std::sin(theta), 0, 0, std::cos(theta)});
    CHECK(concurrence(TwoQubitState(state)) ==
          doctest::Approx(2 * std::sin(theta) * std::cos(theta)).epsilon(1e-8));
  }
  CHECK(concurrence(TwoQubitState(pure({1, 0, 0, 0}))) <= 1e-8);
}

TEST_CASE("concurrence is invariant under local unitaries") {
  SplitMix64 rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = testing::random_density(rng, 4, 1 + trial % 4);
    const auto u = kron(testing::random_unitary(rng, 2), testing::random_unitary(rng, 2));
    const auto rotated = hermitian_part(u * rho * u.adjoint());
    CHECK(std::abs(concurrence(TwoQubitState(rotated)) - concurrence(TwoQubitState(rho))) <= 1e-9);
  }
}

TEST_CASE("binary entropy and entanglement of formation") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(eof(0.0) == 0.0);
  CHECK(eof(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double x = (1.0 + std::sqrt(3.0) / 2.0) / 2.0;
  CHECK(eof(0.5) == doctest::Approx(entropy_nats_oracle(x)).epsilon(1e-14));
  CHECK(std::abs(eof(0.5) - 0.3546) <= 5e-5);

  double previous = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double value = eof(k / 100.0);
    CHECK(value > previous);
    CHECK(value <= 1.0);
    previous = value;
  }
  CHECK_THROWS_AS(eof(-0.01), Error);
  CHECK_THROWS_AS(eof(1.01), Error);
}

TEST_CASE("closed-form concurrence examples") {
  for (double theta : {0.1, 0.5, 1.3}) CHECK(concurrence_closed_form(0.0, theta).value == 0.0);
  const auto boundary = concurrence_closed_form(1.0 / 3, pi / 4);
  CHECK(boundary.closed_form);
  CHECK(boundary.value <= 1e-12);

  const double v = 1.0 / 3 + 0.01;
  const auto above = concurrence_closed_form(v, pi / 4);
  const double numeric = concurrence(TwoQubitState(two_qubit_werner(v, pi / 4)));
  CHECK(above.value > 0.0);
  CHECK(std::abs(above.value - numeric) <= 1e-8);
  // isotropic two-qubit state: C = (3v - 1)/2
  CHECK(above.value == doctest::Approx((3 * v - 1) / 2).epsilon(1e-12));
}

TEST_CASE("grouping selection: exactly one candidate matches the numeric concurrence") {
  std::vector<ClosedFormCandidate> candidates;
  for (auto radicand : {Radicand::Printed, Radicand::Derived})
    for (double a : {0.25, 1.0})
      for (double ratio : {0.5, 2.0}) candidates.push_back({a, ratio * a, radicand});

  int matching = 0;
  for (const auto& candidate : candidates) {
    double worst = 0.0;
    int evaluated = 0;
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const double v = i / 20.0;
        const double theta = (j + 0.5) * pi / 40;
        const auto value = evaluate_candidate(candidate, v, theta);
        if (!value) continue;
        ++evaluated;
        const double numeric = concurrence(TwoQubitState(two_qubit_werner(v, theta)));
        worst = std::max(worst, std::abs(*value - numeric));
      }
    }
    if (evaluated > 0 && worst <= 1e-8) {
      ++matching;
      CHECK(candidate.a == kSelectedGrouping.a);
      CHECK(candidate.b == kSelectedGrouping.b);
      CHECK(candidate.radicand == kSelectedGrouping.radicand);
    }
  }
  CHECK(matching == 1);
}

TEST_CASE("printed radicand goes negative, derived one does not") {
  const ClosedFormCandidate printed{0.25, 0.5, Radicand::Printed};
  CHECK_FALSE(evaluate_candidate(printed, 0.95, pi / 4).has_value());
  for (int i = 0; i <= 50; ++i)
    for (int j = 0; j <= 50; ++j)
      CHECK(evaluate_candidate(kSelectedGrouping, i / 50.0, j * (pi / 2) / 50).has_value());
}

TEST_CASE("zero set of the concurrence") {
  for (int k = 1; k <= 7; ++k) {
    const double theta = k * pi / 16;
    const double vstar = 1.0 / (4 * std::sin(theta) * std::cos(theta) + 1);
    const std::vector<cplx> alpha{std::sin(theta), std::cos(theta)};
    CHECK(std::abs(vstar - critical_v(validate_coeffs(alpha, 2), 2)) <= 1e-14);
    CAPTURE(theta);
    CHECK(concurrence(TwoQubitState(two_qubit_werner(vstar - 1e-4, theta))) == 0.0);
    CHECK(concurrence(TwoQubitState(two_qubit_werner(vstar + 1e-4, theta))) > 1e-6);
  }
}

TEST_CASE("two_qubit_werner matches build_sgws") {
  const double theta = 0.6;
  const std::vector<cplx> alpha{std::sin(theta), std::cos(theta)};
  const auto spec = make_spec(validate_coeffs(alpha, 2), 2, 0.42);
  CHECK(frobenius_distance(two_qubit_werner(0.42, theta), build_sgws(spec)) <= 1e-15);
}

TEST_CASE("reconstructed separable decompositions have zero concurrence") {
  for (double theta : {0.2, 0.7, 1.1}) {
    const std::vector<cplx> alpha{std::sin(theta), std::cos(theta)};
    const auto c = validate_coeffs(alpha, 2);
    for (double fraction : {0.5, 1.0}) {
      const auto spec = make_spec(c, 2, fraction * critical_v(c, 2));
      const auto rho = hermitian_part(sep::reconstruct(sep::decompose_sgws(spec)));
      CHECK(concurrence(TwoQubitState(rho)) <= 1e-9);
    }
  }
}
