#include "sgws/ent2q.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "sgws/cmatrix.hpp"
#include "sgws/errors.hpp"
#include "sgws/tolerances.hpp"

namespace sgws::ent2q {

TwoQubitState::TwoQubitState(ComplexDense rho) : rho_(std::move(rho)) {
  if (rho_.rows() != 4 || rho_.cols() != 4) {
    throw Error(ErrorKind::Shape, "TwoQubitState: expected a 4x4 matrix");
  }
  if (!is_hermitian(rho_)) {
    throw Error(ErrorKind::Validation, "TwoQubitState: matrix is not Hermitian");
  }
  const cplx tr = rho_.trace();
  if (std::abs(tr - cplx(1.0)) > tol::kTrace) {
    std::ostringstream msg;
    msg << "TwoQubitState: trace " << tr << " is not 1";
    throw Error(ErrorKind::Validation, msg.str());
  }
  const double lowest = min_eigenvalue(rho_);
  if (lowest < -tol::kPsd) {
    std::ostringstream msg;
    msg << "TwoQubitState: eigenvalue " << lowest << " is negative";
    throw NotPsdError(lowest, msg.str());
  }
}

ComplexDense spin_flip(const TwoQubitState& state) {
  // sigma_y x sigma_y is real: anti-diagonal (-1, 1, 1, -1).
  const ComplexDense yy{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
  return hermitian_part(yy * state.rho().conj() * yy);
}

namespace {

// Eigenvalues this close to zero are rounding noise of a rank-deficient
// matrix; taking their square root would turn ~1e-17 into ~1e-9.
double noise_floor(const std::vector<double>& values) {
  double largest = 0.0;
  for (double x : values) largest = std::max(largest, std::abs(x));
  return 16.0 * std::numeric_limits<double>::epsilon() * largest;
}

double root_above_floor(double x, double floor) { return x > floor ? std::sqrt(x) : 0.0; }

ComplexDense density_sqrt(const ComplexDense& rho) {
  const EigenResult eig = hermitian_eigen(rho);
  if (eig.eigenvalues.front() < -tol::kPsd) {
    std::ostringstream msg;
    msg << "concurrence: eigenvalue " << eig.eigenvalues.front() << " is negative";
    throw NotPsdError(eig.eigenvalues.front(), msg.str());
  }
  const double floor = noise_floor(eig.eigenvalues);
  std::vector<double> roots;
  for (double x : eig.eigenvalues) roots.push_back(root_above_floor(x, floor));
  const ComplexDense& v = eig.eigenvectors;
  return hermitian_part(v * ComplexDense::diagonal(roots) * v.adjoint());
}

}  // namespace

double concurrence(const TwoQubitState& state) {
  // The eigenvalues of R = sqrt(sqrt(rho) rho_tilde sqrt(rho)) are the square
  // roots of those of the inner product, so R itself is never formed.
  const ComplexDense root = density_sqrt(state.rho());
  const ComplexDense inner = hermitian_part(root * spin_flip(state) * root);
  const std::vector<double> mu = hermitian_eigenvalues(inner);
  const double floor = noise_floor(mu);
  std::vector<double> lambda;
  for (double x : mu) lambda.push_back(root_above_floor(x, floor));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

double binary_entropy(double x) {
  auto term = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
  return term(x) + term(1.0 - x);
}

double eof(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    std::ostringstream msg;
    msg << "eof: concurrence " << c << " outside [0, 1]";
    throw Error(ErrorKind::Validation, msg.str());
  }
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

std::optional<double> evaluate_candidate(const ClosedFormCandidate& candidate, double v,
                                         double theta) {
  const double cos4 = std::cos(4.0 * theta);
  const double radicand = candidate.radicand == Radicand::Printed
                              ? (1.0 - v) * (1.0 - v) + 2.0 * v * v * cos4
                              : 1.0 + 2.0 * v - v * v - 2.0 * v * v * cos4;
  if (radicand < 0.0) return std::nullopt;
  const double base = 1.0 + 2.0 * v + v * v - 4.0 * v * v * cos4;
  const double cross = 4.0 * v * std::sin(2.0 * theta) * std::sqrt(radicand);
  const double a_plus = base + cross;
  const double a_minus = base - cross;
  // A- touches zero at v = 1; allow for rounding there
  const double slack = 1e-12 * std::max(1.0, std::abs(a_plus));
  if (a_plus < 0.0 || a_minus < -slack) return std::nullopt;
  return std::max(0.0, candidate.a * (std::sqrt(a_plus) - std::sqrt(std::max(0.0, a_minus))) +
                           candidate.b * (v - 1.0));
}

ComplexDense two_qubit_werner(double v, double theta) {
  ComplexDense w(4, 4);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double mixed = (1.0 - v) / 4.0;
  for (std::size_t i = 0; i < 4; ++i) w(i, i) = mixed;
  w(0, 0) += v * s * s;
  w(3, 3) += v * c * c;
  w(0, 3) = v * s * c;
  w(3, 0) = v * s * c;
  return w;
}

ClosedFormConcurrence concurrence_closed_form(double v, double theta) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << "concurrence_closed_form: v = " << v << " outside [0, 1]";
    throw Error(ErrorKind::Validation, msg.str());
  }
  if (auto value = evaluate_candidate(kSelectedGrouping, v, theta)) return {*value, true};
  return {concurrence(TwoQubitState(two_qubit_werner(v, theta))), false};
}

}  // namespace sgws::ent2q
