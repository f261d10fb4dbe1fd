#pragma once

// Two-qubit entanglement: Wootters concurrence, entanglement of formation and
// a closed form for the concurrence of the two-qubit SGWS with
// |psi> = sin(theta)|00> + cos(theta)|11>.

#include <optional>

#include "sgws/complex_dense.hpp"

namespace sgws::ent2q {

/// A validated two-qubit density matrix (4x4, Hermitian, trace 1, PSD).
class TwoQubitState {
 public:
  explicit TwoQubitState(ComplexDense rho);

  const ComplexDense& rho() const noexcept { return rho_; }

 private:
  ComplexDense rho_;
};

/// (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y).
ComplexDense spin_flip(const TwoQubitState& state);

/// max(0, l1 - l2 - l3 - l4), l_k the descending eigenvalues of
/// sqrt(sqrt(rho) rho_tilde sqrt(rho)).
double concurrence(const TwoQubitState& state);

/// Binary entropy h(x) in bits, h(0) = h(1) = 0.
double binary_entropy(double x);

/// Entanglement of formation h((1 + sqrt(1 - c^2)) / 2); c must lie in [0, 1].
double eof(double c);

/// Inner radicand under sqrt inside A_plus / A_minus.
enum class Radicand {
  Printed,  // (1 - v)^2 + 2 v^2 cos 4theta
  Derived,  // 1 + 2v - v^2 - 2 v^2 cos 4theta
};

/// Candidate C = max{0, a (sqrt(A+) - sqrt(A-)) + b (v - 1)} with
/// A+- = 1 + 2v + v^2 - 4 v^2 cos 4theta +- 4 v sin 2theta sqrt(radicand).
struct ClosedFormCandidate {
  double a = 0.25;
  double b = 0.5;
  Radicand radicand = Radicand::Derived;
};

/// nullopt where the radicand or A- is negative.
std::optional<double> evaluate_candidate(const ClosedFormCandidate& candidate, double v,
                                         double theta);

/// The grouping that matches the numeric concurrence: a = 1/4, b = 1/2 with
/// the derived radicand, i.e. (1/4)(sqrt(A+) - sqrt(A-) - 2 + 2v).
inline constexpr ClosedFormCandidate kSelectedGrouping{0.25, 0.5, Radicand::Derived};

struct ClosedFormConcurrence {
  double value = 0.0;
  bool closed_form = true;  // false: the radicand was negative, value is numeric
};

/// Closed-form concurrence of (1-v) I/4 + v |psi><psi|,
/// |psi> = sin(theta)|00> + cos(theta)|11>; falls back to the numeric
/// concurrence outside the closed form's domain.
ClosedFormConcurrence concurrence_closed_form(double v, double theta);

/// The same two-qubit state, built explicitly.
ComplexDense two_qubit_werner(double v, double theta);

}  // namespace sgws::ent2q
