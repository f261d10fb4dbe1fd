#pragma once

namespace sgws::tol {

inline constexpr double kHermitian = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kNormalization = 1e-12;
inline constexpr double kNonzeroCoeff = 1e-12;
inline constexpr double kTrace = 1e-12;

inline constexpr double kReconstruction = 1e-10;
inline constexpr double kWeightSum = 1e-12;
inline constexpr double kCauchySchwarz = 1e-12;
/// Slack allowed above the critical value before decompositions are refused.
inline constexpr double kCriticalSlack = 1e-12;

inline constexpr double kJacobiOffDiagonal = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

inline constexpr int kBisectionIterations = 60;

}  // namespace sgws::tol
