#pragma once

#include <string>

namespace meanclt::tol {

// Support points closer than kMergeRel * max(1, |span|) are merged into one atom.
inline constexpr double kMergeRel = 1e-12;

// Mass bookkeeping: |sum(probs) - 1| after canonicalization.
inline constexpr double kMassInternal = 1e-12;

// Mass gate for user-supplied input; inputs inside the gate are renormalized.
inline constexpr double kMassInput = 1e-9;

// Mean-zero gate for operations that require centered input.
inline constexpr double kMeanZero = 1e-9;

// Standardization accuracy produced by standardize().
inline constexpr double kStandardized = 1e-12;

// Relative tolerance of the real-gcd lattice detector.
inline constexpr double kLatticeRel = 1e-9;

// Iteration cap for the real-gcd Euclid loop.
inline constexpr int kLatticeMaxIter = 64;

// Absolute tolerance of the adaptive quadrature in a_functional.
inline constexpr double kAQuadAbs = 1e-10;

// Bisection tolerance for piecewise-linear-vs-normal crossing location.
inline constexpr double kCrossingBisect = 1e-13;

// Slack allowed on the tested upper bounds (B <= 1, ratios <= 1).
inline constexpr double kBoundSlack = 1e-9;

// Two evaluation routes of the same quantity must agree this closely.
inline constexpr double kRouteAgreement = 1e-10;

// Mixture weights below this are dropped and the rest renormalized.
inline constexpr double kWeightDrop = 1e-14;

// Generated atoms below this probability are dropped: subnormal masses are
// numerically meaningless and cannot influence any integral at the stated
// tolerances (contribution <= floor * span).
inline constexpr double kProbFloor = 2.2250738585072014e-308;  // DBL_MIN

// Guards for convolution growth.
inline constexpr std::size_t kMaxSupport = 1'000'000;
inline constexpr std::size_t kMaxConvolvePairs = 20'000'000;

// Recursion cap for reduce_to_d3.
inline constexpr int kMaxSplitDepth = 64;

/// One line per named tolerance, for the CLI --tol-report flag.
std::string report();

}  // namespace meanclt::tol
