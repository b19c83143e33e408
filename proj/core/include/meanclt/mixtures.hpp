#pragma once

#include <vector>

#include "meanclt/finite_dist.hpp"

namespace meanclt {

/// A law written as sum_s weights[s] * components[s].
struct MixtureDecomposition {
    std::vector<double> weights;       // > 0, summing to one
    std::vector<FiniteDist> components;

    /// Recomposes the mixture into a single law.
    FiniteDist compose() const { return mixture_law(weights, components); }
};

/// Three-point law x<y<0<z written as alpha*m1 + (1-alpha)*m0 with m1, m0
/// the unique mean-zero two-point laws on {x,z} and {y,z}; beta is the
/// variance-tilted weight of m1* inside the mixture's zero-bias transform.
/// When `reflected` is set the split describes the reflection -X of the
/// input (whose middle point was positive); beta > alpha always holds in
/// this canonical orientation.
struct ThreePointSplit {
    double alpha = 0.0;
    double beta = 0.0;
    FiniteDist m1;
    FiniteDist m0;
    bool reflected = false;
};

/// lhs/rhs of the zero-bias coupling inequality for a three-point mixture.
struct CouplingCheck {
    double lhs = 0.0;  // ||m_alpha* - m_alpha||_1
    double rhs = 0.0;  // alpha ||m1*-m1|| + (1-beta) ||m0*-m0|| + (beta-alpha) ||m1*-m0||
};

/// Expresses a standardized law as a finite mixture of laws on at most
/// three points, each again mean 0 / variance 1: while more than three
/// atoms remain, a null vector of the 3 x m moment matrix moves the
/// probability vector to the two faces it first hits, and the pieces are
/// split recursively. Throws NotStandardized, MixtureBlowup.
MixtureDecomposition reduce_to_d3(const FiniteDist& d);

/// Greedy decomposition of a centered law with no atom at zero into
/// mean-zero two-point laws, pairing the most negative against the most
/// positive residual atom. Throws AtomAtZero, NonCenteredInput,
/// OneSidedSupport.
MixtureDecomposition two_point_mixture(const FiniteDist& d);

/// The canonical two-term split of a centered three-point law with nonzero
/// middle point. Inputs with positive middle point are reflected first and
/// the flag recorded. Throws WrongSupportSize, ZeroMiddlePoint,
/// NonCenteredInput.
ThreePointSplit three_point_split(const FiniteDist& d);

/// ||m1*-m1||_1 - ||m1*-m0||_1 for x<y<0<z, evaluated both constructively
/// (exact W1 on the built laws) and by the closed form of the matching CDF
/// branch; throws Error if the two routes disagree beyond 1e-10.
/// The gap is nonnegative up to rounding. Throws OrderingViolation.
double qp_inequality_gap(double x, double y, double z);

/// Checks the coupling bound lhs <= rhs for a split and that rhs is itself
/// dominated by beta ||m1*-m1|| + (1-beta) ||m0*-m0||; throws Error on
/// violation beyond 1e-12 and returns both sides.
CouplingCheck coupling_bound_check(const ThreePointSplit& split);

}  // namespace meanclt
