#pragma once

#include <cmath>
#include <cstdint>

#include "meanclt/errors.hpp"
#include "meanclt/finite_dist.hpp"
#include "meanclt/zero_bias.hpp"

namespace meanclt {

/// Exact integral of |F1 - F2| for two step CDFs over the merged grid.
double w1_step_step(const FiniteDist& d1, const FiniteDist& d2);

/// Exact integral of |F_d - F_z| for a step CDF against a piecewise-linear
/// CDF; segments split at breakpoints and at interior crossings, each piece
/// integrated in closed form (trapezoid / two-triangles).
double w1_step_pwl(const FiniteDist& d, const ZeroBiasDist& z);

/// Exact integral of |F_1 - F_2| for two piecewise-linear CDFs.
double w1_pwl_pwl(const ZeroBiasDist& z1, const ZeroBiasDist& z2);

/// Exact integral of |F_d - Phi|: per step interval the crossing point is
/// Phi^{-1}(level) and the pieces reduce to the Phi antiderivative; tails
/// use the closed forms Psi(a) and phi(b) - b(1-Phi(b)).
double w1_step_normal(const FiniteDist& d);

/// Integral of |F_z - Phi| for a piecewise-linear CDF: per segment the
/// difference is split into monotone pieces (at the points where the
/// segment slope equals phi), crossings are bisected to 1e-13, and each
/// signed piece is integrated in closed form. Absolute accuracy 1e-10.
double w1_pwl_normal(const ZeroBiasDist& z);

/// Generalized inverse F^{-1}(u) = sup{a : F(a) < u}, the staircase inverse;
/// at jump levels this returns the lower support point.
double inverse_cdf(const FiniteDist& d, double u);

/// Inverse CDF with linear interpolation inside increasing segments; at a
/// flat level it returns the left end of the plateau (sup convention).
double inverse_cdf(const ZeroBiasDist& z, double u);

/// Midpoint-rule quadrature of |F1^{-1}(u) - F2^{-1}(u)| over (0,1); the
/// inverse-CDF coupling attains the minimal L1 cost, so this converges to
/// the exact W1 routines and serves as their independent oracle.
template <class D1, class D2>
double w1_by_coupling(const D1& d1, const D2& d2, std::int64_t quad_points) {
    if (quad_points < 2) throw DomainError("w1_by_coupling: quad_points must be >= 2");
    const double du = 1.0 / static_cast<double>(quad_points);
    double acc = 0.0, comp = 0.0;  // Neumaier
    for (std::int64_t k = 0; k < quad_points; ++k) {
        const double u = (static_cast<double>(k) + 0.5) * du;
        const double term = std::abs(inverse_cdf(d1, u) - inverse_cdf(d2, u));
        const double t = acc + term;
        comp += (std::abs(acc) >= std::abs(term)) ? (acc - t) + term : (term - t) + acc;
        acc = t;
    }
    return (acc + comp) * du;
}

}  // namespace meanclt
