#pragma once

namespace meanclt::stdnormal {

/// Standard normal density phi(x).
double pdf(double x);

/// Standard normal CDF Phi(x), evaluated through erfc so both tails keep
/// full relative precision.
double cdf(double x);

/// Survival function 1 - Phi(x) without cancellation in the right tail.
double sf(double x);

/// Quantile Phi^{-1}(u) for u in (0,1): Wichura's AS241 rational
/// approximation polished by one Newton step on Phi. Throws DomainError
/// outside (0,1).
double quantile(double u);

/// Psi(x) = x Phi(x) + phi(x) = integral of Phi over (-inf, x].
double cdf_antideriv(double x);

/// Integral of (1 - Phi) over [x, inf) = phi(x) - x (1 - Phi(x)).
double sf_antideriv(double x);

}  // namespace meanclt::stdnormal
