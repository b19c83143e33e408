#pragma once

#include <optional>

#include "meanclt/finite_dist.hpp"

namespace meanclt {

/// Stein functionals of one distribution, bundled for reporting.
/// b_value <= 1 and zolotarev_ratio <= 1/2 are tested facts, not enforced here.
struct FunctionalReport {
    double b_value = 0.0;
    double a_value = 0.0;
    double zolotarev_ratio = 0.0;
    std::optional<double> psi;  // only for standardized two-point laws
    MomentSummary moments;
    LatticeInfo lattice;
};

/// B(G) = 2 sigma^2 ||G* - G||_1 / E|X|^3 for a centered law with positive
/// variance. Equals 1 exactly for mean-zero two-point laws.
double b_functional(const FiniteDist& d);

/// Zolotarev's representation of Esseen's asymptotic constant:
///   A(G) = (sigma sqrt(2 pi))^{-1} int_{-1/2}^{1/2} int |omega/2 (1-x^2) + h u| e^{-x^2/2} dx du
/// with omega = |EX^3|/(3 sigma^2) and h the lattice span (0 if nonlattice).
/// The inner integral is evaluated in closed form from the parabola roots and
/// Gaussian partial moments; the outer integral by adaptive Gauss-Legendre
/// to absolute tolerance 1e-10.
double a_functional(const FiniteDist& d);

/// sigma^3 A(G) / E|X|^3; its supremum over centered laws is 1/2.
double zolotarev_ratio(const FiniteDist& d);

/// psi(p) = sqrt(pq)/(p^2+q^2) ||G_p - Phi||_1 for the standardized
/// Bernoulli(p) law G_p on {-sqrt(p/q), sqrt(q/p)}; every value is a lower
/// bound for the all-n L1 Berry-Esseen constant.
double psi_lower_bound(double p);

/// The standardized Bernoulli(p) law itself.
FiniteDist bernoulli_standardized(double p);

/// Full report: B, A, the Zolotarev ratio, psi when the law is a
/// standardized two-point law, plus moments and lattice info.
FunctionalReport functional_report(const FiniteDist& d);

}  // namespace meanclt
