#include "meanclt/functionals.hpp"

#include <cmath>

#include "meanclt/errors.hpp"
#include "meanclt/normal.hpp"
#include "meanclt/tolerances.hpp"
#include "meanclt/wasserstein.hpp"
#include "meanclt/zero_bias.hpp"

namespace meanclt {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024157652848110452530;

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the rule
// is symmetric).
constexpr double kGlNode[8] = {
    0.0000000000000000, 0.2011940939974345, 0.3941513470775634, 0.5709721726085388,
    0.7244177313601701, 0.8482065834104272, 0.9372733924007060, 0.9879925180204854};
constexpr double kGlWeight[8] = {
    0.2025782419255613, 0.1984314853271116, 0.1861610000155622, 0.1662692058169939,
    0.1395706779261543, 0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

template <class Fn>
double gl15(const Fn& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = kGlWeight[0] * f(mid);
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGlNode[i];
        sum += kGlWeight[i] * (f(mid + dx) + f(mid - dx));
    }
    return sum * half;
}

template <class Fn>
double adaptive_gl(const Fn& f, double a, double b, double abs_tol, int depth) {
    const double whole = gl15(f, a, b);
    const double mid = 0.5 * (a + b);
    const double halves = gl15(f, a, mid) + gl15(f, mid, b);
    if (std::abs(whole - halves) <= abs_tol || depth >= 48) return halves;
    return adaptive_gl(f, a, mid, 0.5 * abs_tol, depth + 1) +
           adaptive_gl(f, mid, b, 0.5 * abs_tol, depth + 1);
}

// Inner integral of |omega/2 (1-x^2) + h u| against e^{-x^2/2} over the real
// line, in closed form. The integrand parabola has roots +-r with
// r^2 = 1 + 2hu/omega; full-line Gaussian partial moments reduce the answer
// to Phi and phi at r.
double inner_integral(double omega, double hu) {
    if (omega == 0.0) return std::abs(hu) * kSqrt2Pi;
    const double root2 = 1.0 + 2.0 * hu / omega;
    if (root2 <= 0.0) return -hu * kSqrt2Pi;
    const double r = std::sqrt(root2);
    return kSqrt2Pi * (2.0 * omega * r * stdnormal::pdf(r) +
                       hu * (4.0 * stdnormal::cdf(r) - 3.0));
}

}  // namespace

double b_functional(const FiniteDist& d) {
    const MomentSummary ms = moments(d);
    if (std::abs(ms.mean) > tol::kMeanZero)
        throw NonCenteredInput("b_functional: |mean| exceeds 1e-9");
    if (ms.variance <= d.merge_tolerance())
        throw DegenerateDistribution("b_functional: variance is zero");
    const double w1 = w1_step_pwl(d, zero_bias(d));
    return 2.0 * ms.variance * w1 / ms.abs_third;
}

double a_functional(const FiniteDist& d) {
    const MomentSummary ms = moments(d);
    if (ms.variance <= d.merge_tolerance())
        throw DegenerateDistribution("a_functional: variance is zero");
    const LatticeInfo lat = lattice_span(d);
    const double omega = ms.omega;
    const double h = lat.is_lattice ? lat.span : 0.0;
    const double sigma = std::sqrt(ms.variance);

    if (h == 0.0) return inner_integral(omega, 0.0) / (sigma * kSqrt2Pi);
    if (omega == 0.0) return 0.25 * h;  // (1/sqrt(2pi)) h int |u| e^{-x^2/2} dx du

    // The integrand has a square-root kink where the parabola roots vanish,
    // at u0 = -omega/(2h) < 0; left of it the inner integral is the exact
    // line -h u sqrt(2pi).
    const auto f = [&](double u) { return inner_integral(omega, h * u); };
    double integral = 0.0;
    const double kink = -omega / (2.0 * h);
    if (kink > -0.5 && kink < 0.5) {
        integral += 0.5 * h * (0.25 - kink * kink) * kSqrt2Pi;
        integral += adaptive_gl(f, kink, 0.5, tol::kAQuadAbs, 0);
    } else {
        integral = adaptive_gl(f, -0.5, 0.5, tol::kAQuadAbs, 0);
    }
    return integral / (sigma * kSqrt2Pi);
}

double zolotarev_ratio(const FiniteDist& d) {
    const MomentSummary ms = moments(d);
    if (ms.variance <= d.merge_tolerance())
        throw DegenerateDistribution("zolotarev_ratio: variance is zero");
    const double sigma = std::sqrt(ms.variance);
    return sigma * ms.variance * a_functional(d) / ms.abs_third;
}

FiniteDist bernoulli_standardized(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("bernoulli_standardized: p must be in (0,1)");
    const double q = 1.0 - p;
    return FiniteDist::from_points({-std::sqrt(p / q), std::sqrt(q / p)}, {q, p});
}

double psi_lower_bound(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("psi_lower_bound: p must be in (0,1)");
    const double q = 1.0 - p;
    const double prefactor = std::sqrt(p * q) / (p * p + q * q);
    return prefactor * w1_step_normal(bernoulli_standardized(p));
}

FunctionalReport functional_report(const FiniteDist& d) {
    FunctionalReport r;
    r.moments = moments(d);
    r.lattice = lattice_span(d);
    r.b_value = b_functional(d);
    r.a_value = a_functional(d);
    r.zolotarev_ratio = zolotarev_ratio(d);
    if (d.size() == 2 && std::abs(r.moments.mean) <= tol::kMeanZero &&
        std::abs(r.moments.variance - 1.0) <= 1e-9) {
        // A standardized two-point law is the Bernoulli family member with
        // p = x^2 / (1 + x^2), x its negative support point.
        const double x = d.support()[0];
        r.psi = psi_lower_bound(x * x / (1.0 + x * x));
    }
    return r;
}

}  // namespace meanclt
