#include "meanclt/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "meanclt/normal.hpp"
#include "meanclt/tolerances.hpp"
#include "sum_util.hpp"

namespace meanclt {

namespace {

// Exact integral of |linear| over [l, r] where the line takes values fl, fr
// at the endpoints: trapezoid when the sign is constant, two triangles when
// it crosses zero.
double abs_linear_integral(double l, double r, double fl, double fr) {
    const double len = r - l;
    if (len <= 0.0) return 0.0;
    if (fl == 0.0 && fr == 0.0) return 0.0;
    if (fl * fr >= 0.0) return 0.5 * (std::abs(fl) + std::abs(fr)) * len;
    return 0.5 * len * (fl * fl + fr * fr) / std::abs(fr - fl);
}

// Union of two sorted grids with exact-duplicate removal.
std::vector<double> merge_grids(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> grid;
    grid.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

}  // namespace

double w1_step_step(const FiniteDist& d1, const FiniteDist& d2) {
    const auto grid = merge_grids(d1.support(), d2.support());

    detail::NeumaierSum acc;
    std::size_t i1 = 0, i2 = 0;
    for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
        while (i1 < d1.size() && d1.support()[i1] <= grid[g]) ++i1;
        while (i2 < d2.size() && d2.support()[i2] <= grid[g]) ++i2;
        const double c1 = i1 == 0 ? 0.0 : d1.cdf_left(i1 - 1);
        const double c2 = i2 == 0 ? 0.0 : d2.cdf_left(i2 - 1);
        acc.add(std::abs(c1 - c2) * (grid[g + 1] - grid[g]));
    }
    return acc.value();
}

double w1_step_pwl(const FiniteDist& d, const ZeroBiasDist& z) {
    const auto grid = merge_grids(d.support(), z.breakpoints());

    detail::NeumaierSum acc;
    std::size_t i = 0;
    for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
        const double l = grid[g];
        const double r = grid[g + 1];
        while (i < d.size() && d.support()[i] <= l) ++i;
        const double c = i == 0 ? 0.0 : d.cdf_left(i - 1);
        acc.add(abs_linear_integral(l, r, z.cdf(l) - c, z.cdf(r) - c));
    }
    return acc.value();
}

double w1_pwl_pwl(const ZeroBiasDist& z1, const ZeroBiasDist& z2) {
    const auto grid = merge_grids(z1.breakpoints(), z2.breakpoints());
    detail::NeumaierSum acc;
    for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
        const double l = grid[g];
        const double r = grid[g + 1];
        acc.add(abs_linear_integral(l, r, z1.cdf(l) - z2.cdf(l), z1.cdf(r) - z2.cdf(r)));
    }
    return acc.value();
}

namespace {

// Integral of |Phi(t) - c| over [a, b] for constant c, via the crossing
// point Phi^{-1}(c) and the antiderivative Psi.
double step_vs_phi(double a, double b, double c) {
    namespace sn = stdnormal;
    const double phi_int = sn::cdf_antideriv(b) - sn::cdf_antideriv(a);
    if (c <= 0.0) return phi_int - c * (b - a);
    if (c >= 1.0) return c * (b - a) - phi_int;
    const double t = sn::quantile(c);
    if (t <= a) return phi_int - c * (b - a);
    if (t >= b) return c * (b - a) - phi_int;
    const double left = c * (t - a) - (sn::cdf_antideriv(t) - sn::cdf_antideriv(a));
    const double right = (sn::cdf_antideriv(b) - sn::cdf_antideriv(t)) - c * (b - t);
    return left + right;
}

// Same integral written against the survival function: |Phi - c| = |s - Q|
// with s = 1 - c and Q = 1 - Phi, which keeps precision when c is near 1.
double step_vs_phi_tail(double a, double b, double s) {
    namespace sn = stdnormal;
    const double q_int = sn::sf_antideriv(a) - sn::sf_antideriv(b);
    if (s <= 0.0) return q_int;
    if (s >= 1.0) return s * (b - a) - q_int;
    const double t = -sn::quantile(s);  // Q(t) = s
    if (t <= a) return s * (b - a) - q_int;
    if (t >= b) return q_int - s * (b - a);
    const double left = (sn::sf_antideriv(a) - sn::sf_antideriv(t)) - s * (t - a);
    const double right = s * (b - t) - (sn::sf_antideriv(t) - sn::sf_antideriv(b));
    return left + right;
}

}  // namespace

double w1_step_normal(const FiniteDist& d) {
    namespace sn = stdnormal;
    const auto& x = d.support();

    detail::NeumaierSum acc;
    acc.add(sn::cdf_antideriv(x.front()));
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        const double c = d.cdf_left(k);
        if (c <= 0.5) {
            acc.add(step_vs_phi(x[k], x[k + 1], c));
        } else {
            acc.add(step_vs_phi_tail(x[k], x[k + 1], d.survival_right(k)));
        }
    }
    acc.add(sn::sf_antideriv(x.back()));
    return acc.value();
}

namespace {

// D(t) = F_z(t) - Phi(t) on one segment, evaluated through the survival
// side when requested.
struct SegmentDiff {
    const ZeroBiasDist* z;
    std::size_t seg;
    bool tail_form;

    double fz(double t) const {
        return z->cdf_left(seg) + z->densities()[seg] * (t - z->breakpoints()[seg]);
    }
    double sz(double t) const {
        return z->survival_right(seg + 1) +
               z->densities()[seg] * (z->breakpoints()[seg + 1] - t);
    }
    double operator()(double t) const {
        return tail_form ? stdnormal::sf(t) - sz(t) : fz(t) - stdnormal::cdf(t);
    }

    // Signed integral of D over [a, b] in closed form.
    double integral(double a, double b) const {
        namespace sn = stdnormal;
        if (tail_form) {
            const double q_int = sn::sf_antideriv(a) - sn::sf_antideriv(b);
            const double sz_int = 0.5 * (sz(a) + sz(b)) * (b - a);
            return q_int - sz_int;
        }
        const double fz_int = 0.5 * (fz(a) + fz(b)) * (b - a);
        const double phi_int = sn::cdf_antideriv(b) - sn::cdf_antideriv(a);
        return fz_int - phi_int;
    }
};

// Root of a monotone sign-changing D on [a, b] by bisection.
double bisect_root(const SegmentDiff& f, double a, double b) {
    double fa = f(a);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        if (b - a <= tol::kCrossingBisect) return mid;
        const double fm = f(mid);
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double w1_pwl_normal(const ZeroBiasDist& z) {
    namespace sn = stdnormal;
    detail::NeumaierSum acc;
    acc.add(sn::cdf_antideriv(z.min()));
    acc.add(sn::sf_antideriv(z.max()));

    for (std::size_t seg = 0; seg < z.segments(); ++seg) {
        const double l = z.breakpoints()[seg];
        const double r = z.breakpoints()[seg + 1];
        const double c = z.densities()[seg];
        const double mid_cdf = z.cdf_left(seg) + c * 0.5 * (r - l);
        SegmentDiff diff{&z, seg, mid_cdf > 0.5};

        // D' = c - phi changes sign only where phi(t) = c, so splitting
        // there leaves monotone pieces with at most one root each.
        std::vector<double> knots{l};
        const double peak = 0.39894228040143268;  // phi(0)
        if (c > 0.0 && c < peak) {
            const double t = std::sqrt(-2.0 * std::log(c / peak));
            if (-t > l && -t < r) knots.push_back(-t);
            if (t > l && t < r) knots.push_back(t);
        }
        knots.push_back(r);

        std::vector<double> cuts;
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            cuts.push_back(knots[i]);
            const double fa = diff(knots[i]);
            const double fb = diff(knots[i + 1]);
            if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0))
                cuts.push_back(bisect_root(diff, knots[i], knots[i + 1]));
        }
        cuts.push_back(r);

        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            acc.add(std::abs(diff.integral(cuts[i], cuts[i + 1])));
    }
    return acc.value();
}

double inverse_cdf(const FiniteDist& d, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("inverse_cdf: u must be in (0,1)");
    // First support point whose CDF reaches u: at jump levels this is the
    // lower point, matching the sup{a : F(a) < u} convention.
    std::size_t lo = 0, hi = d.size() - 1;
    if (d.cdf_left(0) >= u) return d.support().front();
    if (d.cdf_left(hi) < u) return d.support().back();
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (d.cdf_left(mid) >= u) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return d.support()[hi];
}

double inverse_cdf(const ZeroBiasDist& z, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("inverse_cdf: u must be in (0,1)");
    const auto& bp = z.breakpoints();
    // First breakpoint with CDF >= u; the preceding segment is increasing.
    std::size_t lo = 0, hi = bp.size() - 1;
    if (z.cdf_left(hi) < u) return bp.back();
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (z.cdf_left(mid) >= u) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double c = z.densities()[lo];
    if (c <= 0.0) return bp[lo];
    const double t = bp[lo] + (u - z.cdf_left(lo)) / c;
    return std::clamp(t, bp[lo], bp[hi]);
}

}  // namespace meanclt
