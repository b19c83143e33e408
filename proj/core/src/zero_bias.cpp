#include "meanclt/zero_bias.hpp"

#include <algorithm>
#include <cmath>

#include "meanclt/errors.hpp"
#include "meanclt/tolerances.hpp"
#include "sum_util.hpp"

namespace meanclt {

ZeroBiasDist ZeroBiasDist::from_pieces(std::vector<double> breakpoints,
                                       std::vector<double> densities) {
    if (breakpoints.size() < 2) throw InputError("ZeroBiasDist: need at least two breakpoints");
    if (densities.size() + 1 != breakpoints.size())
        throw InputError("ZeroBiasDist: densities must have breakpoints-1 entries");
    for (double b : breakpoints)
        if (!std::isfinite(b)) throw InputError("ZeroBiasDist: non-finite breakpoint");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (!(breakpoints[i] < breakpoints[i + 1]))
            throw InputError("ZeroBiasDist: breakpoints must be strictly increasing");
    for (double& c : densities) {
        if (!std::isfinite(c)) throw InputError("ZeroBiasDist: non-finite density");
        if (c < 0.0) {
            if (c < -1e-15) throw InputError("ZeroBiasDist: negative density");
            c = 0.0;
        }
    }

    ZeroBiasDist z;
    z.breakpoints_ = std::move(breakpoints);
    z.densities_ = std::move(densities);

    const std::size_t m = z.breakpoints_.size();
    z.cdf_left_.assign(m, 0.0);
    z.surv_right_.assign(m, 0.0);
    detail::NeumaierSum pre;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        pre.add(z.densities_[i] * (z.breakpoints_[i + 1] - z.breakpoints_[i]));
        z.cdf_left_[i + 1] = pre.value();
    }
    detail::NeumaierSum suf;
    for (std::size_t i = m - 1; i-- > 0;) {
        suf.add(z.densities_[i] * (z.breakpoints_[i + 1] - z.breakpoints_[i]));
        z.surv_right_[i] = suf.value();
    }

    if (std::abs(z.cdf_left_.back() - 1.0) > tol::kMassInternal)
        throw InputError("ZeroBiasDist: density does not integrate to 1 within 1e-12");
    return z;
}

double ZeroBiasDist::cdf(double x) const {
    if (x <= breakpoints_.front()) return 0.0;
    if (x >= breakpoints_.back()) return 1.0;
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    const auto i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return cdf_left_[i] + densities_[i] * (x - breakpoints_[i]);
}

double ZeroBiasDist::survival(double x) const {
    if (x <= breakpoints_.front()) return 1.0;
    if (x >= breakpoints_.back()) return 0.0;
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    const auto i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return surv_right_[i + 1] + densities_[i] * (breakpoints_[i + 1] - x);
}

ZeroBiasDist zero_bias(const FiniteDist& d) {
    const MomentSummary ms = moments(d);
    if (std::abs(ms.mean) > tol::kMeanZero)
        throw NonCenteredInput("zero_bias: |mean| exceeds 1e-9");
    if (ms.variance <= d.merge_tolerance())
        throw DegenerateDistribution("zero_bias: variance is zero");

    const auto& x = d.support();
    const auto& p = d.probs();
    const std::size_t m = x.size();

    // Raw second moment: with it the piecewise integral telescopes to one
    // exactly, since sum_k (a_{k+1}-a_k) E[X 1(X>a_k)] = EX^2 - a_1 EX.
    detail::NeumaierSum raw2;
    for (std::size_t i = 0; i < m; ++i) raw2.add(p[i] * x[i] * x[i]);
    const double sigma2 = raw2.value();

    // Suffix sums T_k = sum_{i>k} x_i p_i = E[X 1(X > x_k)], nonnegative for
    // centered laws.
    std::vector<double> density(m - 1);
    detail::NeumaierSum tail;
    for (std::size_t k = m - 1; k-- > 0;) {
        tail.add(p[k + 1] * x[k + 1]);
        density[k] = std::max(0.0, tail.value()) / sigma2;
    }
    return ZeroBiasDist::from_pieces(x, std::move(density));
}

ZeroBiasDist zero_bias_mixture(const std::vector<double>& weights,
                               const std::vector<FiniteDist>& components) {
    if (weights.size() != components.size() || weights.empty())
        throw DomainError("zero_bias_mixture: weights/components mismatch");
    detail::NeumaierSum wsum;
    for (double w : weights) {
        if (!(w >= 0.0)) throw DomainError("zero_bias_mixture: negative weight");
        wsum.add(w);
    }
    if (std::abs(wsum.value() - 1.0) > tol::kMassInternal)
        throw DomainError("zero_bias_mixture: weights must sum to 1 within 1e-12");

    std::vector<double> variances(components.size());
    detail::NeumaierSum mixture_var;
    for (std::size_t s = 0; s < components.size(); ++s) {
        const MomentSummary ms = moments(components[s]);
        if (std::abs(ms.mean) > tol::kMeanZero)
            throw NonCenteredComponent("zero_bias_mixture: component mean exceeds 1e-9");
        variances[s] = ms.variance;
        mixture_var.add(weights[s] * ms.variance);
    }
    const double sigma_mu2 = mixture_var.value();
    if (sigma_mu2 <= 0.0)
        throw DegenerateMixture("zero_bias_mixture: mixture variance is zero");

    // nu-weights w_s sigma_s^2 / sigma_mu^2; zero-variance components drop out.
    std::vector<double> nu(components.size(), 0.0);
    std::vector<ZeroBiasDist> parts;
    std::vector<std::size_t> part_index;
    for (std::size_t s = 0; s < components.size(); ++s) {
        nu[s] = weights[s] * variances[s] / sigma_mu2;
        if (nu[s] > 0.0) {
            parts.push_back(zero_bias(components[s]));
            part_index.push_back(s);
        }
    }

    std::vector<double> grid;
    for (const auto& z : parts)
        grid.insert(grid.end(), z.breakpoints().begin(), z.breakpoints().end());
    std::sort(grid.begin(), grid.end());
    const double tolerance =
        tol::kMergeRel * std::max(1.0, grid.back() - grid.front());
    std::vector<double> breakpoints;
    for (double g : grid)
        if (breakpoints.empty() || g - breakpoints.back() > tolerance)
            breakpoints.push_back(g);
    if (breakpoints.size() < 2)
        throw DegenerateMixture("zero_bias_mixture: degenerate combined support");

    std::vector<double> density(breakpoints.size() - 1, 0.0);
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        const double mid = 0.5 * (breakpoints[k] + breakpoints[k + 1]);
        double c = 0.0;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            const auto& z = parts[j];
            if (mid <= z.min() || mid >= z.max()) continue;
            const auto it =
                std::upper_bound(z.breakpoints().begin(), z.breakpoints().end(), mid);
            const auto i = static_cast<std::size_t>(it - z.breakpoints().begin()) - 1;
            c += nu[part_index[j]] * z.densities()[i];
        }
        density[k] = c;
    }
    return ZeroBiasDist::from_pieces(std::move(breakpoints), std::move(density));
}

namespace {

// Integral of x^k over [l, r].
double power_integral(double l, double r, int k) {
    const double kk = static_cast<double>(k) + 1.0;
    return (std::pow(r, kk) - std::pow(l, kk)) / kk;
}

}  // namespace

double zb_mean_abs(const ZeroBiasDist& z) {
    detail::NeumaierSum acc;
    for (std::size_t k = 0; k < z.segments(); ++k) {
        const double l = z.breakpoints()[k];
        const double r = z.breakpoints()[k + 1];
        const double c = z.densities()[k];
        if (c == 0.0) continue;
        if (l < 0.0 && r > 0.0) {
            acc.add(c * 0.5 * (l * l + r * r));
        } else {
            acc.add(c * 0.5 * std::abs(r * r - l * l));
        }
    }
    return acc.value();
}

double zb_power_moment(const ZeroBiasDist& z, int k) {
    if (k < 0) throw DomainError("zb_power_moment: k must be >= 0");
    detail::NeumaierSum acc;
    for (std::size_t i = 0; i < z.segments(); ++i) {
        const double c = z.densities()[i];
        if (c == 0.0) continue;
        acc.add(c * power_integral(z.breakpoints()[i], z.breakpoints()[i + 1], k));
    }
    return acc.value();
}

ZeroBiasDist scale(const ZeroBiasDist& z, double a) {
    if (a == 0.0) throw ZeroScale("scale: factor must be nonzero");
    const std::size_t m = z.breakpoints().size();
    std::vector<double> breakpoints(m);
    std::vector<double> density(m - 1);
    const double inv = 1.0 / std::abs(a);
    if (a > 0.0) {
        for (std::size_t i = 0; i < m; ++i) breakpoints[i] = a * z.breakpoints()[i];
        for (std::size_t i = 0; i + 1 < m; ++i) density[i] = z.densities()[i] * inv;
    } else {
        for (std::size_t i = 0; i < m; ++i) breakpoints[i] = a * z.breakpoints()[m - 1 - i];
        for (std::size_t i = 0; i + 1 < m; ++i) density[i] = z.densities()[m - 2 - i] * inv;
    }
    return ZeroBiasDist::from_pieces(std::move(breakpoints), std::move(density));
}

}  // namespace meanclt
