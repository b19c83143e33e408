#pragma once

#include <cstddef>
#include <vector>

#include "meanclt/finite_dist.hpp"

namespace meanclt {

/// Distribution with piecewise-constant density / piecewise-linear CDF.
/// Houses zero-bias transforms of finite-support laws; density is constant
/// on each [breakpoints[k], breakpoints[k+1]) and integrates to one.
class ZeroBiasDist {
public:
    /// Validates and builds: breakpoints strictly increasing (length >= 2),
    /// densities nonnegative (length = breakpoints - 1), unit integral within
    /// 1e-12. Densities in [-1e-15, 0) are clamped to zero.
    static ZeroBiasDist from_pieces(std::vector<double> breakpoints,
                                    std::vector<double> densities);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& densities() const { return densities_; }
    std::size_t segments() const { return densities_.size(); }

    double min() const { return breakpoints_.front(); }
    double max() const { return breakpoints_.back(); }

    /// CDF value, linear within segments, clamped to [0,1] outside.
    double cdf(double x) const;

    /// 1 - CDF evaluated from suffix sums, accurate near one.
    double survival(double x) const;

    /// CDF at breakpoints()[i], prefix-accumulated (cdf_left(0) == 0).
    double cdf_left(std::size_t i) const { return cdf_left_[i]; }

    /// Survival at breakpoints()[i], suffix-accumulated (survival(m-1) == 0).
    double survival_right(std::size_t i) const { return surv_right_[i]; }

private:
    ZeroBiasDist() = default;

    std::vector<double> breakpoints_;
    std::vector<double> densities_;
    std::vector<double> cdf_left_;    // prefix masses at breakpoints
    std::vector<double> surv_right_;  // suffix masses at breakpoints
};

/// Zero-bias transform of a centered finite-support law: the distribution
/// with density sigma^{-2} E[X 1(X > x)], constant between support points.
/// Zero-density segments are kept so breakpoints always equal the support.
/// Throws NonCenteredInput (|mean| > 1e-9) or DegenerateDistribution.
ZeroBiasDist zero_bias(const FiniteDist& d);

/// Zero-bias transform of the mixture sum_s w_s components[s] via the
/// variance-tilted weights nu_s = w_s sigma_s^2 / sigma_mu^2. Zero-variance
/// components (point mass at zero) receive nu-weight zero. Throws
/// DegenerateMixture when sigma_mu^2 = 0, NonCenteredComponent otherwise.
ZeroBiasDist zero_bias_mixture(const std::vector<double>& weights,
                               const std::vector<FiniteDist>& components);

/// E|X*| by exact per-segment integration (segments split at zero).
double zb_mean_abs(const ZeroBiasDist& z);

/// E[(X*)^k] by exact per-segment integration, k >= 0.
double zb_power_moment(const ZeroBiasDist& z, int k);

/// Law of a*X* for X* ~ z; a != 0.
ZeroBiasDist scale(const ZeroBiasDist& z, double a);

}  // namespace meanclt
