#pragma once

#include <cstddef>
#include <vector>

namespace meanclt {

/// Mean, central variance, raw third moments and the Zolotarev omega of a
/// finite-support distribution.
struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;    // E(X - EX)^2
    double third = 0.0;       // EX^3
    double abs_third = 0.0;   // E|X|^3
    double omega = 0.0;       // |EX^3| / (3 variance), valid iff omega_defined
    bool omega_defined = false;
};

/// Result of lattice-span detection: the maximal h with support in offset + h*Z.
struct LatticeInfo {
    bool is_lattice = false;
    double span = 0.0;   // convention: 0 for single-point support
    double offset = 0.0;
};

/// Finite-support probability distribution: strictly increasing support,
/// strictly positive probabilities summing to one.
///
/// Values are immutable after construction; the factory canonicalizes
/// (sorts, merges near-coincident atoms, renormalizes mass within the
/// 1e-9 input gate).
class FiniteDist {
public:
    /// Builds a canonical distribution from raw (support, probs) pairs.
    /// Throws InputError on NaN/Inf, nonpositive probabilities, length
    /// mismatch, empty input, or mass farther than 1e-9 from one.
    static FiniteDist from_points(std::vector<double> support, std::vector<double> probs);

    /// Point mass at x.
    static FiniteDist point_mass(double x);

    const std::vector<double>& support() const { return support_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return support_.size(); }

    double min() const { return support_.front(); }
    double max() const { return support_.back(); }

    /// Absolute atom-merge tolerance for this support scale.
    double merge_tolerance() const;

    /// P(X <= x), right-continuous step CDF.
    double cdf(double x) const;

    /// P(X <= support()[i]), prefix-accumulated.
    double cdf_left(std::size_t i) const { return cum_[i]; }

    /// P(X > support()[i]), suffix-accumulated (accurate near one).
    double survival_right(std::size_t i) const { return suf_[i]; }

    bool operator==(const FiniteDist& o) const {
        return support_ == o.support_ && probs_ == o.probs_;
    }

private:
    FiniteDist(std::vector<double> support, std::vector<double> probs);

    std::vector<double> support_;
    std::vector<double> probs_;
    std::vector<double> cum_;  // prefix masses
    std::vector<double> suf_;  // suffix masses
};

/// Exact weighted moment sums.
MomentSummary moments(const FiniteDist& d);

/// Affine map to mean 0, variance 1: support -> (x - mean)/sigma, probs kept.
/// Throws DegenerateDistribution when the variance is below the merge tolerance.
FiniteDist standardize(const FiniteDist& d);

/// Shifts the distribution so its mean is zero; support -> x - mean.
FiniteDist center(const FiniteDist& d);

/// Law of a*X. Throws ZeroScale when a == 0.
FiniteDist scale(const FiniteDist& d, double a);

/// Law of X + Y for independent X ~ d1, Y ~ d2. Pairwise sums merged within
/// the support tolerance; uses an exact dense path when both laws share a
/// commensurate lattice. Throws SupportBlowup past the pair-count guard.
FiniteDist convolve(const FiniteDist& d1, const FiniteDist& d2);

/// Law of (X_1 + ... + X_n)/sigma with sigma^2 the summed variances.
/// Components must be centered (1e-9) with positive variance.
FiniteDist normalized_sum(const std::vector<FiniteDist>& components);

/// Maximal lattice span via a tolerance-aware Euclid on support gaps.
LatticeInfo lattice_span(const FiniteDist& d);

/// Law of the finite mixture sum_s weights[s] * components[s].
/// Weights must be nonnegative and sum to one within 1e-12.
FiniteDist mixture_law(const std::vector<double>& weights,
                       const std::vector<FiniteDist>& components);

}  // namespace meanclt
