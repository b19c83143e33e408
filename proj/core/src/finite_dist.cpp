#include "meanclt/finite_dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>

#include "meanclt/errors.hpp"
#include "meanclt/tolerances.hpp"
#include "sum_util.hpp"

namespace meanclt {

namespace {

double merge_tol_for(double lo, double hi) {
    return tol::kMergeRel * std::max(1.0, hi - lo);
}

// Sorts (value, prob) pairs and chains together runs of values whose
// consecutive gaps are within the tolerance. Each run is represented by its
// highest-mass member (no rescaled arithmetic: subnormal tail masses must
// not perturb the support values). Distinct representatives end up
// separated by more than the tolerance.
void sort_and_merge(std::vector<double>& vals, std::vector<double>& probs) {
    const std::size_t n = vals.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

    const double lo = vals[order.front()];
    const double hi = vals[order.back()];
    const double tolerance = merge_tol_for(lo, hi);

    std::vector<double> out_vals;
    std::vector<double> out_probs;
    out_vals.reserve(n);
    out_probs.reserve(n);

    std::size_t i = 0;
    while (i < n) {
        double prev = vals[order[i]];
        double mass = probs[order[i]];
        double rep = prev;
        double rep_mass = mass;
        std::size_t j = i + 1;
        while (j < n && vals[order[j]] - prev <= tolerance) {
            prev = vals[order[j]];
            mass += probs[order[j]];
            if (probs[order[j]] > rep_mass) {
                rep_mass = probs[order[j]];
                rep = prev;
            }
            ++j;
        }
        out_vals.push_back(rep);
        out_probs.push_back(mass);
        i = j;
    }
    vals = std::move(out_vals);
    probs = std::move(out_probs);
}

LatticeInfo detect_lattice(const std::vector<double>& support);

}  // namespace

FiniteDist FiniteDist::from_points(std::vector<double> support, std::vector<double> probs) {
    if (support.empty()) throw InputError("FiniteDist: empty support");
    if (support.size() != probs.size())
        throw InputError("FiniteDist: support/probs length mismatch");
    for (double x : support)
        if (!std::isfinite(x)) throw InputError("FiniteDist: non-finite support point");
    for (double p : probs) {
        if (!std::isfinite(p)) throw InputError("FiniteDist: non-finite probability");
        if (p <= 0.0) throw InputError("FiniteDist: probabilities must be positive");
    }

    sort_and_merge(support, probs);

    detail::NeumaierSum mass;
    for (double p : probs) mass.add(p);
    const double total = mass.value();
    if (std::abs(total - 1.0) > tol::kMassInput)
        throw InputError("FiniteDist: probability mass differs from 1 beyond 1e-9");
    for (double& p : probs) p /= total;

    return FiniteDist(std::move(support), std::move(probs));
}

FiniteDist FiniteDist::point_mass(double x) {
    return from_points({x}, {1.0});
}

FiniteDist::FiniteDist(std::vector<double> support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
    const std::size_t m = support_.size();
    cum_.assign(m, 0.0);
    suf_.assign(m, 0.0);
    detail::NeumaierSum pre;
    for (std::size_t i = 0; i < m; ++i) {
        pre.add(probs_[i]);
        cum_[i] = pre.value();
    }
    detail::NeumaierSum post;
    for (std::size_t i = m - 1; i-- > 0;) {
        post.add(probs_[i + 1]);
        suf_[i] = post.value();
    }
}

double FiniteDist::merge_tolerance() const {
    return merge_tol_for(support_.front(), support_.back());
}

double FiniteDist::cdf(double x) const {
    const auto it = std::upper_bound(support_.begin(), support_.end(), x);
    if (it == support_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

MomentSummary moments(const FiniteDist& d) {
    const auto& x = d.support();
    const auto& p = d.probs();

    detail::NeumaierSum m1;
    for (std::size_t i = 0; i < x.size(); ++i) m1.add(p[i] * x[i]);
    const double mean = m1.value();

    detail::NeumaierSum m2c, m3, a3;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double c = x[i] - mean;
        m2c.add(p[i] * c * c);
        m3.add(p[i] * x[i] * x[i] * x[i]);
        a3.add(p[i] * std::abs(x[i]) * x[i] * x[i]);
    }

    MomentSummary ms;
    ms.mean = mean;
    ms.variance = std::max(0.0, m2c.value());
    ms.third = m3.value();
    ms.abs_third = std::max(std::abs(ms.third), a3.value());
    ms.omega_defined = ms.variance > 0.0;
    ms.omega = ms.omega_defined ? std::abs(ms.third) / (3.0 * ms.variance) : 0.0;
    return ms;
}

namespace {

FiniteDist affine(const FiniteDist& d, double a, double b) {
    std::vector<double> support(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) support[i] = a * d.support()[i] + b;
    return FiniteDist::from_points(std::move(support), d.probs());
}

}  // namespace

FiniteDist standardize(const FiniteDist& d) {
    const MomentSummary ms = moments(d);
    if (ms.variance <= d.merge_tolerance())
        throw DegenerateDistribution("standardize: variance below merge tolerance");
    const double sigma = std::sqrt(ms.variance);
    return affine(d, 1.0 / sigma, -ms.mean / sigma);
}

FiniteDist center(const FiniteDist& d) {
    return affine(d, 1.0, -moments(d).mean);
}

FiniteDist scale(const FiniteDist& d, double a) {
    if (a == 0.0) throw ZeroScale("scale: factor must be nonzero");
    return affine(d, a, 0.0);
}

namespace {

// Real gcd of two positive reals by a tolerance-aware Euclid; returns 0 on
// failure to converge within the iteration cap.
double real_gcd(double a, double b, double tolerance) {
    for (int iter = 0; iter < tol::kLatticeMaxIter; ++iter) {
        if (b < tolerance) return a;
        double r = std::fmod(a, b);
        if (r < tolerance || b - r < tolerance) r = 0.0;
        a = b;
        b = r;
    }
    return 0.0;
}

LatticeInfo detect_lattice(const std::vector<double>& support) {
    LatticeInfo info;
    info.offset = support.front();
    if (support.size() == 1) {
        // A single atom sits on every lattice; span 0 by convention.
        info.is_lattice = true;
        info.span = 0.0;
        return info;
    }

    double max_gap = 0.0;
    for (std::size_t i = 0; i + 1 < support.size(); ++i)
        max_gap = std::max(max_gap, support[i + 1] - support[i]);
    const double tolerance = tol::kLatticeRel * max_gap;

    double g = support[1] - support[0];
    for (std::size_t i = 1; i + 1 < support.size(); ++i) {
        g = real_gcd(std::max(g, support[i + 1] - support[i]),
                     std::min(g, support[i + 1] - support[i]), tolerance);
        if (g == 0.0) return info;
    }

    // Span must index the support with exactly representable integers.
    if ((support.back() - support.front()) / g > 1e15) return info;

    for (double x : support) {
        const double k = std::round((x - info.offset) / g);
        if (std::abs(x - (info.offset + k * g)) > tol::kLatticeRel * g) return info;
    }
    info.is_lattice = true;
    info.span = g;
    return info;
}

// Dense convolution on a shared lattice; exact index arithmetic, no sorting.
// Returns false when the inputs do not live on a commensurate lattice of
// manageable size.
bool convolve_lattice(const FiniteDist& d1, const FiniteDist& d2,
                      std::vector<double>& out_support, std::vector<double>& out_probs) {
    const LatticeInfo l1 = detect_lattice(d1.support());
    const LatticeInfo l2 = detect_lattice(d2.support());
    if (!l1.is_lattice || !l2.is_lattice) return false;

    const double tolerance = tol::kLatticeRel * std::max(l1.span, l2.span);
    const double g = real_gcd(std::max(l1.span, l2.span), std::min(l1.span, l2.span),
                              tolerance);
    if (g <= 0.0) return false;

    const double base = l1.offset + l2.offset;
    const double span_total = (d1.max() + d2.max()) - base;
    const double cells = span_total / g;
    if (!(cells >= 0.0) || cells > 8e6) return false;

    const auto snap = [g](const std::vector<double>& support, double offset,
                          std::vector<std::int64_t>& idx) {
        idx.resize(support.size());
        for (std::size_t i = 0; i < support.size(); ++i) {
            const double k = (support[i] - offset) / g;
            const double kr = std::round(k);
            if (std::abs(k - kr) > 1e-6) return false;
            idx[i] = std::llround(kr);
        }
        return true;
    };
    std::vector<std::int64_t> idx1, idx2;
    if (!snap(d1.support(), l1.offset, idx1) || !snap(d2.support(), l2.offset, idx2))
        return false;

    // Size from the snapped indices themselves; supports are sorted, so the
    // maxima are the last entries.
    const auto size = static_cast<std::size_t>(idx1.back() + idx2.back()) + 1;
    std::vector<double> acc(size, 0.0);
    for (std::size_t i = 0; i < d1.size(); ++i) {
        const double pi = d1.probs()[i];
        for (std::size_t j = 0; j < d2.size(); ++j) {
            const auto k = static_cast<std::size_t>(idx1[i] + idx2[j]);
            acc[k] += pi * d2.probs()[j];
        }
    }

    out_support.clear();
    out_probs.clear();
    for (std::size_t k = 0; k < size; ++k) {
        if (acc[k] >= tol::kProbFloor) {
            out_support.push_back(base + static_cast<double>(k) * g);
            out_probs.push_back(acc[k]);
        }
    }
    return !out_support.empty();
}

}  // namespace

FiniteDist convolve(const FiniteDist& d1, const FiniteDist& d2) {
    if (d1.size() == 1) return affine(d2, 1.0, d1.support()[0]);
    if (d2.size() == 1) return affine(d1, 1.0, d2.support()[0]);

    std::vector<double> support, probs;
    if (convolve_lattice(d1, d2, support, probs))
        return FiniteDist::from_points(std::move(support), std::move(probs));

    const std::size_t pairs = d1.size() * d2.size();
    if (pairs > tol::kMaxConvolvePairs)
        throw SupportBlowup("convolve: pairwise sum count exceeds guard");

    support.reserve(pairs);
    probs.reserve(pairs);
    for (std::size_t i = 0; i < d1.size(); ++i) {
        for (std::size_t j = 0; j < d2.size(); ++j) {
            const double p = d1.probs()[i] * d2.probs()[j];
            if (p < tol::kProbFloor) continue;
            support.push_back(d1.support()[i] + d2.support()[j]);
            probs.push_back(p);
        }
    }
    return FiniteDist::from_points(std::move(support), std::move(probs));
}

FiniteDist normalized_sum(const std::vector<FiniteDist>& components) {
    if (components.empty()) throw DomainError("normalized_sum: no components");

    detail::NeumaierSum total_var;
    for (const auto& c : components) {
        const MomentSummary ms = moments(c);
        if (std::abs(ms.mean) > tol::kMeanZero)
            throw NonCenteredInput("normalized_sum: component mean exceeds 1e-9");
        if (ms.variance <= c.merge_tolerance())
            throw DegenerateDistribution("normalized_sum: component variance is zero");
        total_var.add(ms.variance);
    }
    const double sigma2 = total_var.value();
    if (sigma2 <= 0.0) throw DegenerateDistribution("normalized_sum: zero total variance");

    FiniteDist acc = components.front();
    for (std::size_t i = 1; i < components.size(); ++i) {
        acc = convolve(acc, components[i]);
        if (acc.size() > tol::kMaxSupport)
            throw SupportBlowup("normalized_sum: support exceeds guard");
    }
    return scale(acc, 1.0 / std::sqrt(sigma2));
}

LatticeInfo lattice_span(const FiniteDist& d) {
    return detect_lattice(d.support());
}

FiniteDist mixture_law(const std::vector<double>& weights,
                       const std::vector<FiniteDist>& components) {
    if (weights.size() != components.size() || weights.empty())
        throw DomainError("mixture_law: weights/components mismatch");
    detail::NeumaierSum total;
    for (double w : weights) {
        if (!(w >= 0.0)) throw DomainError("mixture_law: negative weight");
        total.add(w);
    }
    if (std::abs(total.value() - 1.0) > tol::kMassInternal)
        throw DomainError("mixture_law: weights must sum to 1 within 1e-12");

    std::vector<double> support, probs;
    for (std::size_t s = 0; s < weights.size(); ++s) {
        if (weights[s] == 0.0) continue;
        for (std::size_t i = 0; i < components[s].size(); ++i) {
            support.push_back(components[s].support()[i]);
            probs.push_back(weights[s] * components[s].probs()[i]);
        }
    }
    return FiniteDist::from_points(std::move(support), std::move(probs));
}

}  // namespace meanclt
