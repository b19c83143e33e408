#include "meanclt/mixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "meanclt/errors.hpp"
#include "meanclt/tolerances.hpp"
#include "meanclt/wasserstein.hpp"
#include "meanclt/zero_bias.hpp"
#include "sum_util.hpp"

namespace meanclt {

namespace {

// Null vector of the 3 x m moment-constraint matrix [1; a; a^2] by
// Gauss-Jordan with partial pivoting; the free variable is the last
// non-pivot column, set to one. Deterministic: pivot ties break toward the
// lowest column index.
std::vector<double> moment_null_vector(const std::vector<double>& a) {
    const std::size_t m = a.size();
    std::array<std::vector<double>, 3> row;
    row[0].assign(m, 1.0);
    row[1] = a;
    row[2].resize(m);
    for (std::size_t j = 0; j < m; ++j) row[2][j] = a[j] * a[j];

    std::array<std::size_t, 3> pivot_col{};
    std::vector<bool> is_pivot(m, false);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < 3; ++col) {
        std::size_t best = rank;
        for (std::size_t r = rank + 1; r < 3; ++r)
            if (std::abs(row[r][col]) > std::abs(row[best][col])) best = r;
        if (std::abs(row[best][col]) < 1e-13) continue;
        std::swap(row[rank], row[best]);
        const double piv = row[rank][col];
        for (std::size_t j = col; j < m; ++j) row[rank][j] /= piv;
        for (std::size_t r = 0; r < 3; ++r) {
            if (r == rank) continue;
            const double f = row[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j < m; ++j) row[r][j] -= f * row[rank][j];
        }
        pivot_col[rank] = col;
        is_pivot[col] = true;
        ++rank;
    }

    std::size_t free_col = m;
    for (std::size_t j = m; j-- > 0;) {
        if (!is_pivot[j]) {
            free_col = j;
            break;
        }
    }
    if (free_col == m) throw Error("moment_null_vector: no free column");

    std::vector<double> v(m, 0.0);
    v[free_col] = 1.0;
    for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -row[r][free_col];
    return v;
}

struct WeightedLaw {
    double weight;
    FiniteDist law;
};

void split_to_d3(const std::vector<double>& support, const std::vector<double>& probs,
                 double weight, int depth, std::vector<WeightedLaw>& out) {
    if (depth > tol::kMaxSplitDepth)
        throw MixtureBlowup("reduce_to_d3: recursion depth cap exceeded");
    if (support.size() <= 3) {
        out.push_back({weight, FiniteDist::from_points(support, probs)});
        return;
    }

    const std::vector<double> v = moment_null_vector(support);

    // Hitting times of the probability simplex faces along +-v.
    double t1 = 0.0, t2 = 0.0;
    std::size_t hit1 = support.size(), hit2 = support.size();
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (v[i] < 0.0) {
            const double t = probs[i] / (-v[i]);
            if (hit1 == support.size() || t < t1) {
                t1 = t;
                hit1 = i;
            }
        } else if (v[i] > 0.0) {
            const double t = probs[i] / v[i];
            if (hit2 == support.size() || t < t2) {
                t2 = t;
                hit2 = i;
            }
        }
    }
    if (hit1 == support.size() || hit2 == support.size())
        throw Error("reduce_to_d3: null vector lacks a sign change");

    std::vector<double> s1, p1, s2, p2;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const double q1 = i == hit1 ? 0.0 : probs[i] + t1 * v[i];
        const double q2 = i == hit2 ? 0.0 : probs[i] - t2 * v[i];
        if (q1 > 1e-15) {
            s1.push_back(support[i]);
            p1.push_back(q1);
        }
        if (q2 > 1e-15) {
            s2.push_back(support[i]);
            p2.push_back(q2);
        }
    }

    const double w1 = weight * t2 / (t1 + t2);
    const double w2 = weight * t1 / (t1 + t2);
    split_to_d3(s1, p1, w1, depth + 1, out);
    split_to_d3(s2, p2, w2, depth + 1, out);
}

bool same_support(const FiniteDist& a, const FiniteDist& b) {
    if (a.size() != b.size()) return false;
    const double tolerance = std::max(a.merge_tolerance(), b.merge_tolerance());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a.support()[i] - b.support()[i]) > tolerance) return false;
    return true;
}

// Unique mean-zero two-point law on {lo, hi}, lo < 0 < hi.
FiniteDist two_point_centered(double lo, double hi) {
    return FiniteDist::from_points({lo, hi}, {hi / (hi - lo), -lo / (hi - lo)});
}

}  // namespace

MixtureDecomposition reduce_to_d3(const FiniteDist& d) {
    const MomentSummary ms = moments(d);
    if (std::abs(ms.mean) > tol::kMeanZero || std::abs(ms.variance - 1.0) > tol::kMeanZero)
        throw NotStandardized("reduce_to_d3: input must be mean 0, variance 1 within 1e-9");

    std::vector<WeightedLaw> parts;
    split_to_d3(d.support(), d.probs(), 1.0, 0, parts);

    // Merge duplicates (identical support implies identical probabilities,
    // since the mean-0/variance-1 law on <= 3 fixed atoms is unique), then
    // drop negligible weights.
    std::vector<WeightedLaw> merged;
    for (auto& part : parts) {
        bool found = false;
        for (auto& existing : merged) {
            if (same_support(existing.law, part.law)) {
                existing.weight += part.weight;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(std::move(part));
    }

    MixtureDecomposition out;
    detail::NeumaierSum kept;
    for (auto& part : merged) {
        if (part.weight < tol::kWeightDrop) continue;
        kept.add(part.weight);
        out.weights.push_back(part.weight);
        out.components.push_back(std::move(part.law));
    }
    const double total = kept.value();
    for (double& w : out.weights) w /= total;
    return out;
}

MixtureDecomposition two_point_mixture(const FiniteDist& d) {
    const MomentSummary ms = moments(d);
    if (std::abs(ms.mean) > tol::kMeanZero)
        throw NonCenteredInput("two_point_mixture: |mean| exceeds 1e-9");
    const double atom_tol = d.merge_tolerance();
    for (double x : d.support())
        if (std::abs(x) <= atom_tol)
            throw AtomAtZero("two_point_mixture: support point at zero");
    if (d.support().front() >= 0.0 || d.support().back() <= 0.0)
        throw OneSidedSupport("two_point_mixture: need mass on both sides of zero");

    std::vector<double> residual = d.probs();
    std::size_t i = 0;
    std::size_t j = d.size() - 1;

    MixtureDecomposition out;
    while (i < j && d.support()[i] < 0.0 && d.support()[j] > 0.0) {
        const double x = d.support()[i];
        const double z = d.support()[j];
        const double mass_x = z / (z - x);
        const double mass_z = -x / (z - x);
        const double w_exhaust_neg = residual[i] / mass_x;
        const double w_exhaust_pos = residual[j] / mass_z;
        const double w = std::min(w_exhaust_neg, w_exhaust_pos);
        if (w > tol::kWeightDrop) {
            out.weights.push_back(w);
            out.components.push_back(two_point_centered(x, z));
        }
        if (w_exhaust_neg <= w_exhaust_pos) {
            residual[i] = 0.0;
            residual[j] = std::max(0.0, residual[j] - w * mass_z);
            ++i;
        }
        if (w_exhaust_pos <= w_exhaust_neg) {
            residual[j] = 0.0;
            if (w_exhaust_neg > w_exhaust_pos)
                residual[i] = std::max(0.0, residual[i] - w * mass_x);
            --j;
        }
    }

    detail::NeumaierSum leftover;
    for (double r : residual) leftover.add(r);
    if (leftover.value() > 1e-9)
        throw Error("two_point_mixture: residual mass not exhausted");

    detail::NeumaierSum total;
    for (double w : out.weights) total.add(w);
    for (double& w : out.weights) w /= total.value();
    return out;
}

ThreePointSplit three_point_split(const FiniteDist& d) {
    if (d.size() != 3) throw WrongSupportSize("three_point_split: need exactly 3 atoms");
    const MomentSummary ms = moments(d);
    if (std::abs(ms.mean) > tol::kMeanZero)
        throw NonCenteredInput("three_point_split: |mean| exceeds 1e-9");
    const double middle = d.support()[1];
    if (std::abs(middle) <= d.merge_tolerance())
        throw ZeroMiddlePoint("three_point_split: middle support point is zero");

    const bool reflected = middle > 0.0;
    const FiniteDist canon = reflected ? scale(d, -1.0) : d;

    const double x = canon.support()[0];
    const double y = canon.support()[1];
    const double z = canon.support()[2];
    const double px = canon.probs()[0];

    // alpha = P(X=x) / m1({x}) with m1 the mean-zero law on {x, z}.
    const double alpha = px * (z - x) / z;
    const double beta = alpha * x / (alpha * x + (1.0 - alpha) * y);

    return ThreePointSplit{alpha, beta, two_point_centered(x, z), two_point_centered(y, z),
                           reflected};
}

double qp_inequality_gap(double x, double y, double z) {
    if (!(x < y && y < 0.0 && 0.0 < z))
        throw OrderingViolation("qp_inequality_gap: need x < y < 0 < z");

    const FiniteDist m1 = two_point_centered(x, z);
    const FiniteDist m0 = two_point_centered(y, z);
    const ZeroBiasDist m1_star = zero_bias(m1);

    const double constructive =
        w1_step_pwl(m1, m1_star) - w1_step_pwl(m0, m1_star);

    // Branch on F_1*(y) <= F_0(y), equivalently y(x+z) <= y^2 + z^2.
    double closed_form;
    if (y * (x + z) <= y * y + z * z) {
        closed_form = -y * (y - x) * (y * y + 2.0 * z * z - y * (x + 2.0 * z)) /
                      ((z - x) * (z - y) * (z - y));
    } else {
        closed_form = (z * z + x * x) / (2.0 * (z - x)) + 0.5 * (x + z);
    }

    if (std::abs(constructive - closed_form) > tol::kRouteAgreement)
        throw Error("qp_inequality_gap: closed-form and constructive routes disagree");
    return closed_form;
}

CouplingCheck coupling_bound_check(const ThreePointSplit& split) {
    const double alpha = split.alpha;
    const double beta = split.beta;
    if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0))
        throw DomainError("coupling_bound_check: weights outside [0,1]");

    const std::vector<double> weights{alpha, 1.0 - alpha};
    const std::vector<FiniteDist> comps{split.m1, split.m0};

    const FiniteDist m_alpha = mixture_law(weights, comps);
    const ZeroBiasDist m_alpha_star = zero_bias_mixture(weights, comps);

    const ZeroBiasDist m1_star = zero_bias(split.m1);
    const ZeroBiasDist m0_star = zero_bias(split.m0);
    const double w11 = w1_step_pwl(split.m1, m1_star);
    const double w00 = w1_step_pwl(split.m0, m0_star);
    const double w10 = w1_step_pwl(split.m0, m1_star);

    CouplingCheck check;
    check.lhs = w1_step_pwl(m_alpha, m_alpha_star);
    check.rhs = alpha * w11 + (1.0 - beta) * w00 + (beta - alpha) * w10;

    if (check.lhs > check.rhs + 1e-12)
        throw Error("coupling_bound_check: coupling bound violated");
    const double fit = beta * w11 + (1.0 - beta) * w00;
    if (check.rhs > fit + 1e-12)
        throw Error("coupling_bound_check: rhs exceeds the moment-ratio value");
    return check;
}

}  // namespace meanclt
