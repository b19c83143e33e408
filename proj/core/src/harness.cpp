#include "meanclt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "meanclt/errors.hpp"
#include "meanclt/functionals.hpp"
#include "meanclt/parallel.hpp"
#include "meanclt/tolerances.hpp"
#include "meanclt/wasserstein.hpp"
#include "sum_util.hpp"

namespace meanclt {

std::vector<double> GridRange::points() const {
    if (steps < 1) throw DomainError("GridRange: steps must be >= 1");
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        pts.push_back(lo);
        return pts;
    }
    const double d = (hi - lo) / static_cast<double>(steps - 1);
    for (int i = 0; i < steps; ++i) pts.push_back(lo + d * static_cast<double>(i));
    return pts;
}

namespace {

// Law of the n-fold sum by binary-powered convolution; the lattice fast
// path inside convolve keeps this exact and small for lattice laws.
FiniteDist power_sum(const FiniteDist& g, std::int64_t n) {
    FiniteDist cur = g;
    std::optional<FiniteDist> acc;
    std::int64_t k = n;
    while (k > 0) {
        if (k & 1) {
            acc = acc ? convolve(*acc, cur) : cur;
            if (acc->size() > tol::kMaxSupport)
                throw SupportBlowup("iid sum: support exceeds guard");
        }
        k >>= 1;
        if (k > 0) {
            cur = convolve(cur, cur);
            if (cur.size() > tol::kMaxSupport)
                throw SupportBlowup("iid sum: support exceeds guard");
        }
    }
    return *acc;
}

// Number of compositions of n into m nonnegative parts, saturating.
double composition_count(std::int64_t n, std::size_t m) {
    double c = 1.0;
    for (std::size_t i = 1; i < m; ++i)
        c *= static_cast<double>(n + static_cast<std::int64_t>(i)) / static_cast<double>(i);
    return c;
}

// Law of the n-fold sum by direct multinomial enumeration; probabilities
// via lgamma in log space. Used for nonlattice laws whose convolution
// support would grow quadratically.
FiniteDist multinomial_sum(const FiniteDist& g, std::int64_t n) {
    const std::size_t m = g.size();
    if (composition_count(n, m) > 3e6)
        throw SupportBlowup("iid sum: multinomial enumeration exceeds guard");

    std::vector<double> logp(m);
    for (std::size_t i = 0; i < m; ++i) logp[i] = std::log(g.probs()[i]);
    const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);

    std::vector<double> support, probs;

    // Iterates all (c_0,...,c_{m-1}) with sum n in lexicographic order.
    const auto emit = [&](auto&& self, std::size_t pos, std::int64_t left, double log_acc,
                          double value) -> void {
        if (pos + 1 == m) {
            const double lp = log_acc + static_cast<double>(left) * logp[pos] -
                              std::lgamma(static_cast<double>(left) + 1.0);
            const double p = std::exp(lg_n + lp);
            if (p >= tol::kProbFloor) {
                support.push_back(value + static_cast<double>(left) * g.support()[pos]);
                probs.push_back(p);
            }
            return;
        }
        for (std::int64_t c = 0; c <= left; ++c) {
            self(self, pos + 1, left - c,
                 log_acc + static_cast<double>(c) * logp[pos] -
                     std::lgamma(static_cast<double>(c) + 1.0),
                 value + static_cast<double>(c) * g.support()[pos]);
        }
    };
    emit(emit, 0, n, 0.0, 0.0);
    return FiniteDist::from_points(std::move(support), std::move(probs));
}

}  // namespace

FiniteDist iid_standardized_sum(const FiniteDist& g, std::int64_t n) {
    if (n < 1) throw DomainError("iid_standardized_sum: n must be >= 1");
    const MomentSummary ms = moments(g);
    if (std::abs(ms.mean) > tol::kMeanZero)
        throw NonCenteredInput("iid_standardized_sum: |mean| exceeds 1e-9");
    if (ms.variance <= g.merge_tolerance())
        throw DegenerateDistribution("iid_standardized_sum: variance is zero");

    const double norm = 1.0 / std::sqrt(ms.variance * static_cast<double>(n));
    if (n == 1) return scale(g, norm);

    const bool powable = g.size() <= 2 || lattice_span(g).is_lattice;
    const FiniteDist sum = powable ? power_sum(g, n) : multinomial_sum(g, n);
    return scale(sum, norm);
}

namespace {

BoundReport make_report(std::int64_t n, const FiniteDist& fn, double sigma2, double sum_abs3,
                        double sum_b_abs3) {
    BoundReport r;
    r.n = n;
    r.w1 = w1_step_normal(fn);
    const double sigma3 = sigma2 * std::sqrt(sigma2);
    r.be_bound = sum_abs3 / sigma3;
    r.bg_bound = sum_b_abs3 / sigma3;
    r.ratio_be = r.w1 / r.be_bound;
    r.ratio_bg = r.w1 / r.bg_bound;
    r.sqrtn_w1 = std::sqrt(static_cast<double>(n)) * r.w1;
    return r;
}

}  // namespace

BoundReport verify_bound(const std::vector<FiniteDist>& components) {
    if (components.empty()) throw DomainError("verify_bound: no components");

    detail::NeumaierSum var_sum, abs3_sum, b_abs3_sum;
    for (const auto& c : components) {
        const MomentSummary ms = moments(c);
        var_sum.add(ms.variance);
        abs3_sum.add(ms.abs_third);
        b_abs3_sum.add(b_functional(c) * ms.abs_third);
    }
    const FiniteDist fn = normalized_sum(components);
    return make_report(static_cast<std::int64_t>(components.size()), fn, var_sum.value(),
                       abs3_sum.value(), b_abs3_sum.value());
}

BoundReport verify_bound_iid(const FiniteDist& g, std::int64_t n, bool attach_a) {
    const MomentSummary ms = moments(g);
    const FiniteDist fn = iid_standardized_sum(g, n);
    const double nn = static_cast<double>(n);
    BoundReport r = make_report(n, fn, nn * ms.variance, nn * ms.abs_third,
                                nn * b_functional(g) * ms.abs_third);
    if (attach_a) r.a_value = a_functional(g);
    return r;
}

std::vector<BoundReport> asymptotic_sweep(const FiniteDist& g,
                                          const std::vector<std::int64_t>& n_schedule) {
    if (n_schedule.empty()) throw DomainError("asymptotic_sweep: empty schedule");
    for (std::size_t i = 0; i + 1 < n_schedule.size(); ++i)
        if (n_schedule[i] >= n_schedule[i + 1])
            throw DomainError("asymptotic_sweep: schedule must be strictly increasing");

    const double a_value = a_functional(g);
    std::vector<BoundReport> rows;
    rows.reserve(n_schedule.size());
    for (std::int64_t n : n_schedule) {
        BoundReport r = verify_bound_iid(g, n, false);
        r.a_value = a_value;
        rows.push_back(r);
    }
    return rows;
}

namespace {

struct GridPoint {
    double b;
    std::int64_t index;
    FiniteDist law;
};

// Mixture member of the grid: alpha * m1{x,z} + (1-alpha) * m0{y,z} with y
// solving for total variance one. Returns nullopt when the triple is not
// admissible.
std::optional<FiniteDist> grid_mixture_law(double x, double z, double alpha) {
    if (!(x < 0.0 && z > 0.0)) return std::nullopt;
    if (alpha < 0.0 || alpha > 1.0) return std::nullopt;
    if (alpha >= 1.0 - 1e-12) {
        // Pure m1: admissible only on the variance-one slice -xz = 1.
        if (std::abs(-x * z - 1.0) > 1e-12) return std::nullopt;
        return FiniteDist::from_points({x, z}, {z / (z - x), -x / (z - x)});
    }
    const double y = (-1.0 / z - alpha * x) / (1.0 - alpha);
    if (!(y > x + 1e-12 && y < -1e-12)) return std::nullopt;
    const double pm1_x = z / (z - x);
    const double pm0_y = z / (z - y);
    if (alpha == 0.0)
        return FiniteDist::from_points({y, z}, {pm0_y, -y / (z - y)});
    return FiniteDist::from_points(
        {x, y, z},
        {alpha * pm1_x, (1.0 - alpha) * pm0_y,
         alpha * (1.0 - pm1_x) + (1.0 - alpha) * (1.0 - pm0_y)});
}

// Direct member: the unique mean-0/variance-1 law on {x, y, z}, when its
// probabilities are strictly positive.
std::optional<FiniteDist> grid_direct_law(double x, double y, double z) {
    if (!(x < y && y < 0.0 && 0.0 < z)) return std::nullopt;
    // Solve [1 1 1; x y z; x^2 y^2 z^2] p = (1, 0, 1) by Cramer's rule.
    const double det = (y - x) * (z - x) * (z - y);
    const double px = (z * y + 1.0) * (z - y) / det;
    const double py = -(z * x + 1.0) * (z - x) / det;
    const double pz = (y * x + 1.0) * (y - x) / det;
    if (!(px > 1e-12 && py > 1e-12 && pz > 1e-12)) return std::nullopt;
    return FiniteDist::from_points({x, y, z}, {px, py, pz});
}

}  // namespace

SearchResult search_d3(const D3GridSpec& grid, int threads) {
    const auto xs = grid.x.points();
    const auto zs = grid.z.points();
    const auto alphas = grid.alpha.points();

    // Enumerate candidate parameter tuples up front; evaluate in parallel.
    struct Candidate {
        double x, y_or_alpha, z;
        bool direct;
    };
    std::vector<Candidate> cand;
    for (double x : xs)
        for (double z : zs)
            for (double a : alphas) cand.push_back({x, a, z, false});
    if (grid.include_direct) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j)
                for (double z : zs) cand.push_back({xs[i], xs[j], z, true});
    }

    std::mutex mu;
    std::optional<GridPoint> best;
    std::int64_t evaluated = 0;
    std::int64_t violations = 0;

    parallel_chunks(cand.size(), threads, [&](std::size_t lo, std::size_t hi) {
        std::optional<GridPoint> local_best;
        std::int64_t local_eval = 0;
        std::int64_t local_viol = 0;
        for (std::size_t k = lo; k < hi; ++k) {
            const auto& c = cand[k];
            const auto law = c.direct ? grid_direct_law(c.x, c.y_or_alpha, c.z)
                                      : grid_mixture_law(c.x, c.z, c.y_or_alpha);
            if (!law) continue;
            const double b = b_functional(*law);
            ++local_eval;
            if (b > 1.0 + tol::kBoundSlack) ++local_viol;
            if (!local_best || b > local_best->b ||
                (b == local_best->b && static_cast<std::int64_t>(k) < local_best->index)) {
                local_best = GridPoint{b, static_cast<std::int64_t>(k), *law};
            }
        }
        const std::lock_guard<std::mutex> lock(mu);
        evaluated += local_eval;
        violations += local_viol;
        if (local_best &&
            (!best || local_best->b > best->b ||
             (local_best->b == best->b && local_best->index < best->index))) {
            best = std::move(local_best);
        }
    });

    if (!best) throw EmptyGrid("search_d3: no admissible grid point");
    return SearchResult{best->b, std::move(best->law), evaluated, violations};
}

LowerBoundSweep lower_bound_sweep(const std::vector<double>& p_grid, int threads) {
    if (p_grid.empty()) throw DomainError("lower_bound_sweep: empty grid");
    for (double p : p_grid)
        if (!(p > 0.0 && p < 1.0))
            throw DomainError("lower_bound_sweep: p must be in (0,1)");

    LowerBoundSweep sweep;
    sweep.rows.resize(p_grid.size());
    parallel_chunks(p_grid.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            sweep.rows[i] = {p_grid[i], psi_lower_bound(p_grid[i])};
    });

    sweep.max_psi = -std::numeric_limits<double>::infinity();
    for (const auto& [p, psi] : sweep.rows) {
        if (psi > sweep.max_psi) {
            sweep.max_psi = psi;
            sweep.argmax_p = p;
        }
    }
    return sweep;
}

FiniteDist random_standardized_law(std::mt19937_64& rng, int min_points, int max_points) {
    if (min_points < 2 || max_points < min_points)
        throw DomainError("random_standardized_law: need max_points >= min_points >= 2");
    std::uniform_int_distribution<int> size_dist(min_points, max_points);
    std::uniform_real_distribution<double> point_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> prob_dist(0.05, 1.0);

    const int m = size_dist(rng);
    for (;;) {
        std::vector<double> support(static_cast<std::size_t>(m));
        for (double& x : support) x = point_dist(rng);
        std::sort(support.begin(), support.end());
        bool separated = true;
        for (std::size_t i = 0; i + 1 < support.size(); ++i)
            if (support[i + 1] - support[i] < 1e-2) separated = false;
        if (!separated) continue;

        std::vector<double> probs(static_cast<std::size_t>(m));
        double total = 0.0;
        for (double& p : probs) {
            p = prob_dist(rng);
            total += p;
        }
        for (double& p : probs) p /= total;

        const FiniteDist raw = FiniteDist::from_points(std::move(support), std::move(probs));
        if (moments(raw).variance < 1e-3) continue;
        return standardize(raw);
    }
}

FiniteDist random_two_point_centered(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> log_mag(std::log(0.1), std::log(10.0));
    const double x = -std::exp(log_mag(rng));
    const double z = std::exp(log_mag(rng));
    return FiniteDist::from_points({x, z}, {z / (z - x), -x / (z - x)});
}

}  // namespace meanclt
