#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "meanclt/finite_dist.hpp"

namespace meanclt {

/// One row of the bound-verification table for the normalized sum of n
/// centered components: the exact L1 distance to the normal, the
/// third-moment bound, the distribution-specific B-weighted bound, and the
/// derived ratios.
struct BoundReport {
    std::int64_t n = 0;
    double w1 = 0.0;        // ||F_n - Phi||_1
    double be_bound = 0.0;  // sigma^{-3} sum E|X_i|^3
    double bg_bound = 0.0;  // sigma^{-3} sum B(G_i) E|X_i|^3
    double ratio_be = 0.0;  // w1 / be_bound
    double ratio_bg = 0.0;  // w1 / bg_bound
    double sqrtn_w1 = 0.0;  // sqrt(n) * w1 (meaningful in the iid case)
    std::optional<double> a_value;  // A(G) in the iid case
};

/// Outcome of a B-functional grid search over three-point laws.
struct SearchResult {
    double best_b = 0.0;
    FiniteDist argmax;
    std::int64_t grid_size = 0;   // admissible laws evaluated
    std::int64_t violations = 0;  // count of B > 1 + 1e-9 (expected 0)
};

/// lo..hi sampled at `steps` points (steps == 1 yields {lo}).
struct GridRange {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1;

    std::vector<double> points() const;
};

/// Grid over three-point laws: mixtures alpha*m1 + (1-alpha)*m0 with m1 the
/// mean-zero two-point law on {x, z} and the middle point chosen so the
/// mixture has variance one, plus direct laws on {x_i, x_j, z} solved for
/// the unique mean-0/variance-1 probabilities.
struct D3GridSpec {
    GridRange x;      // negative support points
    GridRange z;      // positive support points
    GridRange alpha;  // mixture weights in [0,1]
    bool include_direct = true;
};

/// One (p, psi(p)) table with its maximum.
struct LowerBoundSweep {
    std::vector<std::pair<double, double>> rows;
    double max_psi = 0.0;
    double argmax_p = 0.0;
};

/// Law of (X_1 + ... + X_n)/(sigma sqrt(n)) for iid copies of g. Lattice
/// and two-point laws use exact binary-powered convolution; other laws use
/// direct multinomial enumeration. Throws SupportBlowup past the guards.
FiniteDist iid_standardized_sum(const FiniteDist& g, std::int64_t n);

/// Builds the normalized sum of the given centered components, computes
/// ||F_n - Phi||_1 exactly and both bounds of the verification table.
BoundReport verify_bound(const std::vector<FiniteDist>& components);

/// The iid row for n copies of g.
BoundReport verify_bound_iid(const FiniteDist& g, std::int64_t n, bool attach_a = true);

/// One BoundReport per n with a_value = A(g) attached; the schedule must be
/// strictly increasing.
std::vector<BoundReport> asymptotic_sweep(const FiniteDist& g,
                                          const std::vector<std::int64_t>& n_schedule);

/// Exhaustive B evaluation over the grid; deterministic argmax (lowest
/// linear index on ties). Throws EmptyGrid when nothing is admissible.
SearchResult search_d3(const D3GridSpec& grid, int threads = 0);

/// psi(p) on the given grid. Throws DomainError on empty grids or p
/// outside (0,1).
LowerBoundSweep lower_bound_sweep(const std::vector<double>& p_grid, int threads = 0);

/// Random mean-zero variance-one law for property sweeps: support drawn
/// uniform in [-5,5], redrawn until the atoms are separated and the
/// variance is workable, then centered and standardized.
FiniteDist random_standardized_law(std::mt19937_64& rng, int min_points, int max_points);

/// Random mean-zero two-point law with both atoms in [0.1, 10] magnitude.
FiniteDist random_two_point_centered(std::mt19937_64& rng);

}  // namespace meanclt
