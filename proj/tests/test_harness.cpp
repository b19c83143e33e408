#include <doctest.h>

#include <cmath>
#include <random>

#include "meanclt/errors.hpp"
#include "meanclt/finite_dist.hpp"
#include "meanclt/functionals.hpp"
#include "meanclt/harness.hpp"
#include "meanclt/wasserstein.hpp"
#include "oracles.hpp"

using namespace meanclt;
namespace mt = meanclt::testing;

namespace {

FiniteDist rademacher() { return FiniteDist::from_points({-1.0, 1.0}, {0.5, 0.5}); }

}  // namespace

TEST_CASE("iid_standardized_sum matches plain convolution") {
    std::mt19937_64 rng(31415);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = random_standardized_law(rng, 2, 4);
        const auto direct = normalized_sum(std::vector<FiniteDist>(3, g));
        const auto powered = iid_standardized_sum(g, 3);
        CHECK(w1_step_step(direct, powered) <= 1e-10);
    }
    // Multinomial path (nonlattice three-point) against plain convolution.
    const auto three = mt::nonlattice_zero_third_moment();
    const auto centered = standardize(three);
    for (int n : {4, 16}) {
        const auto direct =
            normalized_sum(std::vector<FiniteDist>(static_cast<std::size_t>(n), centered));
        const auto multinomial = iid_standardized_sum(centered, n);
        CHECK(w1_step_step(direct, multinomial) <= 1e-9);
    }
}

TEST_CASE("verify_bound: Bernoulli n=1 row and small binomial rows") {
    const auto row = verify_bound({rademacher()});
    CHECK(row.n == 1);
    CHECK(row.w1 == doctest::Approx(mt::psi_half_closed_form()).epsilon(1e-12));
    CHECK(row.be_bound == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(row.ratio_be == doctest::Approx(0.5354).epsilon(1e-3));

    const auto row16 = verify_bound_iid(rademacher(), 16);
    CHECK(row16.w1 <= 0.25);
    CHECK(row16.ratio_be <= 1.0 + 1e-9);
    REQUIRE(row16.a_value.has_value());
    CHECK(*row16.a_value == doctest::Approx(0.5).epsilon(1e-12));

    // All three components are two-point laws (B = 1), so both bounds and
    // both ratios coincide.
    const auto mixed = verify_bound(
        {rademacher(), bernoulli_standardized(0.3),
         FiniteDist::from_points({-1.0, 2.0}, {2.0 / 3.0, 1.0 / 3.0})});
    CHECK(mixed.ratio_bg == doctest::Approx(mixed.ratio_be).epsilon(1e-12));
    CHECK(mixed.ratio_be <= 1.0 + 1e-9);
    CHECK(mixed.ratio_bg <= 1.0 + 1e-9);
    CHECK(mixed.bg_bound <= mixed.be_bound + 1e-12);
}

TEST_CASE("asymptotic_sweep approaches A(G)") {
    const auto rows = asymptotic_sweep(rademacher(), {4, 16, 64, 256, 1024, 4096});
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
        REQUIRE(r.a_value.has_value());
        CHECK(*r.a_value == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(std::abs(rows.back().sqrtn_w1 - 0.5) <= 0.02);

    // Nonlattice with vanishing third moment: sqrt(n) w1 -> A = 0.
    const auto three = standardize(mt::nonlattice_zero_third_moment());
    const auto rows3 = asymptotic_sweep(three, {16, 64, 256, 1024});
    REQUIRE(rows3.back().a_value.has_value());
    CHECK(*rows3.back().a_value <= 1e-15);
    CHECK(rows3.back().sqrtn_w1 <= 0.05);

    // Cross-module consistency: the limit equals the Zolotarev ratio times
    // E|X|^3 / sigma^3.
    const auto asym = standardize(
        FiniteDist::from_points({-1.0, 2.0}, {2.0 / 3.0, 1.0 / 3.0}));
    const auto rows2 = asymptotic_sweep(asym, {64, 256, 1024, 4096});
    const auto ms = moments(asym);
    const double predicted = zolotarev_ratio(asym) * ms.abs_third /
                             (ms.variance * std::sqrt(ms.variance));
    REQUIRE(rows2.back().a_value.has_value());
    CHECK(*rows2.back().a_value == doctest::Approx(predicted).epsilon(1e-9));
    CHECK(std::abs(rows2.back().sqrtn_w1 - *rows2.back().a_value) <= 0.03);

    CHECK_THROWS_AS(asymptotic_sweep(rademacher(), {4, 4}), DomainError);
    CHECK_THROWS_AS(asymptotic_sweep(rademacher(), {}), DomainError);
}

TEST_CASE("search_d3: pure two-point rows reach B = 1, no violations") {
    D3GridSpec spec;
    spec.x = {-3.0, -0.2, 12};
    spec.z = {0.2, 3.0, 12};
    spec.alpha = {0.0, 1.0, 9};
    const auto result = search_d3(spec, 2);
    CHECK(result.violations == 0);
    CHECK(result.grid_size > 0);
    CHECK(result.best_b == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.best_b <= 1.0 + 1e-9);

    // Deterministic across thread counts.
    const auto serial = search_d3(spec, 1);
    CHECK(serial.best_b == result.best_b);
    CHECK(serial.grid_size == result.grid_size);
    CHECK(w1_step_step(serial.argmax, result.argmax) <= 1e-15);

    D3GridSpec empty;
    empty.x = {1.0, 2.0, 3};  // positive x never admissible
    empty.z = {0.5, 1.0, 2};
    empty.alpha = {0.2, 0.8, 2};
    empty.include_direct = false;
    CHECK_THROWS_AS(search_d3(empty, 1), EmptyGrid);
}

TEST_CASE("lower_bound_sweep: constant, symmetry, grid maximum") {
    const auto single = lower_bound_sweep({0.5}, 1);
    CHECK(single.max_psi == doctest::Approx(mt::psi_half_closed_form()).epsilon(1e-12));

    const auto pair = lower_bound_sweep({0.3, 0.7}, 1);
    CHECK(pair.rows[0].second == doctest::Approx(pair.rows[1].second).epsilon(1e-13));

    std::vector<double> grid;
    for (int k = 1; k <= 999; ++k) grid.push_back(k / 1000.0);
    const auto sweep = lower_bound_sweep(grid, 4);
    CHECK(sweep.argmax_p == doctest::Approx(0.5));
    CHECK(sweep.max_psi >= 0.535377 - 1e-5);

    CHECK_THROWS_AS(lower_bound_sweep({}, 1), DomainError);
    CHECK_THROWS_AS(lower_bound_sweep({0.0}, 1), DomainError);
}

TEST_CASE("random component lists never violate either bound") {
    std::mt19937_64 rng(161803);
    std::uniform_int_distribution<int> count(1, 6);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<FiniteDist> comps;
        const int k = count(rng);
        for (int i = 0; i < k; ++i) comps.push_back(random_standardized_law(rng, 2, 5));
        const auto r = verify_bound(comps);
        CHECK(r.ratio_be <= 1.0 + 1e-9);
        CHECK(r.ratio_bg <= 1.0 + 1e-9);
        CHECK(r.bg_bound <= r.be_bound + 1e-12);
        CHECK(r.ratio_be <= r.ratio_bg + 1e-15);
    }
}

TEST_CASE("running c_m envelope is nonincreasing for fixed laws") {
    // max over n >= m of sqrt(n) w1 sigma^3 / E|X|^3, evaluated on a
    // doubling schedule: nonincreasing in m, and the n=1 Bernoulli(1/2)
    // value brackets the all-n constant from below.
    const std::vector<std::int64_t> ns{1, 2, 4, 8, 16, 32, 64, 128, 256};
    double overall_max = 0.0;
    for (const auto& g :
         {rademacher(), bernoulli_standardized(0.35),
          standardize(FiniteDist::from_points({-1.0, 2.0}, {2.0 / 3.0, 1.0 / 3.0}))}) {
        const auto ms = moments(g);
        const double norm = ms.variance * std::sqrt(ms.variance) / ms.abs_third;
        std::vector<double> vals;
        for (auto n : ns) vals.push_back(verify_bound_iid(g, n, false).sqrtn_w1 * norm);
        double running = 0.0;
        std::vector<double> envelope(vals.size());
        for (std::size_t i = vals.size(); i-- > 0;) {
            running = std::max(running, vals[i]);
            envelope[i] = running;
        }
        for (std::size_t i = 0; i + 1 < envelope.size(); ++i)
            CHECK(envelope[i + 1] <= envelope[i] + 1e-12);
        CHECK(envelope[0] <= 1.0 + 1e-9);
        overall_max = std::max(overall_max, envelope[0]);
    }
    CHECK(overall_max >= 0.5353);
}

TEST_CASE("random law generators meet their contracts") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = random_standardized_law(rng, 2, 7);
        const auto ms = moments(d);
        CHECK(std::abs(ms.mean) <= 1e-12);
        CHECK(std::abs(ms.variance - 1.0) <= 1e-12);
        CHECK(d.size() >= 2);
        CHECK(d.size() <= 7);

        const auto two = random_two_point_centered(rng);
        CHECK(two.size() == 2);
        CHECK(std::abs(moments(two).mean) <= 1e-12);
    }
}
