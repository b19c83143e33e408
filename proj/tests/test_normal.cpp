#include <doctest.h>

#include <cmath>

#include "meanclt/errors.hpp"
#include "meanclt/normal.hpp"

namespace sn = meanclt::stdnormal;

TEST_CASE("cdf reference values and exact symmetry") {
    CHECK(sn::cdf(0.0) == 0.5);
    // Literature values.
    CHECK(sn::cdf(1.0) == doctest::Approx(0.84134474606854293).epsilon(1e-15));
    CHECK(sn::cdf(2.0) == doctest::Approx(0.97724986805182079).epsilon(1e-15));
    CHECK(sn::cdf(-1.96) == doctest::Approx(0.024997895148220435).epsilon(1e-13));

    for (double x = -8.0; x <= 8.0; x += 0.0625)
        CHECK(std::abs(sn::cdf(-x) - (1.0 - sn::cdf(x))) <= 1e-15);

    CHECK(sn::sf(10.0) == doctest::Approx(7.6198530241605945e-24).epsilon(1e-12));
}

TEST_CASE("quantile round trip over the full gate") {
    for (double u : {1e-12, 1e-9, 1e-4, 0.01, 0.2, 0.5, 0.7, 0.99, 1 - 1e-6, 1 - 1e-12}) {
        const double x = sn::quantile(u);
        CHECK(std::abs(sn::cdf(x) - u) <= 1e-13);
    }
    // Dense interior sweep.
    for (int k = 1; k < 2000; ++k) {
        const double u = k / 2000.0;
        CHECK(std::abs(sn::cdf(sn::quantile(u)) - u) <= 1e-13);
    }
    CHECK_THROWS_AS(sn::quantile(0.0), meanclt::DomainError);
    CHECK_THROWS_AS(sn::quantile(1.0), meanclt::DomainError);
    CHECK_THROWS_AS(sn::quantile(-0.5), meanclt::DomainError);
}

TEST_CASE("antiderivative of Phi checked by central differences") {
    const double h = 1e-5;
    for (double x = -6.0; x <= 6.0; x += 0.125) {
        const double deriv = (sn::cdf_antideriv(x + h) - sn::cdf_antideriv(x - h)) / (2 * h);
        CHECK(std::abs(deriv - sn::cdf(x)) <= 1e-8);
        const double deriv_sf = (sn::sf_antideriv(x + h) - sn::sf_antideriv(x - h)) / (2 * h);
        CHECK(std::abs(deriv_sf + sn::sf(x)) <= 1e-8);
    }
    // Known endpoints: Psi(0) = phi(0), and the full integral of 1-Phi over
    // [0, inf) equals phi(0).
    CHECK(sn::cdf_antideriv(0.0) == doctest::Approx(sn::pdf(0.0)).epsilon(1e-15));
    CHECK(sn::sf_antideriv(0.0) == doctest::Approx(sn::pdf(0.0)).epsilon(1e-15));
}
