#include "doctest.h"

#include <cmath>

#include "brach/errors.hpp"
#include "brach/uniform_field.hpp"
#include "oracles.hpp"

using namespace brach;

TEST_CASE("cycloid passes through the requested endpoint") {
    int cases = 0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double span = 0.01 * std::pow(1000.0, i / 9.0);
            const double drop = j == 0 ? 0.0 : 0.005 * std::pow(2000.0, (j - 1) / 8.0);
            const CycloidSolution c = cycloid_between(span, drop);
            // residuals in extended precision, relative to the problem scale
            const long double phi = c.end_angle, a = c.rolling_radius;
            const double scale = std::max(span, drop);
            CHECK(std::abs(static_cast<double>(a * (phi - std::sin(phi)) - span)) < 1e-12 * scale);
            CHECK(std::abs(static_cast<double>(a * (1 - std::cos(phi)) - drop)) < 1e-12 * scale);
            ++cases;
        }
    }
    CHECK(cases == 100);
}

TEST_CASE("level-endpoint cycloid") {
    const CycloidSolution c = cycloid_between(2 * oracle::pi, 0.0);
    CHECK(c.end_angle == doctest::Approx(2 * oracle::pi));
    CHECK(c.rolling_radius == doctest::Approx(1.0));
    // full arch: 2 pi sqrt(a/g)
    CHECK(cycloid_time(c) == doctest::Approx(2 * oracle::pi));
    CHECK(cycloid_time(c, 4.0) == doctest::Approx(oracle::pi));
    // deepest point 2a at mid-span; depth/span = 1/pi
    CHECK(cycloid_depth_at(c, oracle::pi) == doctest::Approx(2.0));
    CHECK(cycloid_depth_at(c, 0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(cycloid_between(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(cycloid_between(1.0, -1.0), DomainError);
}

TEST_CASE("descent to a lower endpoint is faster than the straight ramp") {
    const CycloidSolution c = cycloid_between(1.0, 1.0);
    const double ramp = 2.0;  // sqrt(2 L / a) with L = sqrt 2, a = 1 / sqrt 2
    CHECK(cycloid_time(c) < ramp);
}

TEST_CASE("small-arc limit") {
    const std::vector<double> seps{0.2, 0.1, 0.05, 0.025};
    std::vector<double> dt, dg;
    for (double s : seps) {
        const auto r = compare_small_arc(s);
        CHECK(r.delta_theta == s);
        CHECK(r.spherical_time < r.cycloid_time);
        dt.push_back(r.relative_time_difference);
        dg.push_back(r.max_geometric_deviation);
    }
    for (std::size_t i = 1; i < seps.size(); ++i) {
        CHECK(dt[i] < dt[i - 1]);
        CHECK(dg[i] < dg[i - 1]);
    }
    CHECK(oracle::log_log_slope(seps, dt) >= 1.0);
    CHECK(oracle::log_log_slope(seps, dg) >= 1.0);
    CHECK(compare_small_arc(0.1).relative_time_difference < 0.01);
    CHECK(compare_small_arc(0.01).relative_time_difference < dt[1]);
    CHECK(compare_small_arc(0.01).max_geometric_deviation < dg[1]);
}

TEST_CASE("small-arc gate") {
    CHECK_THROWS_AS(compare_small_arc(0.3), DomainError);
    CHECK_THROWS_AS(compare_small_arc(0.0), DomainError);
    CHECK_THROWS_AS(compare_small_arc(0.1, 1), InvalidArgument);
}
