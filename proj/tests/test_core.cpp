#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "brach/core.hpp"
#include "brach/errors.hpp"

using namespace brach;

TEST_CASE("speed follows zero-energy release from the surface") {
    CHECK(speed_at_radius(1.0) == 0.0);
    CHECK(speed_at_radius(0.0) == 1.0);
    for (double rho : {0.1, 0.3, 0.5, 0.77, 0.99}) {
        const double nu = speed_at_radius(rho);
        CHECK(nu == doctest::Approx(std::sqrt(1.0 - rho * rho)).epsilon(1e-15));
        // kinetic + potential stays at the release value of zero
        CHECK(0.5 * nu * nu + potential_per_mass(rho) == doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("force is the negative gradient of the potential") {
    double worst = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double rho = i / 1001.0;
        const double h = 1e-6 * std::min(rho, 1.0 - rho);
        const double dv = (potential_per_mass(rho + h) - potential_per_mass(rho - h)) / (2 * h);
        worst = std::max(worst, std::abs(-dv - radial_acceleration(rho)));
    }
    CHECK(worst < 1e-6);
    CHECK(potential_per_mass(1.0) == 0.0);
}

TEST_CASE("radius outside the ball is rejected") {
    CHECK_THROWS_AS(speed_at_radius(1.1), DomainError);
    CHECK_THROWS_AS(speed_at_radius(-0.1), DomainError);
    CHECK_THROWS_AS(speed_at_radius(std::nan("")), DomainError);
    // round-off just past the surface is clamped
    CHECK(speed_at_radius(1.0 + 1e-14) == 0.0);
}

TEST_CASE("Earth scaling") {
    const Scaling s = make_scaling(kEarth);
    CHECK(s.time_unit == doctest::Approx(std::sqrt(6.371e6 / 9.80665)));
    CHECK(s.speed_unit == doctest::Approx(std::sqrt(6.371e6 * 9.80665)));
    CHECK(s.length_unit == 6.371e6);
    // half a gravity-elevator period: about 42 minutes
    CHECK(dimensional_time(std::numbers::pi, s) / 60.0 == doctest::Approx(42.2).epsilon(1e-3));
    CHECK_THROWS_AS(make_scaling({-1.0, 9.8}), DomainError);
    CHECK_THROWS_AS(make_scaling({1.0, 0.0}), DomainError);
}

TEST_CASE("latitude maps to polar angle") {
    CHECK(latitude_to_polar(0.0) == doctest::Approx(std::numbers::pi / 2));
    CHECK(latitude_to_polar(std::numbers::pi / 2) == doctest::Approx(0.0));
    CHECK_THROWS_AS(latitude_to_polar(2.0), DomainError);
    double previous = INFINITY;
    for (int i = 0; i <= 100; ++i) {
        const double theta = latitude_to_polar(-std::numbers::pi / 2 + std::numbers::pi * i / 100);
        CHECK(theta < previous);
        CHECK(theta >= 0.0);
        CHECK(theta <= std::numbers::pi);
        previous = theta;
    }
}

TEST_CASE("path validation") {
    DiscretePath p;
    p.points = {{1.0, 0.0}};
    CHECK_THROWS_AS(validate_path(p), InvalidArgument);
    p.points = {{1.0, 0.0}, {1.2, -0.1}};
    CHECK_THROWS_AS(validate_path(p), DomainError);
    p.points = {{1.0, 0.0}, {0.5, std::numeric_limits<double>::infinity()}};
    CHECK_THROWS_AS(validate_path(p), DomainError);
    p.points = {{1.0, 0.0}, {0.5, -0.3}, {1.0, -0.6}};
    CHECK_NOTHROW(validate_path(p));
}
