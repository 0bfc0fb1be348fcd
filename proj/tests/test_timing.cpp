#include "doctest.h"

#include <cmath>

#include "brach/brachistochrone.hpp"
#include "brach/chord.hpp"
#include "brach/errors.hpp"
#include "brach/quadrature.hpp"
#include "brach/timing.hpp"
#include "oracles.hpp"

using namespace brach;

TEST_CASE("adaptive Gauss-Kronrod on smooth and weakly singular integrands") {
    const auto r1 = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(r1.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    CHECK(r1.error_estimate < 1e-10);
    const auto r2 = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0);
    CHECK(r2.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    const auto r3 = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, oracle::pi);
    CHECK(r3.value == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("quadrature failures are reported") {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 20;
    try {
        integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, cfg);
        FAIL("expected NumericError");
    } catch (const NumericError& e) {
        CHECK(e.worst_lo() == 0.0);
        CHECK(e.worst_hi() > 0.0);
    }
    CHECK_THROWS_AS(integrate_adaptive([](double) { return std::nan(""); }, 0.0, 1.0),
                    NumericError);
    cfg.max_subdivisions = 0;
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 0.0, 1.0, cfg),
                    InvalidArgument);
}

TEST_CASE("transit time equals pi sqrt(1 - rho_min^2)") {
    for (double k : oracle::log_spaced(0.05, 20.0, 20)) {
        const BrachFamily f = family_from_k(k);
        const auto t = total_transit_time(f);
        CHECK(std::abs(t.tau - oracle::closed_transit_time(oracle::true_rho_min(k))) < 1e-7);
        CHECK(t.error_estimate < 1e-8);
        CHECK(half_transit_time(f).tau == doctest::Approx(t.tau / 2));
    }
    CHECK(total_transit_time(family_from_k(0.0)).tau == doctest::Approx(oracle::pi).epsilon(1e-15));
}

TEST_CASE("extremal beats the chord") {
    for (double sep : {0.1, 1.0, oracle::pi / 2, 3.0}) {
        CHECK(total_transit_time(family_from_separation(sep)).tau < oracle::pi);
    }
}

TEST_CASE("segment timing guards") {
    DiscretePath p;
    p.points = {{1.0, 0.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(segment_times(p), DegenerateSegmentError);
    p.points = {{1.0, 0.0}, {1.0, -0.1}};
    CHECK_THROWS_AS(segment_times(p), InfiniteTimeError);
    p.points = {{1.0, 0.0}, {0.5, -0.2}, {0.5, -0.2}, {1.0, -0.4}};
    const auto t = segment_times(p);
    CHECK(t[1] == 0.0);  // repeated interior point costs nothing
}

TEST_CASE("polyline time of the sampled tunnel converges from above") {
    for (double sep : {oracle::pi / 6, oracle::pi / 2, 5 * oracle::pi / 6}) {
        const double exact = total_transit_time(family_from_separation(sep)).tau;
        double previous = 1e9;
        for (std::size_t n : {50u, 200u, 800u, 3200u}) {
            const double tau = path_transit_time(sample_path(family_from_separation(sep), n)).tau;
            CHECK(tau >= exact - 1e-12);
            CHECK(tau - exact < previous);
            previous = tau - exact;
        }
        CHECK(previous / exact < 1e-5);
    }
}

TEST_CASE("polyline error estimate tracks the discretisation error") {
    const DiscretePath p = chord_path(chord_from_separation(1.0), 1001);
    const auto r = path_transit_time(p);
    CHECK(r.error_estimate > 0.0);
    CHECK(std::abs(r.tau - oracle::pi) < 2.0 * r.error_estimate);
}

TEST_CASE("polyline and quadrature agree on finely sampled tunnels") {
    for (double k : {0.25, 1.0, 4.0}) {
        const BrachFamily f = family_from_k(k);
        const double exact = total_transit_time(f).tau;
        const double tau = path_transit_time(sample_path(f, 10000)).tau;
        CHECK(std::abs(tau - exact) / exact < 1e-4);
    }
}

TEST_CASE("transit time falls as k grows and meets the chord at the diameter") {
    double previous = INFINITY;
    for (double k : oracle::log_spaced(1e-3, 1e3, 60)) {
        const double tau = total_transit_time(family_from_k(k)).tau;
        CHECK(tau < previous);
        previous = tau;
    }
    CHECK(std::abs(total_transit_time(family_from_separation(oracle::pi)).tau - oracle::pi) < 1e-9);
}

TEST_CASE("shared singular integrals") {
    const BrachFamily diameter = family_from_k(0.0);
    CHECK(arc_integral(diameter, Integrand::length).tau == 1.0);
    CHECK(arc_integral(diameter, Integrand::time).tau == doctest::Approx(oracle::pi / 2));
    const BrachFamily f = family_from_k(1.0);
    CHECK(arc_integral(f, Integrand::time).tau == half_transit_time(f).tau);
    CHECK(2.0 * arc_integral(f, Integrand::length).tau == doctest::Approx(arc_length(f)));
    CHECK(total_transit_time(f).tau == doctest::Approx(oracle::pi / std::sqrt(2.0)).epsilon(1e-12));
}
