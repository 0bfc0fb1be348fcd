#include "doctest.h"

#include <cmath>

#include "brach/brachistochrone.hpp"
#include "brach/chord.hpp"
#include "brach/errors.hpp"
#include "brach/oracle.hpp"
#include "brach/timing.hpp"
#include "oracles.hpp"

using namespace brach;

TEST_CASE("transcription stations") {
    const auto t = transcription_angles(1.0, 10);
    REQUIRE(t.size() == 12);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == -1.0);
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] < t[i - 1]);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i] == doctest::Approx(-1.0 - t[11 - i]));
}

TEST_CASE("optimizer recovers the closed form without knowing it") {
    for (double sep : {oracle::pi / 6, oracle::pi / 2, 5 * oracle::pi / 6}) {
        const BrachFamily f = family_from_separation(sep);
        const double exact = oracle::closed_transit_time(f.rho_min);
        const OptimizationReport r = optimize_path(sep, 64);
        CHECK(r.converged);
        CHECK(r.first_order_residual < 1e-10);
        CHECK(r.best_time < r.initial_time);
        CHECK(r.best_time - exact > -1e-6);
        CHECK(std::abs(r.best_time - exact) / exact < 5e-3);
        // the optimized radii sit on the analytic curve
        for (const auto& p : r.best_path.points) {
            CHECK(std::abs(p.rho - rho_at_theta(f, p.theta)) < 1e-2);
        }
    }
}

TEST_CASE("optimizer input checks") {
    CHECK_THROWS_AS(optimize_path(0.0, 10), DomainError);
    CHECK_THROWS_AS(optimize_path(oracle::pi, 10), DomainError);
    CHECK_THROWS_AS(optimize_path(1.0, 2), InvalidArgument);
}

TEST_CASE("second variation is non-negative and quadratic") {
    for (double k : {0.5, 1.0, 2.0}) {
        const BrachFamily f = family_from_k(k);
        for (int mode = 1; mode <= 5; ++mode) {
            const double d1 = perturbation_test(f, 1e-3, mode);
            const double d2 = perturbation_test(f, 2e-3, mode);
            CHECK(d1 >= -1e-9);
            CHECK(d2 >= -1e-9);
            CHECK(d2 / d1 == doctest::Approx(4.0).epsilon(0.3 / 4));
        }
    }
    CHECK(perturbation_test(family_from_k(1.0), 0.0, 1) == 0.0);
    CHECK_THROWS_AS(perturbation_test(family_from_k(0.0), 1e-3, 1), DomainError);
    CHECK_THROWS_AS(perturbation_test(family_from_k(1.0), 0.5, 1), DomainError);
    CHECK_THROWS_AS(perturbation_test(family_from_k(1.0), 1e-3, 0), InvalidArgument);
}

TEST_CASE("bead on a chord oscillates with period 2 pi") {
    for (double sep : {0.5, 2.0, oracle::pi}) {
        const auto trace = simulate_bead(chord_path(chord_from_separation(sep), 201));
        CHECK(trace.transit_time == doctest::Approx(oracle::pi).epsilon(1e-6));
        CHECK(trace.max_energy_drift < 1e-8);
        CHECK(trace.tunnel_length == doctest::Approx(2 * std::sin(sep / 2)).epsilon(1e-9));
    }
}

TEST_CASE("bead on the closed-form tunnel") {
    for (double sep : {oracle::pi / 6, oracle::pi / 2, 5 * oracle::pi / 6, oracle::pi}) {
        const BrachFamily f = family_from_separation(sep);
        const auto trace = simulate_bead(sample_path(f, 500));
        const double exact = oracle::closed_transit_time(f.rho_min);
        CHECK(std::abs(trace.transit_time - exact) / exact < 5e-3);
        CHECK(trace.max_energy_drift < 1e-8);
        CHECK(trace.samples.front().tau == 0.0);
        CHECK(trace.samples.back().arclength == doctest::Approx(trace.tunnel_length));
    }
}

TEST_CASE("bead that runs out of time reports a stall") {
    const DiscretePath p = chord_path(chord_from_separation(1.0), 51);
    try {
        simulate_bead(p, {}, 1.0);
        FAIL("expected StalledTrajectoryError");
    } catch (const StalledTrajectoryError& e) {
        CHECK(e.tau() >= 1.0);
        CHECK(e.arclength() > 0.0);
    }
}

TEST_CASE("optimizer near the diameter") {
    // The closed-form tunnel here runs almost radially down theta = 0 and back
    // up theta = -sep, which fixed angular stations cannot follow; only the
    // time and the approach to the centre are checked.
    const double sep = oracle::pi - 1e-3;
    const OptimizationReport r = optimize_path(sep, 64);
    CHECK(r.converged);
    CHECK(r.best_time == doctest::Approx(oracle::pi).epsilon(5e-3));
    CHECK(r.best_time >= total_transit_time(family_from_separation(sep)).tau - 1e-6);
    double deepest = 1.0;
    for (const auto& p : r.best_path.points) deepest = std::min(deepest, p.rho);
    CHECK(deepest < 0.05);
}

TEST_CASE("optimizer started on the closed form stays put") {
    TranscriptionConfig cfg;
    cfg.start = TranscriptionConfig::Start::closed_form;
    const OptimizationReport r = optimize_path(oracle::pi / 2, 64, cfg);
    CHECK(r.converged);
    // the residual at the start is only the discretisation error of the polyline
    CHECK(r.initial_residual < 1e-2);
    CHECK(r.initial_time - r.best_time < 5e-3 * r.best_time);
    CHECK(r.best_time == doctest::Approx(optimize_path(oracle::pi / 2, 64).best_time).epsilon(1e-9));
}

TEST_CASE("second variation is even in the amplitude") {
    const BrachFamily f = family_from_k(1.0);
    for (int mode : {1, 2, 5}) {
        const double plus = perturbation_test(f, 1e-3, mode);
        const double minus = perturbation_test(f, -1e-3, mode);
        CHECK(minus == doctest::Approx(plus).epsilon(2e-2));
    }
    for (double k : {0.5, 1.0, 2.0}) {
        for (int mode = 1; mode <= 5; ++mode) {
            for (double a : {1e-4, 1e-3, 1e-2}) {
                CHECK(perturbation_test(family_from_k(k), a, mode) >= -1e-9);
            }
        }
    }
}

TEST_CASE("bead on a finely sampled tunnel matches quadrature") {
    const BrachFamily f = family_from_k(1.0);
    const auto trace = simulate_bead(sample_path(f, 5000));
    const double exact = total_transit_time(f).tau;
    CHECK(std::abs(trace.transit_time - exact) / exact < 1e-3);
    CHECK(trace.max_energy_drift < 1e-8);
    for (const auto& s : trace.samples) CHECK(s.speed >= 0.0);
}

TEST_CASE("bead rejects a path outside the ball") {
    DiscretePath p;
    p.points = {{1.0, 0.0}, {1.05, -0.1}, {1.0, -0.2}};
    CHECK_THROWS_AS(simulate_bead(p), DomainError);
}
