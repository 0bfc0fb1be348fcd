#include "brach/uniform_field.hpp"

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "brach/brachistochrone.hpp"
#include "brach/errors.hpp"
#include "brach/timing.hpp"

namespace brach {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double solve_bracketed(const auto& f, double lo, double hi) {
    std::uintmax_t iters = 300;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, boost::math::tools::eps_tolerance<double>(), iters);
    return 0.5 * (a + b);
}

// phi - sin(phi) without cancellation for small phi.
double phi_minus_sin(double phi) {
    if (std::abs(phi) > 0.5) return phi - std::sin(phi);
    const double p2 = phi * phi;
    double term = phi * p2 / 6.0, sum = 0.0;
    for (int n = 1; sum + term != sum; ++n) {
        sum += term;
        term *= -p2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
    }
    return sum;
}

}  // namespace

CycloidSolution cycloid_between(double span, double drop) {
    if (std::isnan(span) || !(span > 0.0) || std::isnan(drop) || drop < 0.0 ||
        !std::isfinite(span) || !std::isfinite(drop)) {
        throw DomainError(fmt::format(
            "cycloid_between needs span > 0 and drop >= 0, got span = {}, drop = {}", span, drop));
    }
    CycloidSolution sol;
    sol.horizontal_span = span;
    sol.vertical_drop = drop;
    if (drop == 0.0) {
        sol.end_angle = kTwoPi;
        sol.rolling_radius = span / kTwoPi;
        return sol;
    }
    // (phi - sin phi) drop - (1 - cos phi) span rises through zero exactly once
    // on (0, 2 pi); near zero it behaves like phi^2 (phi drop / 6 - span / 2).
    const auto residual = [&](double phi) {
        const double s = std::sin(0.5 * phi);
        return phi_minus_sin(phi) * drop - 2.0 * s * s * span;
    };
    const double ratio = span / drop;
    const double lo = std::min(1.5 * ratio, 1.0);
    const double phi = solve_bracketed(residual, lo, kTwoPi);
    sol.end_angle = phi;
    sol.rolling_radius = span / phi_minus_sin(phi);
    return sol;
}

double cycloid_time(const CycloidSolution& sol, double field_strength) {
    if (!(sol.rolling_radius > 0.0) || !(sol.end_angle > 0.0) || sol.end_angle > kTwoPi) {
        throw DomainError("cycloid_time: invalid cycloid");
    }
    if (!(field_strength > 0.0)) {
        throw DomainError(fmt::format("field strength must be positive, got {}", field_strength));
    }
    return sol.end_angle * std::sqrt(sol.rolling_radius / field_strength);
}

double cycloid_depth_at(const CycloidSolution& sol, double x) {
    const double a = sol.rolling_radius;
    if (x < -kDomainEpsilon || x > sol.horizontal_span * (1.0 + 1e-12) + kDomainEpsilon) {
        throw DomainError(fmt::format("x = {} outside [0, {}]", x, sol.horizontal_span));
    }
    x = std::clamp(x, 0.0, sol.horizontal_span);
    if (x == 0.0) return 0.0;
    const auto residual = [&](double phi) { return a * phi_minus_sin(phi) - x; };
    const double phi = x >= sol.horizontal_span ? sol.end_angle
                                                : solve_bracketed(residual, 0.0, sol.end_angle);
    const double s = std::sin(0.5 * phi);
    return 2.0 * a * s * s;
}

SmallArcComparison compare_small_arc(double delta_theta, std::size_t samples_per_half) {
    if (std::isnan(delta_theta) || delta_theta <= 0.0 || delta_theta > 0.2) {
        throw DomainError(fmt::format(
            "compare_small_arc is limited to separations in (0, 0.2] rad, got {}; use the "
            "full-sphere tools (time, sweep) for longer tunnels",
            delta_theta));
    }
    const BrachFamily family = family_from_separation(delta_theta);
    const CycloidSolution cycloid = cycloid_between(delta_theta, 0.0);

    SmallArcComparison out;
    out.delta_theta = delta_theta;
    out.spherical_time = total_transit_time(family).tau;
    out.cycloid_time = cycloid_time(cycloid, 1.0);
    out.relative_time_difference =
        std::abs(out.spherical_time - out.cycloid_time) / out.cycloid_time;

    // The cycloid is symmetric about mid-span like the tunnel, so the
    // descending half suffices.
    const DiscretePath path = sample_path(family, samples_per_half);
    double worst = 0.0;
    for (std::size_t i = 0; i <= path.min_index; ++i) {
        const PolarPoint& p = path.points[i];
        const double x = -p.theta;
        const double depth = 1.0 - p.rho;
        worst = std::max(worst, std::abs(depth - cycloid_depth_at(cycloid, x)));
    }
    out.max_geometric_deviation = worst / delta_theta;
    return out;
}

}  // namespace brach
