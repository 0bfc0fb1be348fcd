#include "brach/core.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numbers>

#include "brach/errors.hpp"

namespace brach {

Scaling make_scaling(const PhysicalParams& params) {
    if (!(params.radius_m > 0.0) || !std::isfinite(params.radius_m)) {
        throw DomainError(fmt::format("radius must be positive, got {}", params.radius_m));
    }
    if (!(params.gravity_mps2 > 0.0) || !std::isfinite(params.gravity_mps2)) {
        throw DomainError(
            fmt::format("surface gravity must be positive, got {}", params.gravity_mps2));
    }
    Scaling s;
    s.time_unit = std::sqrt(params.radius_m / params.gravity_mps2);
    s.speed_unit = std::sqrt(params.gravity_mps2 * params.radius_m);
    s.length_unit = params.radius_m;
    return s;
}

double checked_radius(double rho, const char* what) {
    if (std::isnan(rho) || rho < -kDomainEpsilon || rho > 1.0 + kDomainEpsilon) {
        throw DomainError(fmt::format("{}: rho = {} outside [0, 1]", what, rho));
    }
    return std::clamp(rho, 0.0, 1.0);
}

double speed_at_radius(double rho) {
    rho = checked_radius(rho, "speed_at_radius");
    // (1-rho)(1+rho) keeps full precision next to the surface.
    return std::sqrt((1.0 - rho) * (1.0 + rho));
}

double potential_per_mass(double rho) {
    rho = checked_radius(rho, "potential_per_mass");
    return -0.5 * (1.0 - rho) * (1.0 + rho);
}

double radial_acceleration(double rho) {
    return -checked_radius(rho, "radial_acceleration");
}

double latitude_to_polar(double lambda) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (std::isnan(lambda) || lambda < -half_pi - kDomainEpsilon ||
        lambda > half_pi + kDomainEpsilon) {
        throw DomainError(fmt::format("latitude {} rad outside [-pi/2, pi/2]", lambda));
    }
    return half_pi - std::clamp(lambda, -half_pi, half_pi);
}

double dimensional_time(double tau, const Scaling& scaling) {
    return tau * scaling.time_unit;
}

void validate_path(const DiscretePath& path) {
    if (path.points.size() < 2) {
        throw InvalidArgument(
            fmt::format("path needs at least 2 points, got {}", path.points.size()));
    }
    for (std::size_t i = 0; i < path.points.size(); ++i) {
        const auto& p = path.points[i];
        if (!std::isfinite(p.theta) || !std::isfinite(p.rho)) {
            throw DomainError(fmt::format("path point {} is not finite", i));
        }
        if (p.rho < -kDomainEpsilon || p.rho > 1.0 + kDomainEpsilon) {
            throw DomainError(
                fmt::format("path point {} has rho = {} outside [0, 1]", i, p.rho));
        }
    }
}

}  // namespace brach
