#include "brach/chord.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "brach/errors.hpp"

namespace brach {

ChordSpec chord_from_separation(double delta_theta) {
    if (std::isnan(delta_theta) || delta_theta <= 0.0 ||
        delta_theta > std::numbers::pi + kDomainEpsilon) {
        throw DomainError(
            fmt::format("chord separation {} rad outside (0, pi]", delta_theta));
    }
    delta_theta = std::min(delta_theta, std::numbers::pi);
    ChordSpec spec;
    spec.separation_angle = delta_theta;
    spec.half_chord = std::sin(0.5 * delta_theta);
    // cos(pi/2) is not exactly zero in floating point; the diameter passes
    // through the centre.
    spec.midpoint_radius = delta_theta == std::numbers::pi ? 0.0 : std::cos(0.5 * delta_theta);
    return spec;
}

double chord_transit_time(const ChordSpec&) {
    return std::numbers::pi;
}

double chord_position(double tau, const ChordSpec& spec) {
    return spec.half_chord * std::cos(tau);
}

DiscretePath chord_path(const ChordSpec& spec, std::size_t n) {
    if (n < 2) {
        throw InvalidArgument(fmt::format("chord_path needs n >= 2, got {}", n));
    }
    // The chord is the segment x = midpoint_radius, y in [-half, +half] of a
    // frame rotated so that its perpendicular bisector sits at theta = -sep/2.
    const double bisector = -0.5 * spec.separation_angle;
    DiscretePath path;
    path.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        PolarPoint p;
        if (i == 0) {
            p = {1.0, 0.0};
        } else if (i == n - 1) {
            p = {1.0, -spec.separation_angle};
        } else {
            const double u = static_cast<double>(i) / static_cast<double>(n - 1);
            const double along = spec.half_chord * (1.0 - 2.0 * u);
            p.rho = std::min(1.0, std::hypot(spec.midpoint_radius, along));
            p.theta = p.rho > 0.0 ? bisector + std::atan2(along, spec.midpoint_radius)
                                  : bisector;
        }
        path.points.push_back(p);
    }
    path.min_index = (n - 1) / 2;
    return path;
}

}  // namespace brach
