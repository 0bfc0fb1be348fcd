// Classical brachistochrone in a uniform field (the cycloid) and its
// comparison with short spherical tunnels, where the field inside the sphere
// is nearly uniform over the depth of the tunnel.
#pragma once

#include <cstddef>

namespace brach {

/// Cycloid x = a (phi - sin phi), y = a (1 - cos phi) (y measured downward)
/// from the release cusp to the parameter value end_angle.
struct CycloidSolution {
    double rolling_radius = 0.0;   ///< a
    double end_angle = 0.0;        ///< phi at the far endpoint, in (0, 2 pi]
    double horizontal_span = 0.0;
    double vertical_drop = 0.0;
};

/// Solves a (phi - sin phi) = span, a (1 - cos phi) = drop by bracketed root
/// finding on phi. drop = 0 gives the full arch phi = 2 pi.
CycloidSolution cycloid_between(double horizontal_span, double vertical_drop);

/// Descent time phi sqrt(a / g) from rest at the cusp.
double cycloid_time(const CycloidSolution& sol, double field_strength = 1.0);

/// Depth of the cycloid below the release level at horizontal distance x in
/// [0, span].
double cycloid_depth_at(const CycloidSolution& sol, double x);

struct SmallArcComparison {
    double delta_theta = 0.0;
    double spherical_time = 0.0;
    double cycloid_time = 0.0;
    double relative_time_difference = 0.0;  ///< (spherical - cycloid) / cycloid, absolute value
    double max_geometric_deviation = 0.0;   ///< max depth mismatch divided by the span
};

/// Lays the spherical tunnel for `delta_theta` into tangent-plane coordinates
/// x = |theta|, y = 1 - rho and compares it with the level-endpoint cycloid of
/// the same span in a field of strength 1. Only valid for short arcs:
/// throws DomainError outside (0, 0.2].
SmallArcComparison compare_small_arc(double delta_theta, std::size_t samples_per_half = 400);

}  // namespace brach
