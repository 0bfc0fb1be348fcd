// Physical parameters, the sqrt(R/g) / R / sqrt(gR) scaling and the
// pointwise physics inside a uniform-density sphere.
//
// Everything downstream works in dimensionless units: lengths in R, times in
// sqrt(R/g), speeds in sqrt(gR). A particle released from rest at the surface
// has zero total energy, so its speed depends on radius alone.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace brach {

/// Tolerance applied to domain bounds before rejecting an argument. Values
/// within this distance of a bound are clamped onto it.
inline constexpr double kDomainEpsilon = 1e-12;

struct PhysicalParams {
    double radius_m = 0.0;       ///< sphere radius R [m]
    double gravity_mps2 = 0.0;   ///< surface gravity g = GM/R^2 [m/s^2]
};

/// Earth reference values: mean radius and standard gravity.
inline constexpr PhysicalParams kEarth{6.371e6, 9.80665};

struct Scaling {
    double time_unit = 1.0;    ///< sqrt(R/g) [s]
    double speed_unit = 1.0;   ///< sqrt(gR) [m/s]
    double length_unit = 1.0;  ///< R [m]
};

/// Point in the trajectory plane. rho is r/R in [0, 1], theta the polar
/// angle in radians measured from the release point.
struct PolarPoint {
    double rho = 0.0;
    double theta = 0.0;

    double x() const { return rho * std::cos(theta); }
    double y() const { return rho * std::sin(theta); }
};

/// Ordered samples of a tunnel from one surface point to another.
struct DiscretePath {
    std::vector<PolarPoint> points;
    std::size_t min_index = 0;  ///< index of the deepest sample
};

Scaling make_scaling(const PhysicalParams& params);

/// Dimensionless speed sqrt(1 - rho^2) of a particle released from rest at
/// the surface.
double speed_at_radius(double rho);

/// Potential energy per unit mass in units of gR, zero at the surface.
double potential_per_mass(double rho);

/// Radial acceleration in units of g; negative means inward.
double radial_acceleration(double rho);

/// Polar angle of a surface point at latitude lambda (both in radians).
double latitude_to_polar(double lambda);

double dimensional_time(double tau, const Scaling& scaling);

/// Returns rho clamped into [0, 1] if it lies within kDomainEpsilon of the
/// interval, otherwise throws DomainError naming `what`.
double checked_radius(double rho, const char* what);

/// Throws DomainError unless every point has rho within [0, 1] (up to
/// kDomainEpsilon) and finite coordinates, or InvalidArgument when fewer than
/// two points are present.
void validate_path(const DiscretePath& path);

}  // namespace brach
