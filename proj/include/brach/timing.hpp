// Transit time and arc length of tunnels.
//
// For a closed-form family the half-tunnel integral over [rho_min, 1] has
// inverse-square-root singularities at both ends: zero speed at the surface
// and a vertical slope at rho_min. The interval is split at its midpoint;
// the upper part is integrated in rho = sin(alpha) (written via
// beta = pi/2 - alpha, so rho = cos beta) and the lower part in
// u = sqrt(rho - rho_min). Both transformed integrands are bounded.
#pragma once

#include <cstddef>
#include <vector>

#include "brach/brachistochrone.hpp"
#include "brach/core.hpp"
#include "brach/quadrature.hpp"

namespace brach {

struct TransitResult {
    double tau = 0.0;             ///< dimensionless value (time, or length for Integrand::length)
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

enum class Integrand {
    time,    ///< ds / nu
    length,  ///< ds
};

/// Integral of the selected integrand over the descending half of `family`.
/// The k = 0 member is answered in closed form (pi/2 and 1).
TransitResult arc_integral(const BrachFamily& family, Integrand integrand,
                           const QuadratureConfig& cfg = {});

TransitResult half_transit_time(const BrachFamily& family, const QuadratureConfig& cfg = {});

/// Twice the half time; the tunnel is symmetric about its deepest point.
TransitResult total_transit_time(const BrachFamily& family, const QuadratureConfig& cfg = {});

/// Time spent on each straight segment of a polyline path.
///
/// Along a segment of length L the speed is modelled with nu^2 linear in
/// arclength between the end values nu0, nu1, which integrates exactly to
/// 2 L / (nu0 + nu1). This treats the zero-speed release point analytically
/// (there it reduces to nu ~ sqrt(2 (1 - rho))). Because nu^2 is concave along
/// any straight segment the model never underestimates the polyline's time.
///
/// Throws DegenerateSegmentError for a zero-length segment at rest and
/// InfiniteTimeError for a positive-length segment with zero speed at both ends.
std::vector<double> segment_times(const DiscretePath& path);

/// Sum of segment_times. error_estimate compares against the same rule on
/// the path with every other interior sample dropped (zero for paths too
/// short to coarsen); evaluations counts segments.
TransitResult path_transit_time(const DiscretePath& path);

}  // namespace brach
