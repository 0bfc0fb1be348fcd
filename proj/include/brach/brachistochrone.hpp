// Closed-form minimum-time tunnels through a uniform sphere.
//
// With the integrand of the transit-time functional independent of theta,
// the Euler-Lagrange equation has the first integral
//
//     rho^2 theta' / (sqrt(1 - rho^2) sqrt(1 + rho^2 theta'^2)) = k,
//
// so every extremal belongs to a one-parameter family labelled by k >= 0:
//
//     theta'(rho) = sqrt(1 - rho^2) / (rho sqrt((k^2+1)/k^2 rho^2 - 1))
//     rho_min     = k / sqrt(k^2 + 1)
//     theta(rho)  = -atan(sqrt(1 - rho^2) / sqrt((k^2+1)/k^2 rho^2 - 1))
//                   + rho_min asin(sqrt(k^2+1) sqrt(1 - rho^2))
//
// theta is measured from the release point and decreases along the first
// (descending) half; the rising half is the mirror image about the deepest
// point. The antiderivative above carries rho_min as the coefficient of the
// second term; that is the only choice that differentiates back to theta'.
#pragma once

#include <cstddef>
#include <numbers>

#include "brach/core.hpp"
#include "brach/quadrature.hpp"

namespace brach {

struct BrachFamily {
    double k = 0.0;                  ///< conserved momentum of the first integral
    double rho_min = 0.0;            ///< deepest radius, k / sqrt(k^2 + 1)
    double separation_angle = 0.0;   ///< central angle between the surface ends

    /// Depth below the surface, 1 - rho_min, computed without cancellation.
    double depth() const { return separation_angle / std::numbers::pi; }
};

double rho_min(double k);
double separation_angle(double k);

BrachFamily family_from_k(double k);

/// Inverse of separation_angle on (0, pi]. A separation of exactly pi gives
/// the k = 0 member, the straight diameter.
BrachFamily family_from_separation(double delta_theta);

/// dtheta/drho on (rho_min, 1]. Throws SingularityError at or below rho_min
/// and DomainError for k <= 0 (the diameter has no slope field).
double theta_prime(double rho, double k);
double theta_prime(double rho, const BrachFamily& family);

/// Polar angle of the descending half at radius rho in [rho_min, 1].
/// theta(1) = 0 and theta(rho_min) = -(1 - rho_min) pi / 2.
double theta_of_rho(double rho, double k);
double theta_of_rho(double rho, const BrachFamily& family);

/// Radius of the tunnel at polar angle theta in [-separation, 0]. Requires
/// k > 0; the diameter is not a graph over theta.
double rho_at_theta(const BrachFamily& family, double theta);

/// 2n - 1 samples from (1, 0) through the deepest point to
/// (1, -separation). Samples on each half are spaced by
/// rho = rho_min + depth cos^2(psi), psi uniform in [0, pi/2], which keeps
/// arclength steps roughly even at both ends.
DiscretePath sample_path(const BrachFamily& family, std::size_t n);

/// Total tunnel length in units of R.
double arc_length(const BrachFamily& family, const QuadratureConfig& cfg = {});

namespace detail {

/// Descending-half angle at rho = rho_min + offset. Working from the offset
/// keeps the turning-point factor rho^2 - rho_min^2 free of cancellation.
double theta_at_offset(const BrachFamily& family, double offset);

/// (rho theta')^2 * offset at rho = rho_min + offset; finite at rho_min.
double scaled_radial_slope_sq(const BrachFamily& family, double offset);

}  // namespace detail

}  // namespace brach
