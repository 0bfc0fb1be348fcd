#include "brach/timing.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "brach/errors.hpp"

namespace brach {

namespace {

// Splits [rho_min, 1] at its midpoint: offset_split = depth / 2.
struct HalfIntegrands {
    const BrachFamily& family;
    Integrand integrand;
    double depth;

    // Lower part: rho = rho_min + u^2, drho = 2u du. With
    // q = (rho theta')^2 u^2 the arclength factor is sqrt(u^2 + q) / u, so the
    // u cancels against drho.
    double lower(double u) const {
        const double offset = u * u;
        const double rho = family.rho_min + offset;
        const double q = detail::scaled_radial_slope_sq(family, offset);
        const double ds = 2.0 * std::sqrt(offset + q);
        if (integrand == Integrand::length) return ds;
        return ds / std::sqrt((depth - offset) * (1.0 + rho));
    }

    // Upper part: rho = cos(beta), |drho| = sin(beta) dbeta and
    // sqrt(1 - rho^2) = sin(beta), which cancels for the time integrand.
    double upper(double beta) const {
        const double s = std::sin(0.5 * beta);
        const double offset = depth - 2.0 * s * s;
        const double q = detail::scaled_radial_slope_sq(family, offset);
        const double stretch = std::sqrt(1.0 + q / offset);
        if (integrand == Integrand::time) return stretch;
        return stretch * std::sin(beta);
    }
};

void check_family(const BrachFamily& f) {
    if (!(f.separation_angle > 0.0) || f.separation_angle > std::numbers::pi ||
        !(f.rho_min >= 0.0) || !(f.rho_min < 1.0) || !(f.k >= 0.0)) {
        throw DomainError(fmt::format("invalid family (k = {}, rho_min = {}, separation = {})",
                                      f.k, f.rho_min, f.separation_angle));
    }
}

}  // namespace

TransitResult arc_integral(const BrachFamily& family, Integrand integrand,
                           const QuadratureConfig& cfg) {
    check_family(family);
    if (family.k == 0.0) {
        // Straight diameter: half time is a quarter SHM period, half length is R.
        return {integrand == Integrand::time ? 0.5 * std::numbers::pi : 1.0, 0.0, 0};
    }
    const double depth = family.depth();
    const HalfIntegrands h{family, integrand, depth};

    const double split = 0.5 * depth;
    const double u_max = std::sqrt(split);
    // beta where cos(beta) = 1 - split, via 1 - cos b = 2 sin^2(b/2).
    const double beta_max = 2.0 * std::asin(std::sqrt(0.5 * split));

    const auto lo = integrate_adaptive([&](double u) { return h.lower(u); }, 0.0, u_max, cfg);
    const auto hi =
        integrate_adaptive([&](double b) { return h.upper(b); }, 0.0, beta_max, cfg);
    return {lo.value + hi.value, lo.error_estimate + hi.error_estimate,
            lo.evaluations + hi.evaluations};
}

TransitResult half_transit_time(const BrachFamily& family, const QuadratureConfig& cfg) {
    return arc_integral(family, Integrand::time, cfg);
}

TransitResult total_transit_time(const BrachFamily& family, const QuadratureConfig& cfg) {
    TransitResult r = half_transit_time(family, cfg);
    r.tau *= 2.0;
    r.error_estimate *= 2.0;
    return r;
}

std::vector<double> segment_times(const DiscretePath& path) {
    validate_path(path);
    const auto& pts = path.points;
    std::vector<double> times(pts.size() - 1);
    double nu_prev = speed_at_radius(pts[0].rho);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const PolarPoint& a = pts[i];
        const PolarPoint& b = pts[i + 1];
        const double nu_next = speed_at_radius(b.rho);
        // Law of cosines: |a - b|^2 = ra^2 + rb^2 - 2 ra rb cos(dtheta), written
        // as (ra - rb)^2 + 4 ra rb sin^2(dtheta/2) to keep short segments exact.
        const double half_sin = std::sin(0.5 * (a.theta - b.theta));
        const double dr = a.rho - b.rho;
        const double length = std::sqrt(dr * dr + 4.0 * a.rho * b.rho * half_sin * half_sin);
        const double speed_sum = nu_prev + nu_next;
        if (speed_sum == 0.0) {
            if (length == 0.0) {
                throw DegenerateSegmentError(
                    fmt::format("segment {} has zero length with the particle at rest", i), i);
            }
            throw InfiniteTimeError(
                fmt::format("segment {} runs along the surface at zero speed", i), i);
        }
        times[i] = 2.0 * length / speed_sum;
        nu_prev = nu_next;
    }
    return times;
}

TransitResult path_transit_time(const DiscretePath& path) {
    const auto times = segment_times(path);
    TransitResult r;
    for (double t : times) r.tau += t;
    r.evaluations = times.size();

    const auto& pts = path.points;
    if (pts.size() >= 5) {
        DiscretePath coarse;
        for (std::size_t i = 0; i < pts.size(); i += 2) coarse.points.push_back(pts[i]);
        if ((pts.size() - 1) % 2 != 0) coarse.points.push_back(pts.back());
        double coarse_tau = 0.0;
        for (double t : segment_times(coarse)) coarse_tau += t;
        r.error_estimate = std::abs(coarse_tau - r.tau);
    }
    return r;
}

}  // namespace brach
