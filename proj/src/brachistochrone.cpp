#include "brach/brachistochrone.hpp"

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "brach/errors.hpp"
#include "brach/timing.hpp"

namespace brach {

namespace {

void check_k(double k) {
    if (std::isnan(k) || k < 0.0) {
        throw DomainError(fmt::format("family parameter k must be >= 0, got {}", k));
    }
}

// 1 - k / sqrt(k^2 + 1), rearranged to avoid cancellation for large k.
double depth_of_k(double k) {
    if (std::isinf(k)) return 0.0;
    const double h = std::hypot(k, 1.0);
    return 1.0 / (h * (h + k));
}

// Offset of rho above rho_min, validated against the family's domain.
double offset_of(const BrachFamily& family, double rho, const char* what) {
    if (std::isnan(rho) || rho < family.rho_min - kDomainEpsilon ||
        rho > 1.0 + kDomainEpsilon) {
        throw DomainError(fmt::format("{}: rho = {} outside [rho_min = {}, 1]", what, rho,
                                      family.rho_min));
    }
    return std::clamp(rho - family.rho_min, 0.0, family.depth());
}

}  // namespace

double rho_min(double k) {
    check_k(k);
    if (std::isinf(k)) return 1.0;
    return k / std::hypot(k, 1.0);
}

double separation_angle(double k) {
    check_k(k);
    return std::numbers::pi * depth_of_k(k);
}

BrachFamily family_from_k(double k) {
    check_k(k);
    BrachFamily f;
    f.k = k;
    f.rho_min = rho_min(k);
    f.separation_angle = separation_angle(k);
    if (!(f.separation_angle > 0.0)) {
        throw DomainError(fmt::format("k = {} leaves no tunnel (zero separation)", k));
    }
    return f;
}

BrachFamily family_from_separation(double delta_theta) {
    if (std::isnan(delta_theta) || delta_theta <= 0.0 ||
        delta_theta > std::numbers::pi + kDomainEpsilon) {
        throw DomainError(fmt::format("separation {} rad outside (0, pi]", delta_theta));
    }
    BrachFamily f;
    f.separation_angle = std::min(delta_theta, std::numbers::pi);
    const double depth = f.separation_angle / std::numbers::pi;
    f.rho_min = 1.0 - depth;
    f.k = f.rho_min / std::sqrt(depth * (2.0 - depth));
    return f;
}

namespace detail {

double theta_at_offset(const BrachFamily& f, double offset) {
    const double depth = f.depth();
    if (offset <= 0.0) return -0.5 * std::numbers::pi * depth;
    if (offset >= depth) return 0.0;
    const double rho = f.rho_min + offset;
    const double w = std::sqrt((depth - offset) * (1.0 + rho));  // sqrt(1 - rho^2)
    const double v = std::sqrt(offset * (rho + f.rho_min));      // sqrt(rho^2 - rho_min^2)
    // sqrt(k^2+1) sqrt(1-rho^2) = w / sqrt(1 - rho_min^2), whose arcsine is
    // atan2(w, v); the atan2 form stays accurate next to rho_min.
    return -std::atan2(f.rho_min * w, v) + f.rho_min * std::atan2(w, v);
}

double scaled_radial_slope_sq(const BrachFamily& f, double offset) {
    const double rho = f.rho_min + offset;
    const double one_minus_rho_sq = (f.depth() - offset) * (1.0 + rho);
    return one_minus_rho_sq * f.rho_min * f.rho_min / (rho + f.rho_min);
}

}  // namespace detail

double theta_prime(double rho, const BrachFamily& f) {
    if (!(f.k > 0.0)) {
        throw DomainError("theta_prime: the k = 0 member has no finite slope field");
    }
    const double offset =
        rho < f.rho_min ? 0.0 : offset_of(f, rho, "theta_prime");
    if (offset <= 0.0) {
        throw SingularityError(
            fmt::format("theta_prime diverges at rho = {} (rho_min = {})", rho, f.rho_min),
            rho);
    }
    const double r = f.rho_min + offset;
    const double w = std::sqrt((f.depth() - offset) * (1.0 + r));
    const double v = std::sqrt(offset * (r + f.rho_min));
    return f.rho_min * w / (r * v);
}

double theta_prime(double rho, double k) {
    return theta_prime(rho, family_from_k(k));
}

double theta_of_rho(double rho, const BrachFamily& f) {
    return detail::theta_at_offset(f, offset_of(f, rho, "theta_of_rho"));
}

double theta_of_rho(double rho, double k) {
    return theta_of_rho(rho, family_from_k(k));
}

double rho_at_theta(const BrachFamily& f, double theta) {
    if (!(f.k > 0.0)) {
        throw DomainError("rho_at_theta: the diameter is not a graph over theta");
    }
    const double sep = f.separation_angle;
    if (std::isnan(theta) || theta > kDomainEpsilon || theta < -sep - kDomainEpsilon) {
        throw DomainError(fmt::format("theta = {} outside [-{}, 0]", theta, sep));
    }
    theta = std::clamp(theta, -sep, 0.0);
    const double bottom = -0.5 * sep;
    if (theta < bottom) theta = 2.0 * bottom - theta;  // rising half mirrors the first
    if (theta <= bottom) return f.rho_min;
    if (theta >= 0.0) return 1.0;

    const auto residual = [&](double offset) {
        return detail::theta_at_offset(f, offset) - theta;
    };
    std::uintmax_t max_iter = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(
        residual, 0.0, f.depth(), bottom - theta, -theta,
        boost::math::tools::eps_tolerance<double>(), max_iter);
    return f.rho_min + 0.5 * (lo + hi);
}

DiscretePath sample_path(const BrachFamily& f, std::size_t n) {
    if (n < 2) {
        throw InvalidArgument(fmt::format("sample_path needs n >= 2, got {}", n));
    }
    if (!(f.separation_angle > 0.0) || f.separation_angle > std::numbers::pi ||
        f.rho_min < 0.0 || f.rho_min >= 1.0) {
        throw DomainError("sample_path: invalid family");
    }
    const double depth = f.depth();
    const double bottom = -0.5 * f.separation_angle;

    std::vector<PolarPoint> half(n);
    half.front() = {1.0, 0.0};
    half.back() = {f.rho_min, bottom};
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double psi =
            0.5 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n - 1);
        const double c = std::cos(psi);
        const double offset = depth * c * c;
        half[j] = {f.rho_min + offset, detail::theta_at_offset(f, offset)};
    }

    DiscretePath path;
    path.points.reserve(2 * n - 1);
    path.points.insert(path.points.end(), half.begin(), half.end());
    for (std::size_t j = n - 1; j-- > 0;) {
        path.points.push_back({half[j].rho, 2.0 * bottom - half[j].theta});
    }
    path.min_index = n - 1;
    return path;
}

double arc_length(const BrachFamily& family, const QuadratureConfig& cfg) {
    return 2.0 * arc_integral(family, Integrand::length, cfg).tau;
}

}  // namespace brach
