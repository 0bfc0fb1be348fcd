// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
// The tunnel integrands are made bounded by substitution before they get
// here, so plain bisection of the worst subinterval converges quickly.
#pragma once

#include <cstddef>
#include <functional>

namespace brach {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 60;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Integrates f over [a, b] until the summed error estimate drops below
/// max(abs_tol, rel_tol |I|). Each subdivision bisects the interval with the
/// largest error. Throws NumericError carrying the worst subinterval if
/// max_subdivisions bisections do not suffice, and InvalidArgument for a
/// malformed config.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, const QuadratureConfig& cfg = {});

}  // namespace brach
