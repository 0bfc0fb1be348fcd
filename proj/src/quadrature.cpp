#include "brach/quadrature.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "brach/errors.hpp"

namespace brach {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; the Gauss
// 7-point rule uses every other abscissa.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(centre);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, const QuadratureConfig& cfg) {
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0) || cfg.max_subdivisions < 1) {
        throw InvalidArgument("quadrature config needs positive tolerances and "
                              "max_subdivisions >= 1");
    }
    QuadratureResult result;
    if (a == b) return result;

    std::priority_queue<Segment> queue;
    queue.push(gauss_kronrod(f, a, b));
    result.evaluations = 15;
    double total = queue.top().value;
    double error = queue.top().error;

    for (int split = 0;; ++split) {
        if (!std::isfinite(total)) {
            const Segment& worst = queue.top();
            throw NumericError(
                fmt::format("integrand is not finite on [{}, {}]", worst.lo, worst.hi),
                worst.lo, worst.hi, worst.error);
        }
        if (error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) break;
        const Segment worst = queue.top();
        if (split == cfg.max_subdivisions) {
            throw NumericError(
                fmt::format("quadrature did not converge after {} subdivisions; worst "
                            "subinterval [{}, {}] with error {}",
                            cfg.max_subdivisions, worst.lo, worst.hi, worst.error),
                worst.lo, worst.hi, worst.error);
        }
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Segment left = gauss_kronrod(f, worst.lo, mid);
        const Segment right = gauss_kronrod(f, mid, worst.hi);
        result.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    // Recompute the sums from the leaves to shed accumulated round-off.
    total = 0.0;
    error = 0.0;
    while (!queue.empty()) {
        total += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    result.value = total;
    result.error_estimate = error;
    return result;
}

}  // namespace brach
