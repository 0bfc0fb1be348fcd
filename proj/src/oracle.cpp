#include "brach/oracle.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "brach/errors.hpp"
#include "brach/quadrature.hpp"
#include "brach/spline.hpp"
#include "brach/timing.hpp"

namespace brach {

// ---------------------------------------------------------------------------
// Direct transcription

namespace {

double cluster(double u) {
    return 0.5 * (1.0 - std::cos(std::numbers::pi * u));
}

class Transcription {
public:
    Transcription(std::vector<double> angles) : angles_(std::move(angles)) {
        const std::size_t segments = angles_.size() - 1;
        half_sin_sq_.resize(segments);
        for (std::size_t j = 0; j < segments; ++j) {
            const double s = std::sin(0.5 * (angles_[j] - angles_[j + 1]));
            half_sin_sq_[j] = s * s;
        }
    }

    std::size_t unknowns() const { return angles_.size() - 2; }

    DiscretePath path(const std::vector<double>& interior) const {
        DiscretePath p;
        p.points.reserve(angles_.size());
        p.points.push_back({1.0, angles_.front()});
        for (std::size_t i = 0; i < interior.size(); ++i) {
            p.points.push_back({interior[i], angles_[i + 1]});
        }
        p.points.push_back({1.0, angles_.back()});
        const auto deepest = std::min_element(interior.begin(), interior.end());
        p.min_index = 1 + static_cast<std::size_t>(deepest - interior.begin());
        return p;
    }

    double time(const std::vector<double>& interior) const {
        double t = 0.0;
        for (double seg : segment_times(path(interior))) t += seg;
        return t;
    }

    // Analytic gradient of sum_j 2 L_j / (nu_j + nu_{j+1}).
    std::vector<double> gradient(const std::vector<double>& interior) const {
        const std::size_t n = angles_.size();
        std::vector<double> rho(n), nu(n);
        rho.front() = rho.back() = 1.0;
        std::copy(interior.begin(), interior.end(), rho.begin() + 1);
        for (std::size_t i = 0; i < n; ++i) nu[i] = std::sqrt((1.0 - rho[i]) * (1.0 + rho[i]));

        std::vector<double> full(n, 0.0);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double a = rho[j], b = rho[j + 1];
            const double S = half_sin_sq_[j];
            const double L = std::sqrt((a - b) * (a - b) + 4.0 * a * b * S);
            const double sigma = nu[j] + nu[j + 1];
            const double dLa = ((a - b) + 2.0 * b * S) / L;
            const double dLb = ((b - a) + 2.0 * a * S) / L;
            const double common = 2.0 * L / (sigma * sigma);
            // Endpoint radii are fixed; their nu may be zero, so skip them.
            if (j > 0) full[j] += 2.0 * dLa / sigma + common * a / nu[j];
            if (j + 1 < n - 1) full[j + 1] += 2.0 * dLb / sigma + common * b / nu[j + 1];
        }
        return {full.begin() + 1, full.end() - 1};
    }

private:
    std::vector<double> angles_;
    std::vector<double> half_sin_sq_;
};

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool feasible(const std::vector<double>& rho) {
    return std::all_of(rho.begin(), rho.end(), [](double r) { return r > 0.0 && r < 1.0; });
}

// Newton direction from a tridiagonal Hessian estimated by central
// differences of the gradient, three colour groups at a time. Falls back to
// steepest descent if the Hessian is not positive definite.
std::vector<double> newton_direction(const Transcription& problem,
                                     const std::vector<double>& x,
                                     const std::vector<double>& g) {
    const std::size_t n = x.size();
    constexpr double h = 1e-6;
    std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0);
    for (std::size_t colour = 0; colour < 3; ++colour) {
        auto plus = x, minus = x;
        for (std::size_t i = colour; i < n; i += 3) {
            plus[i] += h;
            minus[i] -= h;
        }
        if (!feasible(plus) || !feasible(minus)) {
            std::vector<double> d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
            return d;
        }
        const auto gp = problem.gradient(plus);
        const auto gm = problem.gradient(minus);
        for (std::size_t j = 0; j < n; ++j) {
            const double col = (gp[j] - gm[j]) / (2.0 * h);
            if (j % 3 == colour) diag[j] = col;
            else if (j > 0 && (j - 1) % 3 == colour) lower[j] = col;
            else if (j + 1 < n && (j + 1) % 3 == colour) upper[j] = col;
        }
    }
    // Symmetrise the finite-difference estimate.
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double avg = 0.5 * (upper[j] + lower[j + 1]);
        upper[j] = lower[j + 1] = avg;
    }
    std::vector<double> d(n), c(n);
    bool positive = true;
    for (std::size_t i = 0; i < n && positive; ++i) {
        const double pivot = diag[i] - (i > 0 ? lower[i] * c[i - 1] : 0.0);
        if (!(pivot > 0.0)) {
            positive = false;
            break;
        }
        c[i] = upper[i] / pivot;
        d[i] = (-g[i] - (i > 0 ? lower[i] * d[i - 1] : 0.0)) / pivot;
    }
    if (!positive) {
        for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
        return d;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
    return d;
}

}  // namespace

std::vector<double> transcription_angles(double delta_theta, std::size_t interior_points) {
    std::vector<double> angles(interior_points + 2);
    const double stations = static_cast<double>(interior_points + 1);
    for (std::size_t i = 0; i < angles.size(); ++i) {
        angles[i] = -delta_theta * cluster(cluster(static_cast<double>(i) / stations));
    }
    angles.front() = 0.0;
    angles.back() = -delta_theta;
    return angles;
}

OptimizationReport optimize_path(double delta_theta, std::size_t interior_points,
                                 const TranscriptionConfig& cfg) {
    if (std::isnan(delta_theta) || delta_theta <= 0.0 || delta_theta >= std::numbers::pi) {
        throw DomainError(
            fmt::format("optimize_path: separation {} rad outside (0, pi)", delta_theta));
    }
    if (interior_points < 3) {
        throw InvalidArgument(
            fmt::format("optimize_path needs >= 3 interior points, got {}", interior_points));
    }
    const auto angles = transcription_angles(delta_theta, interior_points);
    const Transcription problem(angles);

    std::vector<double> x(interior_points);
    if (cfg.start == TranscriptionConfig::Start::closed_form) {
        const BrachFamily family = family_from_separation(delta_theta);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = rho_at_theta(family, angles[i + 1]);
    } else {
        const double mid = std::cos(0.5 * delta_theta);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = mid / std::cos(angles[i + 1] + 0.5 * delta_theta);
        }
    }
    // Keep starting radii strictly inside the ball.
    for (double& r : x) r = std::clamp(r, 1e-9, 1.0 - 1e-12);

    OptimizationReport report;
    double f = problem.time(x);
    auto g = problem.gradient(x);
    report.initial_time = f;
    report.initial_residual = max_abs(g);

    constexpr double eps = std::numeric_limits<double>::epsilon();
    int iter = 0;
    for (; iter < cfg.max_iterations; ++iter) {
        if (max_abs(g) < cfg.gradient_tol) break;
        const auto d = newton_direction(problem, x, g);
        double slope = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) slope += g[i] * d[i];
        if (!(slope < 0.0)) break;

        bool accepted = false;
        for (double alpha = 1.0; alpha > 1e-12; alpha *= 0.5) {
            auto trial = x;
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] += alpha * d[i];
            if (!feasible(trial)) continue;
            const double ft = problem.time(trial);
            // Allow round-off-sized increases so the final Newton steps that
            // polish the gradient are not rejected.
            if (ft <= f + 1e-4 * alpha * slope + 16.0 * eps * std::abs(f)) {
                x = std::move(trial);
                f = ft;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        g = problem.gradient(x);
    }

    report.first_order_residual = max_abs(g);
    report.converged = report.first_order_residual < cfg.gradient_tol;
    report.iterations = iter;
    report.best_path = problem.path(x);
    report.best_time = f;
    return report;
}

// ---------------------------------------------------------------------------
// Second variation

namespace {

// Geometry of one half of a closed-form tunnel at a quadrature node.
struct HalfNode {
    double rho;
    double one_minus_rho;
    double drho;    // d rho / d parameter
    double theta;   // descending-half angle
    double dtheta;  // d theta / d parameter, descending half
};

HalfNode lower_node(const BrachFamily& f, double u) {
    const double offset = u * u;
    const double rho = f.rho_min + offset;
    const double one_minus = f.depth() - offset;
    const double w = std::sqrt(one_minus * (1.0 + rho));
    return {rho, one_minus, 2.0 * u, detail::theta_at_offset(f, offset),
            2.0 * f.rho_min * w / (rho * std::sqrt(rho + f.rho_min))};
}

HalfNode upper_node(const BrachFamily& f, double beta) {
    const double s = std::sin(0.5 * beta);
    const double one_minus = 2.0 * s * s;
    const double rho = 1.0 - one_minus;
    const double offset = f.depth() - one_minus;
    const double w = std::sin(beta);
    const double v = std::sqrt(offset * (rho + f.rho_min));
    return {rho, one_minus, -w, detail::theta_at_offset(f, offset),
            -w * f.rho_min * w / (rho * v)};
}

}  // namespace

double perturbation_test(const BrachFamily& family, double amplitude, int mode) {
    if (!(family.k > 0.0)) {
        throw DomainError("perturbation_test needs k > 0");
    }
    if (mode < 1) throw InvalidArgument(fmt::format("mode must be >= 1, got {}", mode));
    if (std::isnan(amplitude) || std::abs(amplitude) > 1e-2) {
        throw DomainError(fmt::format("amplitude {} outside [-1e-2, 1e-2]", amplitude));
    }
    if (amplitude == 0.0) return 0.0;

    const double sep = family.separation_angle;
    const double wavenumber = mode * std::numbers::pi / sep;

    // Screen the perturbed tunnel on a fine sampling before integrating.
    for (const PolarPoint& p : sample_path(family, 2001).points) {
        const double r = p.rho + amplitude * std::sin(-wavenumber * p.theta);
        if (r < 0.0 || r > 1.0) {
            throw DomainError(fmt::format(
                "amplitude {} pushes the tunnel to rho = {} at theta = {}", amplitude, r, p.theta));
        }
    }

    // Integrand of one half at a node; `mirror` selects the rising half. The
    // rising half's phase is mode pi - p with p the descending phase; using
    // parity instead of evaluating sin near mode pi keeps the bump accurate
    // next to the far mouth, where 1 - rho is tiny.
    const double parity = mode % 2 == 1 ? 1.0 : -1.0;
    const auto integrand = [&](const HalfNode& n, bool mirror, double amp) {
        const double p = -wavenumber * n.theta;
        const double sin_phase = mirror ? parity * std::sin(p) : std::sin(p);
        const double cos_phase = mirror ? -parity * std::cos(p) : std::cos(p);
        const double dtheta = mirror ? -n.dtheta : n.dtheta;
        const double bump = amp * sin_phase;
        const double rho = n.rho + bump;
        const double one_minus = n.one_minus_rho - bump;
        if (rho < 0.0 || one_minus < 0.0) {
            throw DomainError(fmt::format("amplitude {} pushes the tunnel to rho = {}", amp, rho));
        }
        const double drho = n.drho - amp * wavenumber * cos_phase * dtheta;
        return std::sqrt(drho * drho + rho * rho * dtheta * dtheta) /
               std::sqrt(one_minus * (1.0 + rho));
    };
    const auto difference = [&](const HalfNode& n) {
        return integrand(n, false, amplitude) - integrand(n, false, 0.0) +
               integrand(n, true, amplitude) - integrand(n, true, 0.0);
    };

    QuadratureConfig cfg;
    cfg.abs_tol = 1e-15;
    cfg.rel_tol = 1e-11;
    cfg.max_subdivisions = 2000;
    const double split = 0.5 * family.depth();
    const auto lower = integrate_adaptive(
        [&](double u) { return difference(lower_node(family, u)); }, 0.0, std::sqrt(split), cfg);
    const auto upper = integrate_adaptive(
        [&](double b) { return difference(upper_node(family, b)); }, 0.0,
        2.0 * std::asin(std::sqrt(0.5 * split)), cfg);
    return lower.value + upper.value;
}

// ---------------------------------------------------------------------------
// Bead on a wire

namespace {

using State = std::array<double, 2>;  // arclength parameter s, ds/dtau

struct BeadDynamics {
    const PlanarSpline& wire;

    void operator()(const State& x, State& dxdt, double) const {
        const auto p = wire(x[0]);
        const double tangent_sq = p.first[0] * p.first[0] + p.first[1] * p.first[1];
        const double curvature_term = p.first[0] * p.second[0] + p.first[1] * p.second[1];
        const double force = -(p.position[0] * p.first[0] + p.position[1] * p.first[1]);
        dxdt[0] = x[1];
        dxdt[1] = (force - curvature_term * x[1] * x[1]) / tangent_sq;
    }

    BeadSample sample(double tau, const State& x, double* drift) const {
        const auto p = wire(x[0]);
        const double rho = std::hypot(p.position[0], p.position[1]);
        const double speed = std::hypot(p.first[0], p.first[1]) * std::abs(x[1]);
        *drift = std::abs(0.5 * speed * speed - 0.5 * (1.0 - rho) * (1.0 + rho));
        return {tau, x[0], rho, speed};
    }
};

}  // namespace

SimulationTrace simulate_bead(const DiscretePath& path, const StepControl& step_control,
                              double max_tau) {
    namespace odeint = boost::numeric::odeint;
    validate_path(path);
    if (!(max_tau > 0.0)) throw InvalidArgument("max_tau must be positive");

    std::vector<PlanarSpline::Vec2> knots;
    knots.reserve(path.points.size());
    for (const auto& p : path.points) knots.push_back({p.x(), p.y()});
    const PlanarSpline wire(std::move(knots));
    const BeadDynamics dynamics{wire};
    const double end = wire.length();

    SimulationTrace trace;
    trace.tunnel_length = end;
    double drift = 0.0;

    auto stepper = odeint::make_dense_output(step_control.abs_tol, step_control.rel_tol,
                                             odeint::runge_kutta_dopri5<State>());
    stepper.initialize(State{0.0, 0.0}, 0.0, step_control.initial_step);
    trace.samples.push_back(dynamics.sample(0.0, State{0.0, 0.0}, &drift));

    // Locates the time in [t0, t1] where component `c` of the dense-output
    // state crosses `target`.
    const auto locate = [&](double t0, double t1, std::size_t c, double target) {
        const auto residual = [&](double t) {
            State x;
            stepper.calc_state(t, x);
            return x[c] - target;
        };
        std::uintmax_t iters = 200;
        const auto [lo, hi] = boost::math::tools::toms748_solve(
            residual, t0, t1, boost::math::tools::eps_tolerance<double>(), iters);
        return 0.5 * (lo + hi);
    };

    for (std::size_t step = 0; step < step_control.max_steps; ++step) {
        const auto [t0, t1] = stepper.do_step(dynamics);
        const State x = stepper.current_state();
        State previous;
        stepper.calc_state(t0, previous);

        if (x[0] >= end) {
            const double t_end = locate(t0, t1, 0, end);
            State xe;
            stepper.calc_state(t_end, xe);
            xe[0] = end;
            trace.samples.push_back(dynamics.sample(t_end, xe, &drift));
            trace.max_energy_drift = std::max(trace.max_energy_drift, drift);
            trace.transit_time = t_end;
            return trace;
        }
        if (x[1] <= 0.0) {
            double t_turn = t1;
            State xt = x;
            if (previous[1] > 0.0) {
                t_turn = locate(t0, t1, 1, 0.0);
                stepper.calc_state(t_turn, xt);
            }
            trace.samples.push_back(dynamics.sample(t_turn, xt, &drift));
            trace.max_energy_drift = std::max(trace.max_energy_drift, drift);
            if (end - xt[0] <= step_control.arrival_tolerance) {
                trace.transit_time = t_turn;
                return trace;
            }
            throw StalledTrajectoryError(
                fmt::format("bead turned back at tau = {}, s = {} of {}", t_turn, xt[0], end),
                t_turn, xt[0]);
        }
        trace.samples.push_back(dynamics.sample(t1, x, &drift));
        trace.max_energy_drift = std::max(trace.max_energy_drift, drift);
        if (t1 > max_tau) {
            throw StalledTrajectoryError(
                fmt::format("bead did not arrive within tau = {} (s = {} of {})", max_tau, x[0],
                            end),
                t1, x[0]);
        }
    }
    throw StalledTrajectoryError("bead exceeded the step budget", trace.samples.back().tau,
                                 trace.samples.back().arclength);
}

}  // namespace brach
