// Independent checks on the closed-form tunnels:
//  - a direct-transcription optimizer that minimises the discrete transit
//    time over polyline paths without knowing the closed form,
//  - a second-variation probe that perturbs a closed-form tunnel and
//    measures the change in transit time,
//  - a bead-on-wire simulator that integrates Newton's law along a tunnel.
#pragma once

#include <cstddef>
#include <vector>

#include "brach/brachistochrone.hpp"
#include "brach/core.hpp"

namespace brach {

struct TranscriptionConfig {
    enum class Start { chord, closed_form };

    double gradient_tol = 1e-10;  ///< convergence threshold on max |dT/drho_i|
    int max_iterations = 100;
    Start start = Start::chord;
};

struct OptimizationReport {
    DiscretePath best_path;
    double best_time = 0.0;
    int iterations = 0;
    bool converged = false;
    double first_order_residual = 0.0;  ///< max |dT/drho_i| at best_path
    double initial_time = 0.0;
    double initial_residual = 0.0;
};

/// Angular stations used by optimize_path, including both endpoints.
/// Stations cluster toward the ends, where the tunnel leaves the surface
/// radially: theta_i = -sep * g(g(i / (m + 1))) with g(u) = (1 - cos(pi u)) / 2.
std::vector<double> transcription_angles(double delta_theta, std::size_t interior_points);

/// Minimises the polyline transit time (segment_times rule) over the radii of
/// `interior_points` samples at fixed angular stations, with the ends pinned at
/// (1, 0) and (1, -delta_theta). Uses damped Newton steps on a finite-difference
/// tridiagonal Hessian of the analytic gradient. Non-convergence is reported
/// through `converged`, not thrown.
OptimizationReport optimize_path(double delta_theta, std::size_t interior_points,
                                 const TranscriptionConfig& cfg = {});

/// Transit time of the closed-form tunnel with its radius perturbed by
/// amplitude * sin(mode pi |theta| / separation), minus the unperturbed time.
/// Both halves are integrated with the singular-quadrature substitutions and
/// the integrands are differenced pointwise, so the result resolves the
/// second-order change even for tiny amplitudes.
double perturbation_test(const BrachFamily& family, double amplitude, int mode);

struct StepControl {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double initial_step = 1e-6;
    /// A turning point this close (in arclength) to the far end counts as arrival.
    double arrival_tolerance = 1e-6;
    std::size_t max_steps = 5'000'000;
};

struct BeadSample {
    double tau = 0.0;
    double arclength = 0.0;
    double rho = 0.0;
    double speed = 0.0;
};

struct SimulationTrace {
    std::vector<BeadSample> samples;
    double transit_time = 0.0;
    double max_energy_drift = 0.0;  ///< max |nu^2/2 - (1 - rho^2)/2| over accepted steps
    double tunnel_length = 0.0;
};

/// Releases a bead from rest at the first point of `path` and integrates
///
///     |P'|^2 s'' + (P' . P'') s'^2 = -P . P'
///
/// along a clamped cubic spline P(s) through the samples (Cartesian, so paths
/// through the centre are handled), with Dormand-Prince 5(4) steps under
/// `step_control`. Stops when s reaches the far end. Throws
/// StalledTrajectoryError when the bead turns back early or max_tau elapses.
SimulationTrace simulate_bead(const DiscretePath& path, const StepControl& step_control = {},
                              double max_tau = 100.0);

}  // namespace brach
