// Straight-chord "gravity elevator": along any chord the along-chord
// coordinate obeys x'' + x = 0 (dimensionless), so every chord is crossed in
// half an oscillation period.
#pragma once

#include <cstddef>

#include "brach/core.hpp"

namespace brach {

struct ChordSpec {
    double separation_angle = 0.0;  ///< central angle between the surface ends
    double half_chord = 0.0;        ///< sin(separation/2)
    double midpoint_radius = 0.0;   ///< cos(separation/2), distance of the chord from the centre
};

ChordSpec chord_from_separation(double delta_theta);

/// Always pi: half the period of the simple harmonic motion along the chord.
double chord_transit_time(const ChordSpec& spec);

/// Along-chord coordinate measured from the chord midpoint for a release
/// from rest at x = half_chord.
double chord_position(double tau, const ChordSpec& spec);

/// n samples, uniform in chord length, from (rho=1, theta=0) to
/// (rho=1, theta=-separation). Throws InvalidArgument if n < 2.
DiscretePath chord_path(const ChordSpec& spec, std::size_t n);

}  // namespace brach
