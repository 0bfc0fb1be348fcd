// Clamped cubic spline of a planar curve, parameterised by cumulative chord
// length through its knots.
#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace brach {

class PlanarSpline {
public:
    using Vec2 = std::array<double, 2>;

    struct Sample {
        Vec2 position;
        Vec2 first;   ///< d/ds
        Vec2 second;  ///< d^2/ds^2
    };

    /// Knots must be pairwise distinct in sequence. End tangents are clamped to
    /// the directions of the first and last chords.
    explicit PlanarSpline(std::vector<Vec2> knots);

    /// Evaluates at parameter s; outside [0, length()] the end cubics are
    /// extended.
    Sample operator()(double s) const;

    double length() const { return params_.back(); }
    std::size_t size() const { return params_.size(); }

private:
    std::vector<double> params_;
    std::array<std::vector<double>, 2> values_;
    std::array<std::vector<double>, 2> moments_;  // second derivatives at the knots
};

}  // namespace brach
