#include "brach/spline.hpp"

#include <algorithm>
#include <cmath>

#include "brach/errors.hpp"

namespace brach {

namespace {

// Second-derivative moments of a clamped cubic spline (Thomas algorithm on the
// standard tridiagonal system).
std::vector<double> clamped_moments(const std::vector<double>& s, const std::vector<double>& y,
                                    double slope_start, double slope_end) {
    const std::size_t n = s.size();
    std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
    const double h0 = s[1] - s[0];
    diag[0] = 2.0 * h0;
    sup[0] = h0;
    rhs[0] = 6.0 * ((y[1] - y[0]) / h0 - slope_start);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = s[i] - s[i - 1];
        const double hr = s[i + 1] - s[i];
        sub[i] = hl;
        diag[i] = 2.0 * (hl + hr);
        sup[i] = hr;
        rhs[i] = 6.0 * ((y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl);
    }
    const double hn = s[n - 1] - s[n - 2];
    sub[n - 1] = hn;
    diag[n - 1] = 2.0 * hn;
    rhs[n - 1] = 6.0 * (slope_end - (y[n - 1] - y[n - 2]) / hn);

    for (std::size_t i = 1; i < n; ++i) {
        const double m = sub[i] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    std::vector<double> moments(n);
    moments[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        moments[i] = (rhs[i] - sup[i] * moments[i + 1]) / diag[i];
    }
    return moments;
}

}  // namespace

PlanarSpline::PlanarSpline(std::vector<Vec2> knots) {
    if (knots.size() < 2) throw InvalidArgument("spline needs at least 2 knots");
    params_.resize(knots.size());
    params_[0] = 0.0;
    for (std::size_t i = 1; i < knots.size(); ++i) {
        const double h = std::hypot(knots[i][0] - knots[i - 1][0], knots[i][1] - knots[i - 1][1]);
        if (!(h > 0.0)) throw InvalidArgument("spline knots must be distinct");
        params_[i] = params_[i - 1] + h;
    }
    const std::size_t n = knots.size();
    const double h0 = params_[1];
    const double hn = params_[n - 1] - params_[n - 2];
    for (std::size_t c = 0; c < 2; ++c) {
        auto& v = values_[c];
        v.resize(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = knots[i][c];
        moments_[c] = clamped_moments(params_, v, (v[1] - v[0]) / h0,
                                      (v[n - 1] - v[n - 2]) / hn);
    }
}

PlanarSpline::Sample PlanarSpline::operator()(double s) const {
    const auto it = std::upper_bound(params_.begin(), params_.end(), s);
    std::size_t i = it == params_.begin() ? 0 : static_cast<std::size_t>(it - params_.begin()) - 1;
    i = std::min(i, params_.size() - 2);

    const double h = params_[i + 1] - params_[i];
    const double t = s - params_[i];
    Sample out{};
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& y = values_[c];
        const auto& m = moments_[c];
        const double b = (y[i + 1] - y[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
        const double cc = 0.5 * m[i];
        const double d = (m[i + 1] - m[i]) / (6.0 * h);
        out.position[c] = y[i] + t * (b + t * (cc + t * d));
        out.first[c] = b + t * (2.0 * cc + 3.0 * t * d);
        out.second[c] = 2.0 * cc + 6.0 * t * d;
    }
    return out;
}

}  // namespace brach
