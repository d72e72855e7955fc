#pragma once

#include <vector>

#include "core/geometry.hpp"

namespace svx {

struct CubicBezier {
    Vec2 b0, b1, b2, b3;

    Vec2 eval(double t) const;
    Vec2 derivative(double t) const;
    Vec2 second_derivative(double t) const;
};

/// Chain of cubic segments; consecutive segments share their joint point.
struct BezierSpline {
    std::vector<CubicBezier> segments;
    bool closed = false;
    /// joint_c1[i] refers to the joint between segments i and i+1; for closed
    /// splines the last entry is the seam joint.
    std::vector<bool> joint_c1;
};

struct FitConfig {
    double desired_err = 3.0;       // max point-to-curve distance, pixels
    double iterations_per_pixel = 1.0;
    double early_stop_fraction = 0.1;
    bool psi_skip = false; // legacy shortcut: split without refinement when the
                           // first fit misses by more than psi_factor * desired_err
    double psi_factor = 4.0;

    void validate() const;
};

/// Least-squares inner control points along fixed end tangents; `start_tangent`
/// points into the curve, `end_tangent` points backward from the last point.
CubicBezier fit_single(const std::vector<Vec2> &points, const std::vector<double> &t_params,
                       const Vec2 &start_tangent, const Vec2 &end_tangent);

/// Largest pointwise distance (refined by local projection) and its index;
/// ties break toward the lower index.
std::pair<double, size_t> max_error(const std::vector<Vec2> &points,
                                    const std::vector<double> &t_params,
                                    const CubicBezier &curve);

/// One Newton-Raphson step per point toward the parameter of least distance;
/// results are clamped to [0, 1] and kept nondecreasing.
std::vector<double> reparametrize(const std::vector<Vec2> &points,
                                  const std::vector<double> &t_params, const CubicBezier &curve);

BezierSpline fit_path(const std::vector<Pixel> &points, const FitConfig &cfg);
BezierSpline fit_path(const std::vector<Vec2> &points, const FitConfig &cfg);

/// Two-pass closed fitting: the first pass seams at index 0, the second seams
/// at the first pass's worst point.
BezierSpline fit_closed_path(const std::vector<Pixel> &points, const FitConfig &cfg);
BezierSpline fit_closed_path(const std::vector<Vec2> &points, const FitConfig &cfg);

int count_control_points(const BezierSpline &s);

/// Chord-length parameters normalized to [0, 1].
std::vector<double> chord_parameters(const std::vector<Vec2> &points);

} // namespace svx
