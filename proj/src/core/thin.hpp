#pragma once

#include <vector>

#include "core/image.hpp"

namespace svx {

/// Closed loop of 8-connected border pixels. Outer borders are traversed
/// clockwise in raster coordinates (y down); hole borders keep the material
/// on the same side of the travel direction.
struct Contour {
    std::vector<Pixel> points;
    bool outer = true;
};

/// Per-point turning estimate from chord distance accumulation.
/// Positive values mark concave spans (material on the outside of the turn),
/// negative convex, near-zero straight runs.
struct CurvatureProfile {
    std::vector<double> angle; // signed, radians
    int cord_length = 15;
};

struct ErodingMember {
    Vec2 position;   // advances over time, starts at the contour pixel
    Vec2 direction;  // unit, opposite the local angle bisector
    double speed = 1.0;
    double angle = 0.0; // enclosed angle at this point, radians
};

/// A steep concave corner scheduled for accelerated erosion.
struct ErodingPoint {
    int contour_index = 0;
    int anchor_index = 0; // index into the contour
    Pixel anchor;
    Pixel left_limit;
    Pixel right_limit;
    double angle = 0.0; // enclosed angle at the anchor
    double speed = 1.0; // 1 / sin(angle), clamped
    std::vector<ErodingMember> members; // contiguous along the contour, anchor included
    bool active = true;
};

struct ThinningOptions {
    int cord_length = 15;
    double speed_clamp = 10.0;
    double min_activation_angle = 6.0 * 3.14159265358979323846 / 180.0;
    double straight_cutoff = 0.08; // |angle| below this counts as straight
    int straight_run = 3;          // consecutive straight points ending a corner
    double detect_threshold = 0.8; // accumulation level that marks a corner candidate
};

struct ThinningReport {
    int iterations = 0;
    bool iteration_cap_hit = false;
    size_t eroding_points = 0;
};

/// Classical two-subiteration Zhang-Suen skeleton.
BinaryImage zhang_suen_thin(const BinaryImage &img, ThinningReport *report = nullptr);

/// Border following, outer loops plus hole loops.
std::vector<Contour> trace_contours(const BinaryImage &img);

CurvatureProfile estimate_curvature(const Contour &contour, int cord_length);

std::vector<ErodingPoint> find_eroding_points(const Contour &contour,
                                              const CurvatureProfile &profile,
                                              const ThinningOptions &opt = {});

/// Zhang-Suen with concave corners eroded at speed 1/sin(angle) along the
/// reverse bisector; connectivity-preserving pixels stop a point for good.
BinaryImage unbiased_thin(const BinaryImage &img, const ThinningOptions &opt = {},
                          ThinningReport *report = nullptr);

/// Cells crossed by the segment [a, b], 4-connected chain, in travel order.
std::vector<Pixel> supercover_line(const Vec2 &a, const Vec2 &b);

} // namespace svx
