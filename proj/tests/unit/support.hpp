#pragma once

// Shared fixtures and independent oracles for the test suites. Oracle code
// deliberately avoids the library's own scanning/matching/measure routines.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/bezfit.hpp"
#include "core/image.hpp"

namespace testsupport {

// ---- independent hit-miss oracle ----
//
// Masks are re-typed here from the reference tables and matched by a
// dedicated interpreter over an 8-bit neighborhood encoding
// (bit i = neighbor at offsets (dx, dy) listed in kNeighborOrder).

extern const std::array<std::pair<int, int>, 8> kNeighborOrder;

struct OracleMask {
    // 9 chars, row-major rows top to bottom: '1' hit, '0' miss, 'x' ignore.
    std::array<char, 9> cells;
};

std::vector<OracleMask> oracle_rotations(const OracleMask &m);
std::vector<OracleMask> oracle_junction_masks();
std::vector<OracleMask> oracle_endpoint_masks();
std::vector<OracleMask> oracle_connectivity_masks();
std::vector<OracleMask> oracle_strict8_masks();

/// Does any mask match a foreground center with the given 8-bit neighborhood?
bool oracle_any_match(uint8_t neighborhood, const std::vector<OracleMask> &masks);

// ---- independent measures ----

/// Flood-fill components (independent of the library labeling).
std::vector<std::vector<svx::Pixel>> flood_components(const svx::BinaryImage &img,
                                                      int connectivity);

int euler_number(const svx::BinaryImage &img);

bool has_2x2_block(const svx::BinaryImage &img);

/// Sort-based median filter with edge replication.
svx::GrayImage naive_median(const svx::GrayImage &img, int window);

/// Exhaustive 256-split threshold search.
double naive_otsu(const std::vector<double> &values);

/// Direct correlation-coefficient evaluation (no shared code with linex).
double naive_pcc(const svx::GrayImage &img, const std::vector<double> &weights, int ksize, int x,
                 int y);

/// All-pairs nearest distance from each foreground pixel of `from` to `to`.
double brute_mean_nearest(const svx::BinaryImage &from, const svx::BinaryImage &to);

/// Chord-accumulation angle of a continuous curve, evaluated on exact
/// geometry: samples the curve at unit arc-length spacing and accumulates
/// point-to-chord distances over a sliding cord of `cord` samples.
double geometric_cord_angle(const std::function<svx::Vec2(double)> &curve, double arc_at_point,
                            double total_arc, int cord, bool closed);

/// Dense max distance from each point to the spline, via flattening to a
/// fine polyline (independent of the fitter's projection).
double dense_spline_max_error(const std::vector<svx::Vec2> &points, const svx::BezierSpline &s,
                              int samples_per_segment = 200);

double dense_spline_max_error_px(const std::vector<svx::Pixel> &points, const svx::BezierSpline &s,
                                 int samples_per_segment = 200);

// ---- fixtures ----

void draw_solid_segment(svx::BinaryImage &img, svx::Vec2 a, svx::Vec2 b, double width);

svx::BinaryImage disk_mask(int size, double radius);

/// Thick capital-N shape with constant stroke width; `apexes` receives the
/// two steep inner midline corners.
svx::BinaryImage glyph_n(std::vector<svx::Vec2> &apexes);

/// Two thick crossing diagonals; `apexes` receives the crossing center.
svx::BinaryImage glyph_x(std::vector<svx::Vec2> &apexes);

/// Narrow-fork Y; `apexes` receives the fork point.
svx::BinaryImage glyph_y(std::vector<svx::Vec2> &apexes);

/// Deterministic organic blob mask from thresholded value noise.
svx::BinaryImage random_blob(uint64_t seed, int size = 96);

/// 1-px-wide 8-connected circle outline.
svx::BinaryImage circle_outline(int size, double radius);

/// Plus-shaped skeleton: center pixel and four arms.
svx::BinaryImage plus_skeleton(int size, int arm);

/// Render a gray image with a dark solid line on white ground.
svx::GrayImage line_image(int w, int h, svx::Vec2 a, svx::Vec2 b, double width, double darkness,
                          uint64_t noise_seed = 0, double noise_sigma = 0.0);

/// Pencil-like line: gaussian cross-profile with sigma = width / 3.
svx::GrayImage bell_line_image(int w, int h, svx::Vec2 a, svx::Vec2 b, double width,
                               double darkness);

/// Rasterize spline centerlines into a mask (for round-trip checks).
svx::BinaryImage rasterize_splines(const std::vector<svx::BezierSpline> &splines, int w, int h);

} // namespace testsupport

namespace testsupport {

/// Distance from `target` to the nearest skeleton graph vertex (junction
/// node after strict-8 conversion, or endpoint when no junction exists).
double nearest_vertex_distance(const svx::BinaryImage &skel, const svx::Vec2 &target);

} // namespace testsupport
