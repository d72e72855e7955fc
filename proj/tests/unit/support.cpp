#include "unit/support.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "core/morph.hpp"
#include "core/thin.hpp"

namespace testsupport {

const std::array<std::pair<int, int>, 8> kNeighborOrder = {{
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1},
}};

namespace {

OracleMask from_string(const char *s) {
    OracleMask m{};
    for (int i = 0; i < 9; ++i) m.cells[size_t(i)] = s[i];
    return m;
}

} // namespace

std::vector<OracleMask> oracle_rotations(const OracleMask &m) {
    // Rotate the 3x3 grid a quarter turn at a time; collect distinct results.
    auto rot = [](const OracleMask &in) {
        OracleMask out{};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) out.cells[size_t(r * 3 + c)] = in.cells[size_t((2 - c) * 3 + r)];
        return out;
    };
    std::vector<OracleMask> out;
    OracleMask cur = m;
    for (int i = 0; i < 4; ++i) {
        bool dup = false;
        for (const auto &o : out) dup = dup || o.cells == cur.cells;
        if (!dup) out.push_back(cur);
        cur = rot(cur);
    }
    return out;
}

namespace {

std::vector<OracleMask> expand(std::initializer_list<const char *> specs) {
    std::vector<OracleMask> out;
    for (const char *s : specs)
        for (const auto &r : oracle_rotations(from_string(s))) out.push_back(r);
    return out;
}

} // namespace

std::vector<OracleMask> oracle_junction_masks() {
    return expand({"x1x010101", "10x010101", "x01110x1x"});
}
std::vector<OracleMask> oracle_endpoint_masks() { return expand({"x1x010000", "100010000"}); }
std::vector<OracleMask> oracle_connectivity_masks() {
    return expand({"1xxx10x01", "x1xx10x01", "x1x01x10x", "x1x010x1x", "xxx010101", "x1x111x1x"});
}
std::vector<OracleMask> oracle_strict8_masks() { return expand({"x1xx110xx"}); }

bool oracle_any_match(uint8_t neighborhood, const std::vector<OracleMask> &masks) {
    // Decode the neighborhood into a 3x3 boolean grid with the center set.
    bool grid[3][3] = {};
    grid[1][1] = true;
    for (int i = 0; i < 8; ++i) {
        auto [dx, dy] = kNeighborOrder[size_t(i)];
        grid[dy + 1][dx + 1] = (neighborhood >> i) & 1;
    }
    for (const auto &m : masks) {
        bool ok = true;
        for (int r = 0; r < 3 && ok; ++r) {
            for (int c = 0; c < 3 && ok; ++c) {
                char want = m.cells[size_t(r * 3 + c)];
                if (want == '1' && !grid[r][c]) ok = false;
                if (want == '0' && grid[r][c]) ok = false;
            }
        }
        if (ok) return true;
    }
    return false;
}

std::vector<std::vector<svx::Pixel>> flood_components(const svx::BinaryImage &img,
                                                      int connectivity) {
    std::vector<std::vector<svx::Pixel>> out;
    std::vector<uint8_t> seen(img.bits.size(), 0);
    auto idx = [&](int x, int y) { return size_t(y) * img.width + x; };
    for (int sy = 0; sy < img.height; ++sy) {
        for (int sx = 0; sx < img.width; ++sx) {
            if (!img.at(sx, sy) || seen[idx(sx, sy)]) continue;
            std::vector<svx::Pixel> comp;
            std::deque<svx::Pixel> queue{{sx, sy}};
            seen[idx(sx, sy)] = 1;
            while (!queue.empty()) {
                svx::Pixel p = queue.front();
                queue.pop_front();
                comp.push_back(p);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        if (connectivity == 4 && dx != 0 && dy != 0) continue;
                        int nx = p.x + dx, ny = p.y + dy;
                        if (!img.inside(nx, ny) || !img.at(nx, ny) || seen[idx(nx, ny)]) continue;
                        seen[idx(nx, ny)] = 1;
                        queue.push_back({nx, ny});
                    }
                }
            }
            out.push_back(std::move(comp));
        }
    }
    return out;
}

int euler_number(const svx::BinaryImage &img) {
    int components = int(flood_components(img, 8).size());
    svx::BinaryImage bg(img.width, img.height);
    for (size_t i = 0; i < img.bits.size(); ++i) bg.bits[i] = img.bits[i] ? 0 : 1;
    int holes = 0;
    for (const auto &comp : flood_components(bg, 4)) {
        bool border = false;
        for (const auto &p : comp)
            border = border || p.x == 0 || p.y == 0 || p.x == img.width - 1 || p.y == img.height - 1;
        if (!border) ++holes;
    }
    return components - holes;
}

bool has_2x2_block(const svx::BinaryImage &img) {
    for (int y = 0; y + 1 < img.height; ++y)
        for (int x = 0; x + 1 < img.width; ++x)
            if (img.at(x, y) && img.at(x + 1, y) && img.at(x, y + 1) && img.at(x + 1, y + 1))
                return true;
    return false;
}

svx::GrayImage naive_median(const svx::GrayImage &img, int window) {
    int r = window / 2;
    svx::GrayImage out(img.width, img.height);
    std::vector<double> buf;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            buf.clear();
            for (int wy = -r; wy <= r; ++wy) {
                for (int wx = -r; wx <= r; ++wx) {
                    int sx = std::clamp(x + wx, 0, img.width - 1);
                    int sy = std::clamp(y + wy, 0, img.height - 1);
                    buf.push_back(img.at(sx, sy));
                }
            }
            std::sort(buf.begin(), buf.end());
            out.at(x, y) = buf[buf.size() / 2];
        }
    }
    return out;
}

double naive_otsu(const std::vector<double> &values) {
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) return lo;
    std::array<int64_t, 256> hist{};
    std::array<double, 256> sum{};
    for (double v : values) {
        int b = std::min(255, int((v - lo) * 256.0 / (hi - lo)));
        ++hist[size_t(b)];
        sum[size_t(b)] += v;
    }
    double best = -1.0;
    int best_k = 0;
    for (int k = 0; k + 1 < 256; ++k) {
        int64_t n0 = 0, n1 = 0;
        double s0 = 0, s1 = 0;
        for (int b = 0; b <= k; ++b) {
            n0 += hist[size_t(b)];
            s0 += sum[size_t(b)];
        }
        for (int b = k + 1; b < 256; ++b) {
            n1 += hist[size_t(b)];
            s1 += sum[size_t(b)];
        }
        if (n0 == 0 || n1 == 0) continue;
        double m0 = s0 / n0, m1 = s1 / n1;
        double between = double(n0) * double(n1) * (m0 - m1) * (m0 - m1);
        if (between > best) {
            best = between;
            best_k = k;
        }
    }
    return lo + (best_k + 1) / 256.0 * (hi - lo);
}

double naive_pcc(const svx::GrayImage &img, const std::vector<double> &weights, int ksize, int x,
                 int y) {
    int r = ksize / 2;
    int n = ksize * ksize;
    double mi = 0.0, mt = 0.0;
    for (int wy = 0; wy < ksize; ++wy) {
        for (int wx = 0; wx < ksize; ++wx) {
            mi += img.at(x - r + wx, y - r + wy);
            mt += weights[size_t(wy * ksize + wx)];
        }
    }
    mi /= n;
    mt /= n;
    double cov = 0.0, vi = 0.0, vt = 0.0;
    for (int wy = 0; wy < ksize; ++wy) {
        for (int wx = 0; wx < ksize; ++wx) {
            double a = img.at(x - r + wx, y - r + wy) - mi;
            double b = weights[size_t(wy * ksize + wx)] - mt;
            cov += a * b;
            vi += a * a;
            vt += b * b;
        }
    }
    if (vi <= 1e-14 || vt <= 1e-14) return 0.0;
    return cov / std::sqrt(vi * vt);
}

double brute_mean_nearest(const svx::BinaryImage &from, const svx::BinaryImage &to) {
    std::vector<svx::Pixel> src, dst;
    for (int y = 0; y < from.height; ++y)
        for (int x = 0; x < from.width; ++x)
            if (from.at(x, y)) src.push_back({x, y});
    for (int y = 0; y < to.height; ++y)
        for (int x = 0; x < to.width; ++x)
            if (to.at(x, y)) dst.push_back({x, y});
    double total = 0.0;
    for (const auto &s : src) {
        double best = 1e300;
        for (const auto &d : dst) best = std::min(best, svx::distance(s, d));
        total += best;
    }
    return total / double(src.size());
}

double geometric_cord_angle(const std::function<svx::Vec2(double)> &curve, double arc_at_point,
                            double total_arc, int cord, bool closed) {
    auto sample = [&](double s) {
        if (closed) s = std::fmod(std::fmod(s, total_arc) + total_arc, total_arc);
        return curve(s);
    };
    svx::Vec2 p = sample(arc_at_point);
    double acc = 0.0;
    for (int k = 1; k < cord; ++k) {
        svx::Vec2 a = sample(arc_at_point - k);
        svx::Vec2 b = sample(arc_at_point - k + cord);
        svx::Vec2 ab = b - a;
        double len = ab.norm();
        if (len <= 0) continue;
        acc += std::fabs(ab.cross(p - a)) / len;
    }
    return 6.0 * acc / (double(cord) * cord);
}

double dense_spline_max_error(const std::vector<svx::Vec2> &points, const svx::BezierSpline &s,
                              int samples_per_segment) {
    std::vector<svx::Vec2> poly;
    for (const auto &seg : s.segments)
        for (int i = 0; i <= samples_per_segment; ++i)
            poly.push_back(seg.eval(double(i) / samples_per_segment));
    double worst = 0.0;
    for (const auto &p : points) {
        double best = 1e300;
        for (size_t i = 0; i + 1 < poly.size(); ++i) {
            svx::Vec2 a = poly[i], b = poly[i + 1];
            svx::Vec2 ab = b - a;
            double denom = ab.dot(ab);
            double t = denom > 0 ? std::clamp((p - a).dot(ab) / denom, 0.0, 1.0) : 0.0;
            best = std::min(best, (a + ab * t - p).norm());
        }
        worst = std::max(worst, best);
    }
    return worst;
}

double dense_spline_max_error_px(const std::vector<svx::Pixel> &points, const svx::BezierSpline &s,
                                 int samples_per_segment) {
    std::vector<svx::Vec2> v;
    for (const auto &p : points) v.push_back(svx::to_vec(p));
    return dense_spline_max_error(v, s, samples_per_segment);
}

void draw_solid_segment(svx::BinaryImage &img, svx::Vec2 a, svx::Vec2 b, double width) {
    double r = width / 2.0;
    int x0 = std::max(0, int(std::floor(std::min(a.x, b.x) - r - 1)));
    int x1 = std::min(img.width - 1, int(std::ceil(std::max(a.x, b.x) + r + 1)));
    int y0 = std::max(0, int(std::floor(std::min(a.y, b.y) - r - 1)));
    int y1 = std::min(img.height - 1, int(std::ceil(std::max(a.y, b.y) + r + 1)));
    svx::Vec2 ab = b - a;
    double denom = ab.dot(ab);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            svx::Vec2 p{double(x), double(y)};
            double t = denom > 0 ? std::clamp((p - a).dot(ab) / denom, 0.0, 1.0) : 0.0;
            if ((a + ab * t - p).norm() <= r) img.at(x, y) = 1;
        }
    }
}

svx::BinaryImage disk_mask(int size, double radius) {
    svx::BinaryImage img(size, size);
    double c = size / 2.0;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            if (std::hypot(x - c, y - c) <= radius) img.at(x, y) = 1;
    return img;
}

svx::BinaryImage glyph_n(std::vector<svx::Vec2> &apexes) {
    // Two vertical bars joined by a steep diagonal, constant stroke width.
    const int w = 200, h = 220;
    const double sw = 14.0;
    svx::BinaryImage img(w, h);
    svx::Vec2 lt{40, 30}, lb{40, 190}, rt{160, 30}, rb{160, 190};
    draw_solid_segment(img, lt, lb, sw);
    draw_solid_segment(img, rt, rb, sw);
    draw_solid_segment(img, lt, rb, sw);
    apexes = {lt, rb}; // midline corners where the diagonal meets each bar
    return img;
}

svx::BinaryImage glyph_x(std::vector<svx::Vec2> &apexes) {
    const int w = 200, h = 200;
    const double sw = 14.0;
    svx::BinaryImage img(w, h);
    draw_solid_segment(img, {40, 30}, {160, 170}, sw);
    draw_solid_segment(img, {160, 30}, {40, 170}, sw);
    apexes = {{100, 100}};
    return img;
}

svx::BinaryImage glyph_y(std::vector<svx::Vec2> &apexes) {
    const int w = 200, h = 220;
    const double sw = 14.0;
    svx::BinaryImage img(w, h);
    svx::Vec2 fork{100, 120};
    draw_solid_segment(img, {60, 30}, fork, sw);
    draw_solid_segment(img, {140, 30}, fork, sw);
    draw_solid_segment(img, fork, {100, 200}, sw);
    apexes = {fork};
    return img;
}

svx::BinaryImage random_blob(uint64_t seed, int size) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    constexpr int kGrid = 6;
    std::array<double, kGrid * kGrid> grid{};
    for (auto &v : grid) v = u01(rng);
    svx::BinaryImage img(size, size);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            double gx = double(x) / size * (kGrid - 1);
            double gy = double(y) / size * (kGrid - 1);
            int ix = std::min(int(gx), kGrid - 2), iy = std::min(int(gy), kGrid - 2);
            double fx = gx - ix, fy = gy - iy;
            double v = grid[size_t(iy * kGrid + ix)] * (1 - fx) * (1 - fy) +
                       grid[size_t(iy * kGrid + ix + 1)] * fx * (1 - fy) +
                       grid[size_t((iy + 1) * kGrid + ix)] * (1 - fx) * fy +
                       grid[size_t((iy + 1) * kGrid + ix + 1)] * fx * fy;
            if (v > 0.55 && x > 0 && y > 0 && x < size - 1 && y < size - 1) img.at(x, y) = 1;
        }
    }
    return img;
}

svx::BinaryImage circle_outline(int size, double radius) {
    svx::BinaryImage img(size, size);
    double c = size / 2.0;
    int steps = int(radius * 16);
    svx::Vec2 prev{c + radius, c};
    for (int i = 1; i <= steps; ++i) {
        double a = 2.0 * M_PI * i / steps;
        svx::Vec2 p{c + radius * std::cos(a), c + radius * std::sin(a)};
        for (const auto &cell : svx::supercover_line(prev, p))
            if (img.inside(cell.x, cell.y)) img.at(cell.x, cell.y) = 1;
        prev = p;
    }
    return img;
}

svx::BinaryImage plus_skeleton(int size, int arm) {
    svx::BinaryImage img(size, size);
    int c = size / 2;
    for (int d = -arm; d <= arm; ++d) {
        img.at(c + d, c) = 1;
        img.at(c, c + d) = 1;
    }
    return img;
}

svx::GrayImage line_image(int w, int h, svx::Vec2 a, svx::Vec2 b, double width, double darkness,
                          uint64_t noise_seed, double noise_sigma) {
    svx::GrayImage img(w, h, 1.0);
    svx::BinaryImage stroke(w, h);
    draw_solid_segment(stroke, a, b, width);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (stroke.at(x, y)) img.at(x, y) = 1.0 - darkness;
    if (noise_sigma > 0.0) {
        std::mt19937_64 rng(noise_seed);
        std::normal_distribution<double> n(0.0, noise_sigma);
        for (auto &v : img.samples) v = std::clamp(v + n(rng), 0.0, 1.0);
    }
    return img;
}

svx::GrayImage bell_line_image(int w, int h, svx::Vec2 a, svx::Vec2 b, double width,
                               double darkness) {
    svx::GrayImage img(w, h, 1.0);
    svx::Vec2 ab = b - a;
    double denom = ab.dot(ab);
    double sigma = width / 3.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            svx::Vec2 p{double(x), double(y)};
            double t = denom > 0 ? std::clamp((p - a).dot(ab) / denom, 0.0, 1.0) : 0.0;
            double d = (a + ab * t - p).norm();
            img.at(x, y) = 1.0 - darkness * std::exp(-d * d / (2.0 * sigma * sigma));
        }
    }
    return img;
}

svx::BinaryImage rasterize_splines(const std::vector<svx::BezierSpline> &splines, int w, int h) {
    svx::BinaryImage img(w, h);
    for (const auto &s : splines) {
        for (const auto &seg : s.segments) {
            svx::Vec2 prev = seg.eval(0.0);
            const int steps = 256;
            for (int i = 1; i <= steps; ++i) {
                svx::Vec2 p = seg.eval(double(i) / steps);
                for (const auto &cell : svx::supercover_line(prev, p))
                    if (img.inside(cell.x, cell.y)) img.at(cell.x, cell.y) = 1;
                prev = p;
            }
        }
    }
    return img;
}

} // namespace testsupport

#include "core/pathgraph.hpp"

namespace testsupport {

double nearest_vertex_distance(const svx::BinaryImage &skel, const svx::Vec2 &target) {
    svx::BinaryImage s8 = svx::to_strict8(skel);
    svx::PathGraph g = svx::build_graph(s8);
    double best = 1e300;
    for (const auto &j : g.junctions)
        best = std::min(best, (svx::to_vec(j.representative) - target).norm());
    if (g.junctions.empty())
        for (const auto &e : g.endpoints)
            best = std::min(best, (svx::to_vec(e) - target).norm());
    return best;
}

} // namespace testsupport
