#include "core/evalgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "core/bezfit.hpp"
#include "core/errors.hpp"
#include "core/pathgraph.hpp"
#include "core/thin.hpp"

namespace svx {

void CorruptionConfig::validate() const {
    if (!(width_min > 0.0 && width_min <= width_max))
        throw ConfigError("corrupt: stroke width range is empty");
    if (!(intensity_min >= 0.0 && intensity_min <= intensity_max && intensity_max <= 1.0))
        throw ConfigError("corrupt: intensity range must lie in [0, 1]");
    if (overdraw_min < 1 || overdraw_min > overdraw_max)
        throw ConfigError("corrupt: overdraw range is empty");
    if (!(break_probability >= 0.0 && break_probability <= 1.0))
        throw ConfigError("corrupt: break probability must lie in [0, 1]");
    if (!(break_fraction >= 0.0 && break_fraction <= 1.0))
        throw ConfigError("corrupt: break fraction must lie in [0, 1]");
    if (jitter_amplitude < 0.0 || background_noise_sigma < 0.0 || texture_amplitude < 0.0)
        throw ConfigError("corrupt: amplitudes must be non-negative");
}

namespace {

// 1-D squared distance transform over a sampled function (lower envelope of
// parabolas).
void edt_1d(const std::vector<double> &f, std::vector<double> &d, std::vector<int> &v,
            std::vector<double> &z) {
    const int n = int(f.size());
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            int p = v[size_t(k)];
            s = ((f[size_t(q)] + q * q) - (f[size_t(p)] + p * p)) / (2.0 * q - 2.0 * p);
            if (s <= z[size_t(k)]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[size_t(k)] = q;
        z[size_t(k)] = s;
        z[size_t(k + 1)] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[size_t(k + 1)] < q) ++k;
        int p = v[size_t(k)];
        d[size_t(q)] = double(q - p) * (q - p) + f[size_t(p)];
    }
}

} // namespace

GrayImage distance_transform(const BinaryImage &img) {
    const double inf = 1e18;
    const int w = img.width, h = img.height;
    GrayImage sq(w, h);
    std::vector<double> f(size_t(std::max(w, h))), d(size_t(std::max(w, h)));
    std::vector<int> v(size_t(std::max(w, h)));
    std::vector<double> z(size_t(std::max(w, h)) + 1);

    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) f[size_t(y)] = img.at(x, y) ? 0.0 : inf;
        f.resize(size_t(h));
        edt_1d(f, d, v, z);
        for (int y = 0; y < h; ++y) sq.at(x, y) = d[size_t(y)];
        f.resize(size_t(std::max(w, h)));
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) f[size_t(x)] = sq.at(x, y);
        f.resize(size_t(w));
        edt_1d(f, d, v, z);
        for (int x = 0; x < w; ++x) sq.at(x, y) = std::sqrt(d[size_t(x)]);
        f.resize(size_t(std::max(w, h)));
    }
    return sq;
}

std::pair<double, double> precision_recall(const BinaryImage &pred, const BinaryImage &gt,
                                           double tolerance) {
    if (pred.width != gt.width || pred.height != gt.height)
        throw std::invalid_argument("precision_recall: dimension mismatch");
    auto matched_fraction = [&](const BinaryImage &subject, const BinaryImage &reference) {
        size_t total = 0, hit = 0;
        GrayImage dt = distance_transform(reference);
        for (int y = 0; y < subject.height; ++y) {
            for (int x = 0; x < subject.width; ++x) {
                if (!subject.at(x, y)) continue;
                ++total;
                if (dt.at(x, y) <= tolerance) ++hit;
            }
        }
        return total == 0 ? 1.0 : double(hit) / double(total);
    };
    return {matched_fraction(pred, gt), matched_fraction(gt, pred)};
}

double centerline_distance(const BinaryImage &pred_skel, const BinaryImage &gt_skel) {
    if (pred_skel.width != gt_skel.width || pred_skel.height != gt_skel.height)
        throw std::invalid_argument("centerline_distance: dimension mismatch");
    if (pred_skel.foreground_count() == 0 || gt_skel.foreground_count() == 0)
        throw std::invalid_argument("centerline_distance: empty skeleton");
    auto mean_distance = [&](const BinaryImage &from, const BinaryImage &to) {
        GrayImage dt = distance_transform(to);
        double sum = 0.0;
        size_t count = 0;
        for (int y = 0; y < from.height; ++y) {
            for (int x = 0; x < from.width; ++x) {
                if (!from.at(x, y)) continue;
                sum += dt.at(x, y);
                ++count;
            }
        }
        return sum / double(count);
    };
    return 0.5 * (mean_distance(pred_skel, gt_skel) + mean_distance(gt_skel, pred_skel));
}

namespace {

struct SmoothNoise {
    // Few low-frequency cosines; amplitude-normalized.
    std::vector<double> amp, freq, phase;

    static SmoothNoise make(std::mt19937_64 &rng, double amplitude) {
        SmoothNoise n;
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double total = 0.0;
        for (int i = 0; i < 4; ++i) {
            n.amp.push_back(u01(rng));
            n.freq.push_back(1.0 + 4.0 * u01(rng));
            n.phase.push_back(2.0 * M_PI * u01(rng));
            total += n.amp.back();
        }
        if (total > 0.0)
            for (double &a : n.amp) a *= amplitude / total;
        return n;
    }

    double eval(double t) const {
        double s = 0.0;
        for (size_t i = 0; i < amp.size(); ++i)
            s += amp[i] * std::cos(2.0 * M_PI * freq[i] * t + phase[i]);
        return s;
    }
};

void stamp_stroke(GrayImage &darkness, const std::vector<Vec2> &pts, double width, double peak) {
    const double sigma = width / 3.0;
    const double radius = 2.5 * sigma;
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        Vec2 a = pts[i], b = pts[i + 1];
        double len = distance(a, b);
        int steps = std::max(1, int(std::ceil(len / 0.5)));
        for (int s = 0; s <= steps; ++s) {
            Vec2 c = a + (b - a) * (double(s) / steps);
            int x0 = std::max(0, int(std::floor(c.x - radius)));
            int x1 = std::min(darkness.width - 1, int(std::ceil(c.x + radius)));
            int y0 = std::max(0, int(std::floor(c.y - radius)));
            int y1 = std::min(darkness.height - 1, int(std::ceil(c.y + radius)));
            for (int y = y0; y <= y1; ++y) {
                for (int x = x0; x <= x1; ++x) {
                    double dx = x - c.x, dy = y - c.y;
                    double d2 = dx * dx + dy * dy;
                    if (d2 > radius * radius) continue;
                    double v = peak * std::exp(-d2 * inv);
                    double &cell = darkness.at(x, y);
                    cell = std::max(cell, v);
                }
            }
        }
    }
}

void draw_solid_polyline(BinaryImage &img, const std::vector<Vec2> &pts, double width) {
    double r = std::max(0.5, width / 2.0);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        Vec2 a = pts[i], b = pts[i + 1];
        double len = distance(a, b);
        int steps = std::max(1, int(std::ceil(len / 0.5)));
        for (int s = 0; s <= steps; ++s) {
            Vec2 c = a + (b - a) * (double(s) / steps);
            for (int y = std::max(0, int(std::floor(c.y - r)));
                 y <= std::min(img.height - 1, int(std::ceil(c.y + r))); ++y)
                for (int x = std::max(0, int(std::floor(c.x - r)));
                     x <= std::min(img.width - 1, int(std::ceil(c.x + r))); ++x)
                    if ((x - c.x) * (x - c.x) + (y - c.y) * (y - c.y) <= r * r) img.at(x, y) = 1;
        }
    }
}

std::vector<std::vector<Pixel>> drawing_paths(const BinaryImage &gt) {
    BinaryImage skel = to_strict8(zhang_suen_thin(gt));
    PathGraph g = build_graph(skel);
    std::vector<std::vector<Pixel>> out;
    for (const auto &p : g.paths)
        if (p.points.size() >= 2) out.push_back(p.points);
    // Junction pixels are not part of any path; short bridges re-grow from
    // the junction members so strokes stay connected in the rendering.
    for (const auto &j : g.junctions) {
        for (int pid : j.path_ids) {
            const auto &pts = g.paths[size_t(pid)].points;
            if (pts.empty()) continue;
            const Pixel &tip =
                g.paths[size_t(pid)].start.kind == PathEnd::Kind::Junction ? pts.front()
                                                                           : pts.back();
            out.push_back({tip, j.representative});
        }
    }
    return out;
}

} // namespace

std::pair<GrayImage, BinaryImage> corrupt(const BinaryImage &gt, const CorruptionConfig &cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    double scale = 1.0;
    if (cfg.target_megapixels > 0.0 && gt.width > 0 && gt.height > 0) {
        scale = std::sqrt(cfg.target_megapixels * 1e6 / (double(gt.width) * gt.height));
        if (std::fabs(scale - 1.0) < 0.05) scale = 1.0;
    }
    const int out_w = std::max(8, int(std::lround(gt.width * scale)));
    const int out_h = std::max(8, int(std::lround(gt.height * scale)));

    auto paths = drawing_paths(gt);

    BinaryImage gt_out;
    if (scale == 1.0) {
        gt_out = gt;
    } else {
        gt_out = BinaryImage(out_w, out_h);
        for (const auto &path : paths) {
            std::vector<Vec2> scaled;
            scaled.reserve(path.size());
            for (const auto &p : path) scaled.push_back(to_vec(p) * scale);
            draw_solid_polyline(gt_out, scaled, std::max(1.0, scale));
        }
    }

    GrayImage darkness(out_w, out_h, 0.0);
    for (const auto &path : paths) {
        std::vector<double> arc(path.size(), 0.0);
        for (size_t i = 1; i < path.size(); ++i)
            arc[i] = arc[i - 1] + distance(path[i - 1], path[i]);
        double total = std::max(arc.back(), 1e-9);

        int overdraws = cfg.overdraw_min +
                        int(u01(rng) * double(cfg.overdraw_max - cfg.overdraw_min + 1));
        overdraws = std::min(overdraws, cfg.overdraw_max);
        for (int pass = 0; pass < overdraws; ++pass) {
            double width = cfg.width_min + u01(rng) * (cfg.width_max - cfg.width_min);
            double peak = cfg.intensity_min + u01(rng) * (cfg.intensity_max - cfg.intensity_min);
            SmoothNoise jx = SmoothNoise::make(rng, cfg.jitter_amplitude);
            SmoothNoise jy = SmoothNoise::make(rng, cfg.jitter_amplitude);
            bool broken = u01(rng) < cfg.break_probability;
            double break_start = u01(rng) * (1.0 - cfg.break_fraction);
            double break_end = break_start + cfg.break_fraction;

            std::vector<Vec2> run;
            for (size_t i = 0; i < path.size(); ++i) {
                double t = arc[i] / total;
                if (broken && t >= break_start && t <= break_end) {
                    if (run.size() >= 2) stamp_stroke(darkness, run, width, peak);
                    run.clear();
                    continue;
                }
                Vec2 p = to_vec(path[i]) * scale;
                run.push_back({p.x + jx.eval(t), p.y + jy.eval(t)});
            }
            if (run.size() >= 2) stamp_stroke(darkness, run, width, peak);
        }
    }

    // Paper texture: bilinear interpolation of a coarse random grid.
    constexpr int kGrid = 7;
    std::array<double, kGrid * kGrid> grid{};
    for (auto &v : grid) v = (2.0 * u01(rng) - 1.0) * cfg.texture_amplitude;

    std::normal_distribution<double> gauss_noise(0.0, 1.0);
    const double bg = 0.92;
    GrayImage out(out_w, out_h);
    for (int y = 0; y < out_h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            double gx = double(x) / out_w * (kGrid - 1);
            double gy = double(y) / out_h * (kGrid - 1);
            int ix = std::min(int(gx), kGrid - 2), iy = std::min(int(gy), kGrid - 2);
            double fx = gx - ix, fy = gy - iy;
            double tex = grid[size_t(iy * kGrid + ix)] * (1 - fx) * (1 - fy) +
                         grid[size_t(iy * kGrid + ix + 1)] * fx * (1 - fy) +
                         grid[size_t((iy + 1) * kGrid + ix)] * (1 - fx) * fy +
                         grid[size_t((iy + 1) * kGrid + ix + 1)] * fx * fy;
            double noise = cfg.background_noise_sigma > 0.0
                               ? gauss_noise(rng) * cfg.background_noise_sigma
                               : 0.0;
            double v = bg + tex + noise - darkness.at(x, y);
            v = std::clamp(v, 0.0, 1.0);
            out.at(x, y) = std::round(v * 255.0) / 255.0; // 8-bit quantization
        }
    }
    return {std::move(out), std::move(gt_out)};
}

BinaryImage generate_line_drawing(int width, int height, int strokes, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    BinaryImage out(width, height);
    const double margin = 0.1;
    auto rand_point = [&]() {
        return Vec2{(margin + (1.0 - 2.0 * margin) * u01(rng)) * width,
                    (margin + (1.0 - 2.0 * margin) * u01(rng)) * height};
    };
    for (int s = 0; s < strokes; ++s) {
        CubicBezier c;
        c.b0 = rand_point();
        c.b1 = rand_point();
        c.b2 = rand_point();
        c.b3 = rand_point();
        Vec2 prev = c.eval(0.0);
        int steps = 4 * std::max(width, height);
        for (int i = 1; i <= steps; ++i) {
            Vec2 p = c.eval(double(i) / steps);
            for (const auto &cell : supercover_line(prev, p)) {
                if (cell.x >= 0 && cell.x < width && cell.y >= 0 && cell.y < height)
                    out.at(cell.x, cell.y) = 1;
            }
            prev = p;
        }
    }
    return out;
}

} // namespace svx
