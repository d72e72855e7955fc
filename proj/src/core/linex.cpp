#include "core/linex.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"

namespace svx {

int next_odd(double x) {
    int n = int(std::ceil(x));
    if (double(n) < x) n += 1;
    return n % 2 == 0 ? n + 1 : n;
}

static double gauss(double x, double sigma) { return std::exp(-x * x / (2.0 * sigma * sigma)); }

DotKernel DotKernel::make(double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("DotKernel: sigma must be positive");
    DotKernel k;
    k.sigma = sigma;
    k.size = next_odd(7.0 * sigma);
    int c = k.size / 2;
    std::vector<double> g(size_t(k.size), 0.0);
    for (int i = 0; i < k.size; ++i) g[size_t(i)] = gauss(double(i - c), sigma);
    k.weights.resize(size_t(k.size) * k.size);
    for (int y = 0; y < k.size; ++y)
        for (int x = 0; x < k.size; ++x)
            k.weights[size_t(y) * k.size + x] = g[size_t(x)] * g[size_t(y)];
    return k;
}

KernelPyramid KernelPyramid::build(double w_min, double w_max, double base) {
    if (w_min <= 0.0 || w_max < w_min) throw ConfigError("kernel pyramid: need 0 < w_min <= w_max");
    if (base <= 1.0) throw ConfigError("kernel pyramid: base must exceed 1");
    KernelPyramid p;
    p.w_min = w_min;
    p.w_max = w_max;
    p.base = base;
    int count = int(std::floor(std::log(w_max / w_min) / std::log(base))) + 1;
    double sigma = w_min / 3.0;
    for (int i = 0; i < count; ++i) {
        p.kernels.push_back(DotKernel::make(sigma));
        sigma *= base;
    }
    return p;
}

int LinexConfig::effective_median_window() const {
    if (median_window > 0) return median_window;
    int w = int(std::floor(2.0 * w_max)) + 1;
    return w % 2 == 0 ? w + 1 : w;
}

void LinexConfig::validate() const {
    if (!(w_min > 0.0 && w_min <= w_max)) throw ConfigError("linex: need 0 < w_min <= w_max");
    if (!(base > 1.0)) throw ConfigError("linex: scale base must exceed 1");
    if (!(mpcc_threshold > 0.0 && mpcc_threshold < 1.0))
        throw ConfigError("linex: mpcc threshold must lie in (0, 1)");
    if (min_component_size < 0) throw ConfigError("linex: min component size must be >= 0");
    int mw = effective_median_window();
    if (mw % 2 == 0 || double(mw) <= 2.0 * w_max)
        throw ConfigError("linex: median window must be odd and exceed 2 * w_max");
}

double punctual_pcc(const GrayImage &img, const DotKernel &kernel, int x, int y) {
    const int s = kernel.size;
    const int r = s / 2;
    assert(x - r >= 0 && y - r >= 0 && x + r < img.width && y + r < img.height);

    const double n = double(s) * s;
    double sum_i = 0.0, sum_ii = 0.0, sum_it = 0.0, sum_t = 0.0, sum_tt = 0.0;
    double min_i = img.at(x - r, y - r), max_i = min_i;
    double min_t = kernel.at(0, 0), max_t = min_t;
    for (int wy = 0; wy < s; ++wy) {
        for (int wx = 0; wx < s; ++wx) {
            double iv = img.at(x - r + wx, y - r + wy);
            double tv = kernel.at(wx, wy);
            sum_i += iv;
            sum_ii += iv * iv;
            sum_it += iv * tv;
            sum_t += tv;
            sum_tt += tv * tv;
            min_i = std::min(min_i, iv);
            max_i = std::max(max_i, iv);
            min_t = std::min(min_t, tv);
            max_t = std::max(max_t, tv);
        }
    }
    if (min_i == max_i || min_t == max_t) return 0.0;
    double var_i = sum_ii - sum_i * sum_i / n;
    double var_t = sum_tt - sum_t * sum_t / n;
    if (var_i <= 0.0 || var_t <= 0.0) return 0.0;
    double cov = sum_it - sum_i * sum_t / n;
    double pcc = cov / std::sqrt(var_i * var_t);
    return std::clamp(pcc, -1.0, 1.0);
}

namespace {

// Sliding-window min and max with a monotonic wedge, separable in x then y.
// Exact (no arithmetic), used to detect truly constant windows.
void sliding_minmax(const GrayImage &img, int r, GrayImage &mn, GrayImage &mx) {
    const int w = img.width, h = img.height;
    GrayImage row_mn(w, h), row_mx(w, h);
    std::vector<int> deq(size_t(std::max(w, h)));
    auto pass = [&](auto get, auto put, int len, int count, bool want_min) {
        for (int line = 0; line < count; ++line) {
            int head = 0, tail = 0;
            for (int i = 0; i < len; ++i) {
                double v = get(line, i);
                while (tail > head) {
                    double back = get(line, deq[size_t(tail - 1)]);
                    if (want_min ? back >= v : back <= v) --tail; else break;
                }
                deq[size_t(tail++)] = i;
                if (deq[size_t(head)] <= i - 2 * r - 1) ++head;
                if (i >= 2 * r) put(line, i - r, get(line, deq[size_t(head)]));
            }
        }
    };
    pass([&](int y, int x) { return img.at(x, y); },
         [&](int y, int x, double v) { row_mn.at(x, y) = v; }, w, h, true);
    pass([&](int y, int x) { return img.at(x, y); },
         [&](int y, int x, double v) { row_mx.at(x, y) = v; }, w, h, false);
    mn = GrayImage(w, h);
    mx = GrayImage(w, h);
    pass([&](int x, int y) { return row_mn.at(x, y); },
         [&](int x, int y, double v) { mn.at(x, y) = v; }, h, w, true);
    pass([&](int x, int y) { return row_mx.at(x, y); },
         [&](int x, int y, double v) { mx.at(x, y) = v; }, h, w, false);
}

// Separable correlation of img with the kernel's outer-product weights.
GrayImage separable_correlate(const GrayImage &img, const std::vector<double> &g, int r) {
    GrayImage tmp(img.width, img.height);
    const int s = int(g.size());
    for (int y = 0; y < img.height; ++y) {
        for (int x = r; x + r < img.width; ++x) {
            double acc = 0.0;
            for (int k = 0; k < s; ++k) acc += img.at(x - r + k, y) * g[size_t(k)];
            tmp.at(x, y) = acc;
        }
    }
    GrayImage out(img.width, img.height);
    for (int y = r; y + r < img.height; ++y) {
        for (int x = r; x + r < img.width; ++x) {
            double acc = 0.0;
            for (int k = 0; k < s; ++k) acc += tmp.at(x, y - r + k) * g[size_t(k)];
            out.at(x, y) = acc;
        }
    }
    return out;
}

} // namespace

GrayImage pcc_map(const GrayImage &img, const DotKernel &kernel) {
    const int s = kernel.size;
    const int r = s / 2;
    if (img.width <= s || img.height <= s)
        throw std::invalid_argument("pcc_map: image must be larger than the kernel");

    GrayImage inv = invert(img);

    // Window sums via summed-area tables, kernel correlation separably.
    const int w = img.width, h = img.height;
    std::vector<double> sat(size_t(w + 1) * (h + 1), 0.0);
    std::vector<double> sat2(size_t(w + 1) * (h + 1), 0.0);
    for (int y = 0; y < h; ++y) {
        double row = 0.0, row2 = 0.0;
        for (int x = 0; x < w; ++x) {
            double v = inv.at(x, y);
            row += v;
            row2 += v * v;
            sat[size_t(y + 1) * (w + 1) + x + 1] = sat[size_t(y) * (w + 1) + x + 1] + row;
            sat2[size_t(y + 1) * (w + 1) + x + 1] = sat2[size_t(y) * (w + 1) + x + 1] + row2;
        }
    }
    auto box = [&](const std::vector<double> &t, int x0, int y0, int x1, int y1) {
        return t[size_t(y1 + 1) * (w + 1) + x1 + 1] - t[size_t(y0) * (w + 1) + x1 + 1] -
               t[size_t(y1 + 1) * (w + 1) + x0] + t[size_t(y0) * (w + 1) + x0];
    };

    int c = s / 2;
    std::vector<double> g(size_t(s), 0.0);
    for (int i = 0; i < s; ++i) g[size_t(i)] = gauss(double(i - c), kernel.sigma);
    GrayImage corr = separable_correlate(inv, g, r);
    GrayImage win_min, win_max;
    sliding_minmax(inv, r, win_min, win_max);

    double sum_t = 0.0, sum_tt = 0.0;
    for (double v : kernel.weights) {
        sum_t += v;
        sum_tt += v * v;
    }
    const double n = double(s) * s;
    const double mean_t = sum_t / n;
    const double var_t = sum_tt - sum_t * sum_t / n;

    GrayImage out(w, h, 0.0);
    for (int y = r; y + r < h; ++y) {
        for (int x = r; x + r < w; ++x) {
            if (win_min.at(x, y) == win_max.at(x, y)) continue; // flat window, no correlation
            double sum_i = box(sat, x - r, y - r, x + r, y + r);
            double sum_ii = box(sat2, x - r, y - r, x + r, y + r);
            double var_i = sum_ii - sum_i * sum_i / n;
            if (var_i <= 0.0 || var_t <= 1e-15 * n) continue;
            double cov = corr.at(x, y) - mean_t * sum_i;
            out.at(x, y) = std::clamp(cov / std::sqrt(var_i * var_t), -1.0, 1.0);
        }
    }
    return out;
}

PccStack build_pcc_stack(const GrayImage &img, const KernelPyramid &pyramid) {
    PccStack stack;
    for (const auto &k : pyramid.kernels) {
        stack.layers.push_back(pcc_map(img, k));
        stack.margins.push_back(k.size / 2);
    }
    return stack;
}

GrayImage merge_mpcc(const PccStack &stack) {
    if (stack.layers.empty()) throw std::invalid_argument("merge_mpcc: empty stack");
    const GrayImage &first = stack.layers.front();
    for (const auto &l : stack.layers)
        if (l.width != first.width || l.height != first.height)
            throw std::invalid_argument("merge_mpcc: layer dimension mismatch");

    GrayImage out(first.width, first.height);
    for (size_t i = 0; i < out.samples.size(); ++i) {
        double mx = stack.layers[0].samples[i];
        double mn = mx;
        for (size_t l = 1; l < stack.layers.size(); ++l) {
            double v = stack.layers[l].samples[i];
            mx = std::max(mx, v);
            mn = std::min(mn, v);
        }
        out.samples[i] = std::fabs(mx) > std::fabs(mn) ? mx : mn;
    }
    return out;
}

namespace {

// Fill background pockets that are smaller than min_size and do not touch
// the image border.
void fill_small_holes(BinaryImage &mask, int min_size) {
    BinaryImage bg(mask.width, mask.height);
    for (size_t i = 0; i < mask.bits.size(); ++i) bg.bits[i] = mask.bits[i] ? 0 : 1;
    for (const auto &comp : connected_components(bg, 4)) {
        bool touches_border =
            comp.min_x == 0 || comp.min_y == 0 || comp.max_x == mask.width - 1 ||
            comp.max_y == mask.height - 1;
        if (touches_border || int(comp.size()) >= min_size) continue;
        for (const auto &p : comp.pixels) mask.at(p.x, p.y) = 1;
    }
}

} // namespace

BinaryImage extract_lines_region(const GrayImage &img, const LinexConfig &cfg) {
    cfg.validate();
    KernelPyramid pyramid = KernelPyramid::build(cfg.w_min, cfg.w_max, cfg.base);
    int largest = pyramid.kernels.back().size;
    if (img.width <= largest || img.height <= largest)
        throw std::invalid_argument("extract_lines_region: image smaller than largest kernel");

    PccStack stack = build_pcc_stack(img, pyramid);
    GrayImage mpcc = merge_mpcc(stack);

    BinaryImage mask(img.width, img.height);
    for (size_t i = 0; i < mpcc.samples.size(); ++i)
        mask.bits[i] = mpcc.samples[i] > cfg.mpcc_threshold ? 1 : 0;

    // High-pass darkness of the original image; strokes sit well below the
    // local median, background noise hovers near zero.
    GrayImage med = median_filter(img, cfg.effective_median_window());
    GrayImage high_pass(img.width, img.height);
    for (size_t i = 0; i < img.samples.size(); ++i)
        high_pass.samples[i] = img.samples[i] - med.samples[i];
    // The comparison value is the boundary between the two Otsu classes
    // (midpoint of their means); the raw threshold hugs the dark mode when
    // the split ties across an empty gap.
    double hp_otsu = otsu_threshold(high_pass.samples);
    double m_dark = 0.0, m_light = 0.0;
    size_t n_dark = 0, n_light = 0;
    for (double v : high_pass.samples) {
        if (v < hp_otsu) {
            m_dark += v;
            ++n_dark;
        } else {
            m_light += v;
            ++n_light;
        }
    }
    double separator = hp_otsu;
    if (n_dark > 0 && n_light > 0)
        separator = 0.5 * (m_dark / double(n_dark) + m_light / double(n_light));
    // Guard against a degenerate split when no strokes are present at all:
    // a kept component must also be darker than a small absolute floor.
    const double darkness_floor = -0.02;
    double keep_below = std::min(separator, darkness_floor);

    BinaryImage filtered(img.width, img.height);
    for (const auto &comp : connected_components(mask, 8)) {
        if (int(comp.size()) < cfg.min_component_size) continue;
        double mean_hp = 0.0;
        for (const auto &p : comp.pixels) mean_hp += high_pass.at(p.x, p.y);
        mean_hp /= double(comp.size());
        if (mean_hp >= keep_below) continue;
        for (const auto &p : comp.pixels) filtered.at(p.x, p.y) = 1;
    }

    fill_small_holes(filtered, cfg.min_component_size);
    return filtered;
}

} // namespace svx
