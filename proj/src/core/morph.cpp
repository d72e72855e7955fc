#include "core/morph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svx {

HitMissMask HitMissMask::parse(const std::string &spec) {
    HitMissMask m;
    int idx = 0;
    for (char c : spec) {
        if (c == '|') continue;
        if (idx >= 9) throw std::invalid_argument("hit-miss mask spec too long: " + spec);
        m.cells[idx++] = c == '1' ? HIT : (c == '0' ? MISS : IGNORE);
    }
    if (idx != 9) throw std::invalid_argument("hit-miss mask spec too short: " + spec);
    bool any = std::any_of(m.cells.begin(), m.cells.end(), [](Cell c) { return c != IGNORE; });
    if (!any) throw std::invalid_argument("hit-miss mask has no constrained cell");
    return m;
}

HitMissMask HitMissMask::rotated90() const {
    HitMissMask out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out.cells[r * 3 + c] = cells[(2 - c) * 3 + r];
    return out;
}

bool HitMissMask::matches(const BinaryImage &img, int x, int y) const {
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            Cell cell = cells[r * 3 + c];
            if (cell == IGNORE) continue;
            int px = x + c - 1;
            int py = y + r - 1;
            if (!img.inside(px, py)) return false;
            bool fg = img.at(px, py) != 0;
            if (cell == HIT && !fg) return false;
            if (cell == MISS && fg) return false;
        }
    }
    return true;
}

std::vector<HitMissMask> with_rotations(const std::vector<HitMissMask> &base) {
    std::vector<HitMissMask> out;
    for (const auto &m : base) {
        HitMissMask r = m;
        for (int i = 0; i < 4; ++i) {
            if (std::none_of(out.begin(), out.end(),
                             [&](const HitMissMask &o) { return o.cells == r.cells; }))
                out.push_back(r);
            r = r.rotated90();
        }
    }
    return out;
}

namespace {
std::vector<HitMissMask> parse_all(std::initializer_list<const char *> specs) {
    std::vector<HitMissMask> out;
    for (const char *s : specs) out.push_back(HitMissMask::parse(s));
    return with_rotations(out);
}
} // namespace

const std::vector<HitMissMask> &junction_masks() {
    static const std::vector<HitMissMask> masks =
        parse_all({"x1x|010|101", "10x|010|101", "x01|110|x1x"});
    return masks;
}

const std::vector<HitMissMask> &endpoint_masks() {
    static const std::vector<HitMissMask> masks = parse_all({"x1x|010|000", "100|010|000"});
    return masks;
}

const std::vector<HitMissMask> &connectivity_masks() {
    static const std::vector<HitMissMask> masks =
        parse_all({"1xx|x10|x01", "x1x|x10|x01", "x1x|01x|10x",
                   "x1x|010|x1x", "xxx|010|101", "x1x|111|x1x"});
    return masks;
}

const std::vector<HitMissMask> &strict8_masks() {
    static const std::vector<HitMissMask> masks = parse_all({"x1x|x11|0xx"});
    return masks;
}

std::vector<Pixel> hit_miss_scan(const BinaryImage &img, const std::vector<HitMissMask> &masks) {
    if (masks.empty()) throw std::invalid_argument("hit_miss_scan: no masks");
    std::vector<Pixel> out;
    for (int y = 1; y + 1 < img.height; ++y) {
        for (int x = 1; x + 1 < img.width; ++x) {
            if (!img.at(x, y)) continue;
            for (const auto &m : masks) {
                if (m.matches(img, x, y)) {
                    out.push_back({x, y});
                    break;
                }
            }
        }
    }
    return out;
}

BinaryImage hit_miss_erode_inplace(BinaryImage img, const std::vector<HitMissMask> &masks) {
    if (masks.empty()) throw std::invalid_argument("hit_miss_erode_inplace: no masks");
    for (int y = 1; y + 1 < img.height; ++y) {
        for (int x = 1; x + 1 < img.width; ++x) {
            if (!img.at(x, y)) continue;
            for (const auto &m : masks) {
                if (m.matches(img, x, y)) {
                    img.at(x, y) = 0;
                    break;
                }
            }
        }
    }
    return img;
}

std::vector<int32_t> component_labels(const BinaryImage &img, int connectivity) {
    if (connectivity != 4 && connectivity != 8)
        throw std::invalid_argument("connectivity must be 4 or 8");
    static const int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1};
    static const int dy8[] = {0, 0, 1, -1, 1, -1, 1, -1};
    const int ndirs = connectivity == 4 ? 4 : 8;

    std::vector<int32_t> labels(img.bits.size(), -1);
    std::vector<Pixel> stack;
    int32_t next = 0;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!img.at(x, y) || labels[size_t(y) * img.width + x] >= 0) continue;
            int32_t label = next++;
            stack.push_back({x, y});
            labels[size_t(y) * img.width + x] = label;
            while (!stack.empty()) {
                Pixel p = stack.back();
                stack.pop_back();
                for (int d = 0; d < ndirs; ++d) {
                    int nx = p.x + dx8[d], ny = p.y + dy8[d];
                    if (!img.inside(nx, ny) || !img.at(nx, ny)) continue;
                    int32_t &l = labels[size_t(ny) * img.width + nx];
                    if (l < 0) {
                        l = label;
                        stack.push_back({nx, ny});
                    }
                }
            }
        }
    }
    return labels;
}

std::vector<Component> connected_components(const BinaryImage &img, int connectivity) {
    std::vector<int32_t> labels = component_labels(img, connectivity);
    int32_t count = 0;
    for (int32_t l : labels) count = std::max(count, l + 1);
    std::vector<Component> comps{};
    comps.resize(size_t(count));
    for (auto &c : comps) {
        c.min_x = img.width;
        c.min_y = img.height;
        c.max_x = -1;
        c.max_y = -1;
    }
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            int32_t l = labels[size_t(y) * img.width + x];
            if (l < 0) continue;
            Component &c = comps[size_t(l)];
            c.pixels.push_back({x, y});
            c.min_x = std::min(c.min_x, x);
            c.min_y = std::min(c.min_y, y);
            c.max_x = std::max(c.max_x, x);
            c.max_y = std::max(c.max_y, y);
        }
    }
    return comps;
}

namespace {

// Sliding-histogram median over value indices. Exact because the index map
// is monotone; used when the image has few distinct values (8-bit sources).
GrayImage median_by_histogram(const GrayImage &padded, int out_w, int out_h, int window,
                              const std::vector<double> &levels) {
    const int n = window * window;
    const int k = n / 2; // 0-based rank of the median, n odd
    std::vector<int> index(padded.samples.size());
    for (size_t i = 0; i < padded.samples.size(); ++i) {
        index[i] = int(std::lower_bound(levels.begin(), levels.end(), padded.samples[i]) -
                       levels.begin());
    }
    const int nbins = int(levels.size());
    std::vector<int> hist(size_t(nbins), 0);
    GrayImage out(out_w, out_h);
    auto idx_at = [&](int x, int y) { return index[size_t(y) * padded.width + x]; };

    for (int y = 0; y < out_h; ++y) {
        std::fill(hist.begin(), hist.end(), 0);
        for (int wy = 0; wy < window; ++wy)
            for (int wx = 0; wx < window; ++wx) ++hist[idx_at(wx, y + wy)];
        int med = 0, below = 0; // count of items in bins < med
        while (below + hist[med] <= k) below += hist[med++];
        out.at(0, y) = levels[size_t(med)];
        for (int x = 1; x < out_w; ++x) {
            for (int wy = 0; wy < window; ++wy) {
                int rem = idx_at(x - 1, y + wy);
                --hist[rem];
                if (rem < med) --below;
                int add = idx_at(x + window - 1, y + wy);
                ++hist[add];
                if (add < med) ++below;
            }
            while (below > k) below -= hist[--med];
            while (below + hist[med] <= k) below += hist[med++];
            out.at(x, y) = levels[size_t(med)];
        }
    }
    return out;
}

} // namespace

GrayImage median_filter(const GrayImage &img, int window) {
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("median_filter: window must be odd and >= 3");
    const int r = window / 2;
    GrayImage padded(img.width + 2 * r, img.height + 2 * r);
    for (int y = 0; y < padded.height; ++y) {
        int sy = std::clamp(y - r, 0, img.height - 1);
        for (int x = 0; x < padded.width; ++x) {
            int sx = std::clamp(x - r, 0, img.width - 1);
            padded.at(x, y) = img.at(sx, sy);
        }
    }

    std::vector<double> levels = img.samples;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.size() <= 4096)
        return median_by_histogram(padded, img.width, img.height, window, levels);

    GrayImage out(img.width, img.height);
    std::vector<double> buf(size_t(window) * window);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            size_t i = 0;
            for (int wy = 0; wy < window; ++wy)
                for (int wx = 0; wx < window; ++wx) buf[i++] = padded.at(x + wx, y + wy);
            auto mid = buf.begin() + buf.size() / 2;
            std::nth_element(buf.begin(), mid, buf.end());
            out.at(x, y) = *mid;
        }
    }
    return out;
}

double otsu_threshold(const std::vector<double> &values) {
    if (values.empty()) throw std::invalid_argument("otsu_threshold: empty input");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) return lo;

    constexpr int kBins = 256;
    std::array<int64_t, kBins> hist{};
    std::array<double, kBins> sum{};
    const double scale = kBins / (hi - lo);
    for (double v : values) {
        int b = std::min(kBins - 1, int((v - lo) * scale));
        ++hist[size_t(b)];
        sum[size_t(b)] += v;
    }

    double best = -1.0;
    int best_k = 0;
    for (int k = 0; k + 1 < kBins; ++k) {
        int64_t n0 = 0, n1 = 0;
        double s0 = 0.0, s1 = 0.0;
        for (int b = 0; b <= k; ++b) {
            n0 += hist[size_t(b)];
            s0 += sum[size_t(b)];
        }
        for (int b = k + 1; b < kBins; ++b) {
            n1 += hist[size_t(b)];
            s1 += sum[size_t(b)];
        }
        if (n0 == 0 || n1 == 0) continue;
        double m0 = s0 / n0, m1 = s1 / n1;
        // Minimizing intra-class variance == maximizing between-class variance.
        double between = double(n0) * double(n1) * (m0 - m1) * (m0 - m1);
        if (between > best) {
            best = between;
            best_k = k;
        }
    }
    return lo + (best_k + 1) / double(kBins) * (hi - lo);
}

} // namespace svx
