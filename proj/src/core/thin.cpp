#include "core/thin.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "core/morph.hpp"

namespace svx {

namespace {

// Neighbors indexed p2..p9 clockwise from north.
inline int neighbor_sum(const BinaryImage &img, int x, int y, std::array<bool, 8> &p) {
    p[0] = img.get(x, y - 1);     // N
    p[1] = img.get(x + 1, y - 1); // NE
    p[2] = img.get(x + 1, y);     // E
    p[3] = img.get(x + 1, y + 1); // SE
    p[4] = img.get(x, y + 1);     // S
    p[5] = img.get(x - 1, y + 1); // SW
    p[6] = img.get(x - 1, y);     // W
    p[7] = img.get(x - 1, y - 1); // NW
    int b = 0;
    for (bool v : p) b += v ? 1 : 0;
    return b;
}

inline int transitions(const std::array<bool, 8> &p) {
    int a = 0;
    for (int i = 0; i < 8; ++i)
        if (!p[i] && p[(i + 1) % 8]) ++a;
    return a;
}

bool zs_subiteration(BinaryImage &img, int phase, std::vector<Pixel> &marked) {
    marked.clear();
    std::array<bool, 8> p;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!img.at(x, y)) continue;
            int b = neighbor_sum(img, x, y, p);
            if (b < 2 || b > 6) continue;
            if (transitions(p) != 1) continue;
            bool n = p[0], e = p[2], s = p[4], w = p[6];
            if (phase == 0) {
                if ((n && e && s) || (e && s && w)) continue;
            } else {
                if ((n && e && w) || (n && s && w)) continue;
            }
            marked.push_back({x, y});
        }
    }
    for (const auto &m : marked) img.at(m.x, m.y) = 0;
    return !marked.empty();
}

bool zs_iteration(BinaryImage &img, std::vector<Pixel> &scratch) {
    bool a = zs_subiteration(img, 0, scratch);
    bool b = zs_subiteration(img, 1, scratch);
    return a || b;
}

} // namespace

BinaryImage zhang_suen_thin(const BinaryImage &img, ThinningReport *report) {
    BinaryImage skel = img;
    std::vector<Pixel> scratch;
    const int cap = 10 * std::max(img.width, img.height);
    int iter = 0;
    while (zs_iteration(skel, scratch)) {
        if (++iter > cap) {
            if (report) report->iteration_cap_hit = true;
            break;
        }
    }
    if (report) report->iterations = iter;
    return skel;
}

namespace {

// Clockwise on screen (y down), starting west.
constexpr int kTraceDx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
constexpr int kTraceDy[8] = {0, -1, -1, -1, 0, 1, 1, 1};

int direction_index(Pixel from, Pixel to) {
    for (int i = 0; i < 8; ++i)
        if (from.x + kTraceDx[i] == to.x && from.y + kTraceDy[i] == to.y) return i;
    return 0;
}

// Moore neighbor tracing; backtrack starts at `back` (a background pixel
// adjacent to `start`). Stops when the first advance repeats.
std::vector<Pixel> moore_trace(const BinaryImage &img, Pixel start, Pixel back) {
    std::vector<Pixel> pts{start};
    Pixel cur = start, b = back;
    Pixel first_arrival{-1, -1}, first_back{-1, -1};
    const size_t cap = 4 * img.foreground_count() + 8;
    for (size_t step = 0; step < cap; ++step) {
        int bi = direction_index(cur, b);
        Pixel next{-1, -1}, nb = b;
        for (int k = 1; k <= 8; ++k) {
            int d = (bi + k) % 8;
            Pixel probe{cur.x + kTraceDx[d], cur.y + kTraceDy[d]};
            if (img.get(probe.x, probe.y)) {
                next = probe;
                break;
            }
            nb = probe;
        }
        if (next.x < 0) break; // isolated pixel
        if (step == 0) {
            first_arrival = next;
            first_back = nb;
        } else if (next == first_arrival && nb == first_back) {
            break;
        }
        pts.push_back(next);
        cur = next;
        b = nb;
    }
    if (pts.size() > 1 && pts.back() == pts.front()) pts.pop_back();
    return pts;
}

} // namespace

std::vector<Contour> trace_contours(const BinaryImage &img) {
    std::vector<Contour> out;

    std::vector<int32_t> fg_labels = component_labels(img, 8);
    int32_t nfg = 0;
    for (int32_t l : fg_labels) nfg = std::max(nfg, l + 1);
    std::vector<bool> fg_done(size_t(nfg), false);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            int32_t l = fg_labels[size_t(y) * img.width + x];
            if (l < 0 || fg_done[size_t(l)]) continue;
            fg_done[size_t(l)] = true;
            Contour c;
            c.outer = true;
            c.points = moore_trace(img, {x, y}, {x - 1, y});
            out.push_back(std::move(c));
        }
    }

    BinaryImage bg(img.width, img.height);
    for (size_t i = 0; i < img.bits.size(); ++i) bg.bits[i] = img.bits[i] ? 0 : 1;
    std::vector<int32_t> bg_labels = component_labels(bg, 4);
    int32_t nbg = 0;
    for (int32_t l : bg_labels) nbg = std::max(nbg, l + 1);
    std::vector<uint8_t> touches_border(size_t(nbg), 0), bg_done(size_t(nbg), 0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            bool border = x == 0 || y == 0 || x == img.width - 1 || y == img.height - 1;
            int32_t l = bg_labels[size_t(y) * img.width + x];
            if (l >= 0 && border) touches_border[size_t(l)] = 1;
        }
    }
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            int32_t l = bg_labels[size_t(y) * img.width + x];
            if (l < 0 || bg_done[size_t(l)] || touches_border[size_t(l)]) continue;
            bg_done[size_t(l)] = 1;
            // First hole pixel in scan order has foreground directly above.
            Contour c;
            c.outer = false;
            c.points = moore_trace(img, {x, y - 1}, {x, y});
            out.push_back(std::move(c));
        }
    }
    return out;
}

CurvatureProfile estimate_curvature(const Contour &contour, int cord_length) {
    CurvatureProfile prof;
    prof.cord_length = cord_length;
    const int n = int(contour.points.size());
    prof.angle.assign(size_t(std::max(n, 0)), 0.0);
    if (n < cord_length || cord_length < 2) return prof;

    const double norm = 6.0 / (double(cord_length) * cord_length);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0, side = 0.0;
        Vec2 p = to_vec(contour.points[size_t(i)]);
        for (int k = 1; k < cord_length; ++k) {
            Vec2 a = to_vec(contour.points[size_t(((i - k) % n + n) % n)]);
            Vec2 b = to_vec(contour.points[size_t((i - k + cord_length) % n)]);
            Vec2 ab = b - a;
            double len = ab.norm();
            if (len <= 0.0) continue;
            double cross = ab.cross(p - a);
            acc += std::fabs(cross) / len;
            side += cross;
        }
        // Outer contours run clockwise on screen with material on the right,
        // so a positive cross means the point bulges into the material side:
        // a concave corner.
        prof.angle[size_t(i)] = (side >= 0.0 ? 1.0 : -1.0) * acc * norm;
    }
    return prof;
}

namespace {

// Walk away from `origin` until `run` consecutive near-zero curvature points
// appear; returns the index of the first point of that straight run, or -1.
int walk_to_straight(const CurvatureProfile &prof, int origin, int step, int max_steps,
                     double cutoff, int run) {
    const int n = int(prof.angle.size());
    int consecutive = 0;
    for (int s = 1; s <= max_steps && s < n; ++s) {
        int idx = ((origin + step * s) % n + n) % n;
        if (std::fabs(prof.angle[size_t(idx)]) < cutoff) {
            if (++consecutive >= run) {
                int first = ((origin + step * (s - run + 1)) % n + n) % n;
                return first;
            }
        } else {
            consecutive = 0;
        }
    }
    return -1;
}

// Direction of the contour wall leaving index `from` toward index `to`
// (circular walk), least squares over at most `cap` points and oriented
// away from `from`. A 2-point secant would be biased wide by the blunt
// rasterized notch tip.
Vec2 wall_direction(const Contour &contour, int from, int to, int step, int cap = 25) {
    const int n = int(contour.points.size());
    int span = ((to - from) * step % n + n) % n;
    int count = std::min(span, cap);
    if (count < 1) return Vec2{0, 0};
    Vec2 base = to_vec(contour.points[size_t(from)]);
    Vec2 mean{0, 0};
    std::vector<Vec2> pts;
    for (int k = 1; k <= count; ++k) {
        int idx = ((from + step * k) % n + n) % n;
        pts.push_back(to_vec(contour.points[size_t(idx)]));
        mean += pts.back();
    }
    mean = mean / double(count);
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto &q : pts) {
        Vec2 d = q - mean;
        sxx += d.x * d.x;
        sxy += d.x * d.y;
        syy += d.y * d.y;
    }
    double tr = sxx + syy, det = sxx * syy - sxy * sxy;
    double lambda = tr / 2.0 + std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
    Vec2 dir = std::fabs(sxy) > 1e-12 ? Vec2{lambda - syy, sxy}
                                      : (sxx >= syy ? Vec2{1, 0} : Vec2{0, 1});
    dir = dir.normalized();
    if (dir.dot(pts.back() - base) < 0.0) dir = dir * -1.0;
    if ((pts.back() - base).norm() < 1e-9) return Vec2{0, 0};
    return dir;
}

ErodingMember make_member(const Contour &contour, int idx, int left_idx, int right_idx,
                          const ThinningOptions &opt) {
    ErodingMember m;
    m.position = to_vec(contour.points[size_t(idx)]);
    Vec2 u = wall_direction(contour, idx, left_idx, -1);
    Vec2 w = wall_direction(contour, idx, right_idx, +1);
    if (u.norm() < 0.5 || w.norm() < 0.5) {
        m.angle = M_PI; // degenerate, caller rejects
        m.direction = Vec2{0, 0};
        m.speed = 1.0;
        return m;
    }
    double c = std::clamp(u.dot(w), -1.0, 1.0);
    m.angle = std::acos(c);
    m.direction = (u + w).normalized() * -1.0;
    double s = std::sin(std::max(m.angle, 1e-6));
    m.speed = std::min(1.0 / s, opt.speed_clamp);
    return m;
}

} // namespace

std::vector<ErodingPoint> find_eroding_points(const Contour &contour,
                                              const CurvatureProfile &profile,
                                              const ThinningOptions &opt) {
    std::vector<ErodingPoint> out;
    const int n = int(contour.points.size());
    if (n < profile.cord_length || n < 4) return out;
    const int half = profile.cord_length / 2;

    // Rasterized diagonal edges ripple around zero; a short box filter keeps
    // the straight-run cutoff meaningful on them.
    CurvatureProfile smoothed = profile;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int d = -2; d <= 2; ++d) acc += profile.angle[size_t(((i + d) % n + n) % n)];
        smoothed.angle[size_t(i)] = acc / 5.0;
    }
    const CurvatureProfile &prof = smoothed;

    int suppressed_until = -1;
    for (int i = 0; i < n; ++i) {
        double a = prof.angle[size_t(i)];
        if (a < opt.detect_threshold || i <= suppressed_until) continue;
        bool is_max = true;
        for (int d = -half; d <= half && is_max; ++d) {
            if (d == 0) continue;
            double v = prof.angle[size_t(((i + d) % n + n) % n)];
            if (v > a || (v == a && d < 0)) is_max = false;
        }
        if (!is_max) continue;

        const int max_walk = std::min(n - 1, 6 * profile.cord_length);
        int li = walk_to_straight(prof, i, -1, max_walk, opt.straight_cutoff, opt.straight_run);
        int ri = walk_to_straight(prof, i, +1, max_walk, opt.straight_cutoff, opt.straight_run);
        if (li < 0 || ri < 0) continue;

        ErodingPoint ep;
        ep.anchor_index = i;
        ep.anchor = contour.points[size_t(i)];
        ep.left_limit = contour.points[size_t(li)];
        ep.right_limit = contour.points[size_t(ri)];
        ErodingMember anchor = make_member(contour, i, li, ri, opt);
        ep.angle = anchor.angle;
        ep.speed = anchor.speed;
        if (ep.angle >= M_PI / 2.0 || ep.angle < opt.min_activation_angle) continue;
        if (anchor.direction.norm() < 0.5) continue;

        // Contiguous concave neighbors that are themselves steeper than 90
        // degrees erode together with the anchor.
        int lo = i, hi = i;
        auto concave_steep = [&](int idx) {
            int j = ((idx % n) + n) % n;
            if (prof.angle[size_t(j)] < opt.straight_cutoff) return false;
            ErodingMember m = make_member(contour, j, li, ri, opt);
            return m.angle < M_PI / 2.0 && m.angle >= opt.min_activation_angle &&
                   m.direction.norm() > 0.5;
        };
        while (i - lo < half && concave_steep(lo - 1)) --lo;
        while (hi - i < half && concave_steep(hi + 1)) ++hi;
        for (int j = lo; j <= hi; ++j) {
            int idx = ((j % n) + n) % n;
            ep.members.push_back(make_member(contour, idx, li, ri, opt));
        }
        out.push_back(std::move(ep));
        suppressed_until = i + half;
    }
    return out;
}

std::vector<Pixel> supercover_line(const Vec2 &a, const Vec2 &b) {
    std::vector<Pixel> cells;
    int x = int(std::lround(a.x)), y = int(std::lround(a.y));
    const int tx = int(std::lround(b.x)), ty = int(std::lround(b.y));
    cells.push_back({x, y});
    Vec2 d = b - a;
    int step_x = d.x > 0 ? 1 : -1;
    int step_y = d.y > 0 ? 1 : -1;
    double t_max_x = d.x != 0.0 ? ((x + 0.5 * step_x) - a.x) / d.x : 2.0;
    double t_max_y = d.y != 0.0 ? ((y + 0.5 * step_y) - a.y) / d.y : 2.0;
    double t_delta_x = d.x != 0.0 ? std::fabs(1.0 / d.x) : 0.0;
    double t_delta_y = d.y != 0.0 ? std::fabs(1.0 / d.y) : 0.0;
    const int cap = 4 * (std::abs(tx - x) + std::abs(ty - y)) + 8;
    for (int i = 0; i < cap && (x != tx || y != ty); ++i) {
        if (std::fabs(t_max_x - t_max_y) < 1e-12 && d.x != 0.0 && d.y != 0.0) {
            // Corner crossing: insert the 4-connected intermediate cell.
            cells.push_back({x + step_x, y});
            x += step_x;
            y += step_y;
            t_max_x += t_delta_x;
            t_max_y += t_delta_y;
        } else if (t_max_x < t_max_y) {
            x += step_x;
            t_max_x += t_delta_x;
        } else {
            y += step_y;
            t_max_y += t_delta_y;
        }
        cells.push_back({x, y});
    }
    return cells;
}

namespace {

bool necessary_for_connectivity(const BinaryImage &img, const Pixel &p) {
    // The protection masks describe thin structures; deep inside material a
    // crossing-shaped match is just interior bulk and carving cannot cut a
    // path there.
    int neighbors = 0;
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
            if ((dx || dy) && img.get(p.x + dx, p.y + dy)) ++neighbors;
    if (neighbors > 5) return false;
    for (const auto &m : connectivity_masks())
        if (m.matches(img, p.x, p.y)) return true;
    return false;
}

// Advance one eroding group by one thinning step; erases crossed pixels and
// the straight connectors between neighboring members. Returns true if any
// pixel changed.
bool advance_group(BinaryImage &skel, ErodingPoint &ep) {
    bool changed = false;
    std::vector<Vec2> next;
    next.reserve(ep.members.size());
    for (const auto &m : ep.members) next.push_back(m.position + m.direction * m.speed);

    std::vector<Pixel> cells;
    for (size_t i = 0; i < ep.members.size(); ++i) {
        auto seg = supercover_line(ep.members[i].position, next[i]);
        cells.insert(cells.end(), seg.begin(), seg.end());
        if (i + 1 < ep.members.size()) {
            auto conn = supercover_line(next[i], next[i + 1]);
            cells.insert(cells.end(), conn.begin(), conn.end());
        }
    }
    for (const auto &c : cells) {
        if (!skel.get(c.x, c.y)) continue;
        if (necessary_for_connectivity(skel, c)) {
            ep.active = false;
            return changed;
        }
        skel.at(c.x, c.y) = 0;
        changed = true;
    }
    for (size_t i = 0; i < ep.members.size(); ++i) ep.members[i].position = next[i];

    // A point that drifted outside the canvas can never erode again.
    const Vec2 &pos = ep.members.front().position;
    if (pos.x < -10.0 || pos.y < -10.0 || pos.x > skel.width + 10.0 || pos.y > skel.height + 10.0)
        ep.active = false;
    return changed;
}

} // namespace

BinaryImage unbiased_thin(const BinaryImage &img, const ThinningOptions &opt,
                          ThinningReport *report) {
    BinaryImage skel = img;
    std::vector<ErodingPoint> groups;
    {
        auto contours = trace_contours(img);
        for (size_t ci = 0; ci < contours.size(); ++ci) {
            CurvatureProfile prof = estimate_curvature(contours[ci], opt.cord_length);
            for (auto &ep : find_eroding_points(contours[ci], prof, opt)) {
                ep.contour_index = int(ci);
                groups.push_back(std::move(ep));
            }
        }
    }
    if (report) report->eroding_points = groups.size();

    std::vector<Pixel> scratch;
    const int cap = 10 * std::max(img.width, img.height);
    int iter = 0;
    while (true) {
        bool changed = zs_iteration(skel, scratch);
        for (auto &g : groups) {
            if (!g.active) continue;
            changed = advance_group(skel, g) || changed;
        }
        if (!changed) break;
        if (++iter > cap) {
            if (report) report->iteration_cap_hit = true;
            break;
        }
    }
    if (report) report->iterations = iter;
    return skel;
}

} // namespace svx
