#include "core/bezfit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"

namespace svx {

Vec2 CubicBezier::eval(double t) const {
    double s = 1.0 - t;
    double w0 = s * s * s, w1 = 3.0 * s * s * t, w2 = 3.0 * s * t * t, w3 = t * t * t;
    return b0 * w0 + b1 * w1 + b2 * w2 + b3 * w3;
}

Vec2 CubicBezier::derivative(double t) const {
    double s = 1.0 - t;
    return (b1 - b0) * (3.0 * s * s) + (b2 - b1) * (6.0 * s * t) + (b3 - b2) * (3.0 * t * t);
}

Vec2 CubicBezier::second_derivative(double t) const {
    double s = 1.0 - t;
    return (b2 - b1 * 2.0 + b0) * (6.0 * s) + (b3 - b2 * 2.0 + b1) * (6.0 * t);
}

void FitConfig::validate() const {
    if (!(desired_err > 0.0)) throw ConfigError("fit: desired error must be positive");
    if (!(iterations_per_pixel > 0.0)) throw ConfigError("fit: iterations per pixel must be positive");
    if (!(early_stop_fraction > 0.0 && early_stop_fraction < 1.0))
        throw ConfigError("fit: early-stop fraction must lie in (0, 1)");
}

std::vector<double> chord_parameters(const std::vector<Vec2> &points) {
    std::vector<double> u(points.size(), 0.0);
    for (size_t i = 1; i < points.size(); ++i)
        u[i] = u[i - 1] + distance(points[i - 1], points[i]);
    double total = u.empty() ? 0.0 : u.back();
    if (total <= 0.0) {
        for (size_t i = 0; i < u.size(); ++i)
            u[i] = points.size() > 1 ? double(i) / double(points.size() - 1) : 0.0;
        return u;
    }
    for (double &v : u) v /= total;
    return u;
}

CubicBezier fit_single(const std::vector<Vec2> &points, const std::vector<double> &t_params,
                       const Vec2 &start_tangent, const Vec2 &end_tangent) {
    const size_t n = points.size();
    CubicBezier c;
    c.b0 = points.front();
    c.b3 = points.back();
    const double seg_len = distance(c.b0, c.b3);

    double c00 = 0.0, c01 = 0.0, c11 = 0.0, x0 = 0.0, x1 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double t = t_params[i], s = 1.0 - t;
        double bt1 = 3.0 * s * s * t, bt2 = 3.0 * s * t * t;
        Vec2 a0 = start_tangent * bt1;
        Vec2 a1 = end_tangent * bt2;
        Vec2 rem = points[i] - c.b0 * (s * s * s + bt1) - c.b3 * (bt2 + t * t * t);
        c00 += a0.dot(a0);
        c01 += a0.dot(a1);
        c11 += a1.dot(a1);
        x0 += a0.dot(rem);
        x1 += a1.dot(rem);
    }
    double det = c00 * c11 - c01 * c01;
    double alpha1 = 0.0, alpha2 = 0.0;
    if (std::fabs(det) > 1e-12) {
        alpha1 = (x0 * c11 - x1 * c01) / det;
        alpha2 = (c00 * x1 - c01 * x0) / det;
    }
    // Degenerate or wrong-sided solutions fall back to third-of-chord legs.
    double eps = 1e-6 * seg_len;
    if (!(std::isfinite(alpha1) && std::isfinite(alpha2)) || alpha1 <= eps || alpha2 <= eps) {
        alpha1 = alpha2 = seg_len / 3.0;
    }
    c.b1 = c.b0 + start_tangent * alpha1;
    c.b2 = c.b3 + end_tangent * alpha2;
    return c;
}

namespace {

// A few Newton steps toward the locally nearest parameter.
double project_locally(const CubicBezier &curve, const Vec2 &p, double t) {
    for (int i = 0; i < 8; ++i) {
        Vec2 d = curve.eval(t) - p;
        Vec2 d1 = curve.derivative(t);
        Vec2 d2 = curve.second_derivative(t);
        double denom = d1.dot(d1) + d.dot(d2);
        if (std::fabs(denom) < 1e-14) break;
        double nt = t - d.dot(d1) / denom;
        nt = std::clamp(nt, 0.0, 1.0);
        if (std::fabs(nt - t) < 1e-12) {
            t = nt;
            break;
        }
        t = nt;
    }
    return t;
}

} // namespace

std::pair<double, size_t> max_error(const std::vector<Vec2> &points,
                                    const std::vector<double> &t_params,
                                    const CubicBezier &curve) {
    // The distance at a drifted parameter overestimates that point's true
    // distance, so every point is refined by local projection before taking
    // the maximum; otherwise one badly parametrized point can shadow the
    // real offender and break the error contract.
    double worst = -1.0;
    size_t worst_idx = 0;
    for (size_t i = 0; i < points.size(); ++i) {
        double d = distance(curve.eval(t_params[i]), points[i]);
        double t = project_locally(curve, points[i], t_params[i]);
        d = std::min(d, distance(curve.eval(t), points[i]));
        if (d > worst) {
            worst = d;
            worst_idx = i;
        }
    }
    return {worst, worst_idx};
}

std::vector<double> reparametrize(const std::vector<Vec2> &points,
                                  const std::vector<double> &t_params, const CubicBezier &curve) {
    std::vector<double> out(t_params.size());
    double prev = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        double t = t_params[i];
        Vec2 d = curve.eval(t) - points[i];
        Vec2 d1 = curve.derivative(t);
        Vec2 d2 = curve.second_derivative(t);
        double denom = d1.dot(d1) + d.dot(d2);
        double nt = std::fabs(denom) < 1e-14 ? t : t - d.dot(d1) / denom;
        nt = std::clamp(nt, 0.0, 1.0);
        if (i > 0 && nt < prev) nt = t_params[i]; // revert on ordering violation
        if (i > 0 && nt < prev) nt = prev;
        out[i] = nt;
        prev = nt;
    }
    return out;
}

namespace {

// Least-squares direction over up to `window` points from one end, oriented
// into the range.
Vec2 end_direction(const std::vector<Vec2> &pts, size_t first, size_t last, bool from_start,
                   size_t window = 4) {
    size_t n = last - first + 1;
    size_t k = std::min(window, n);
    Vec2 mean{0, 0};
    std::vector<Vec2> sel;
    for (size_t i = 0; i < k; ++i) {
        size_t idx = from_start ? first + i : last - i;
        sel.push_back(pts[idx]);
        mean += sel.back();
    }
    mean = mean / double(k);
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto &q : sel) {
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
    Vec2 span = sel.back() - sel.front();
    if (dir.dot(span) < 0.0) dir = dir * -1.0;
    if (span.norm() < 1e-12) dir = Vec2{1, 0};
    return dir;
}

struct Fitter {
    const std::vector<Vec2> &pts;
    const FitConfig &cfg;
    std::vector<CubicBezier> segments;
    std::vector<bool> joints;

    void emit(const CubicBezier &c) {
        if (!segments.empty()) joints.push_back(true); // split joints impose C1
        segments.push_back(c);
    }

    CubicBezier straight(size_t first, size_t last, const Vec2 &t1, const Vec2 &t2) const {
        CubicBezier c;
        c.b0 = pts[first];
        c.b3 = pts[last];
        double third = distance(c.b0, c.b3) / 3.0;
        c.b1 = c.b0 + t1 * third;
        c.b2 = c.b3 + t2 * third;
        return c;
    }

    void fit_range(size_t first, size_t last, Vec2 t1, Vec2 t2) {
        const size_t m = last - first + 1;
        if (m < 4) {
            emit(straight(first, last, t1, t2));
            return;
        }
        std::vector<Vec2> sub(pts.begin() + long(first), pts.begin() + long(last) + 1);
        std::vector<double> u = chord_parameters(sub);
        const int budget = std::max(1, int(std::lround(cfg.iterations_per_pixel * double(m))));

        CubicBezier curve = fit_single(sub, u, t1, t2);
        auto [err, idx] = max_error(sub, u, curve);
        bool solved = err < cfg.desired_err;
        if (!solved && !(cfg.psi_skip && err >= cfg.psi_factor * cfg.desired_err)) {
            for (int iter = 1; iter <= budget && !solved; ++iter) {
                u = reparametrize(sub, u, curve);
                curve = fit_single(sub, u, t1, t2);
                std::tie(err, idx) = max_error(sub, u, curve);
                if (err < cfg.desired_err) {
                    solved = true;
                    break;
                }
                if (err < cfg.desired_err * cfg.early_stop_fraction &&
                    double(iter) > double(budget) * cfg.early_stop_fraction) {
                    solved = true;
                    break;
                }
            }
        }
        if (solved || m < 5) {
            emit(curve);
            return;
        }
        size_t split = std::clamp(idx, size_t(2), m - 3);
        Vec2 center = (pts[first + split - 1] - pts[first + split + 1]).normalized();
        if (center.norm() < 0.5)
            center = (pts[first] - pts[last]).normalized();
        // `center` points backward along the travel direction: it is the end
        // tangent of the left child and its negation starts the right child.
        fit_range(first, first + split, t1, center);
        fit_range(first + split, last, center * -1.0, t2);
    }
};

std::vector<Vec2> to_vecs(const std::vector<Pixel> &pts) {
    std::vector<Vec2> v;
    v.reserve(pts.size());
    for (const auto &p : pts) v.push_back(to_vec(p));
    return v;
}

double spline_point_error(const std::vector<Vec2> &pts, const BezierSpline &spline,
                          size_t *worst_idx) {
    double worst = -1.0;
    size_t wi = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        double best = 1e300;
        for (const auto &seg : spline.segments) {
            for (int s = 0; s <= 16; ++s) {
                double t0 = double(s) / 16.0;
                double t = project_locally(seg, pts[i], t0);
                best = std::min(best, distance(seg.eval(t), pts[i]));
            }
        }
        if (best > worst) {
            worst = best;
            wi = i;
        }
    }
    if (worst_idx) *worst_idx = wi;
    return worst;
}

} // namespace

BezierSpline fit_path(const std::vector<Vec2> &points, const FitConfig &cfg) {
    cfg.validate();
    if (points.size() < 2) throw std::invalid_argument("fit_path: need at least 2 points");
    BezierSpline out;
    if (points.size() < 4) {
        Vec2 dir = (points.back() - points.front()).normalized();
        if (dir.norm() < 0.5) dir = Vec2{1, 0};
        Fitter f{points, cfg, {}, {}};
        out.segments.push_back(f.straight(0, points.size() - 1, dir, dir * -1.0));
        return out;
    }
    Fitter f{points, cfg, {}, {}};
    Vec2 t1 = end_direction(points, 0, points.size() - 1, true);
    Vec2 t2 = end_direction(points, 0, points.size() - 1, false);
    f.fit_range(0, points.size() - 1, t1, t2);
    out.segments = std::move(f.segments);
    out.joint_c1 = std::move(f.joints);
    return out;
}

BezierSpline fit_path(const std::vector<Pixel> &points, const FitConfig &cfg) {
    return fit_path(to_vecs(points), cfg);
}

BezierSpline fit_closed_path(const std::vector<Vec2> &points, const FitConfig &cfg) {
    cfg.validate();
    const size_t n = points.size();
    if (n < 4) throw std::invalid_argument("fit_closed_path: need at least 4 points");
    if (distance(points.front(), points.back()) > 2.0)
        throw std::invalid_argument("fit_closed_path: input is not closed");

    auto fit_pass = [&](const std::vector<Vec2> &ring, bool impose_seam) {
        std::vector<Vec2> ext = ring;
        ext.push_back(ring.front());
        Fitter f{ext, cfg, {}, {}};
        Vec2 t1, t2;
        bool seam_c1 = impose_seam;
        if (impose_seam) {
            Vec2 seam = (ring[1] - ring[n - 1]).normalized();
            if (seam.norm() < 0.5) seam = Vec2{1, 0};
            t1 = seam;
            t2 = seam * -1.0;
        } else {
            t1 = end_direction(ext, 0, ext.size() - 1, true);
            t2 = end_direction(ext, 0, ext.size() - 1, false);
        }
        f.fit_range(0, ext.size() - 1, t1, t2);
        BezierSpline s;
        s.segments = std::move(f.segments);
        s.joint_c1 = std::move(f.joints);
        s.closed = true;
        s.joint_c1.push_back(seam_c1); // seam joint
        return s;
    };

    BezierSpline pass1 = fit_pass(points, true);
    size_t seam = 0;
    spline_point_error(points, pass1, &seam);
    if (seam == 0) return pass1;

    std::vector<Vec2> rotated(points.begin() + long(seam), points.end());
    rotated.insert(rotated.end(), points.begin(), points.begin() + long(seam));

    // Impose C1 across the new seam only when the polyline passes through it
    // without a sharp turn; a true discontinuity keeps free tangents.
    Vec2 incoming = end_direction(rotated, 0, rotated.size() - 1, false) * -1.0;
    Vec2 outgoing = end_direction(rotated, 0, rotated.size() - 1, true);
    double turn = std::acos(std::clamp(incoming.dot(outgoing), -1.0, 1.0));
    bool smooth_seam = turn < M_PI / 4.0;
    return fit_pass(rotated, smooth_seam);
}

BezierSpline fit_closed_path(const std::vector<Pixel> &points, const FitConfig &cfg) {
    return fit_closed_path(to_vecs(points), cfg);
}

int count_control_points(const BezierSpline &s) {
    int k = int(s.segments.size());
    if (k == 0) return 0;
    return s.closed ? 3 * k : 4 + 3 * (k - 1);
}

} // namespace svx
