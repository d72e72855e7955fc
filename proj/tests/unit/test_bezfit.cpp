#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "core/bezfit.hpp"
#include "unit/support.hpp"

using namespace svx;
namespace ts = testsupport;

namespace {

CubicBezier random_tame_cubic(std::mt19937_64 &rng, double span = 200.0) {
    std::uniform_real_distribution<double> u(0.15, 0.85);
    CubicBezier c;
    c.b0 = {span * u(rng), span * u(rng)};
    c.b3 = {span * u(rng), span * u(rng)};
    while (distance(c.b0, c.b3) < span * 0.3) c.b3 = {span * u(rng), span * u(rng)};
    // Inner controls forward along the chord with mild lateral offsets keep
    // the curve free of cusps and loops.
    Vec2 chord = c.b3 - c.b0;
    Vec2 normal{-chord.y, chord.x};
    std::uniform_real_distribution<double> lat(-0.25, 0.25);
    c.b1 = c.b0 + chord * 0.33 + normal * lat(rng);
    c.b2 = c.b0 + chord * 0.67 + normal * lat(rng);
    return c;
}

std::vector<Vec2> sample_curve(const CubicBezier &c, int n) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) pts.push_back(c.eval(double(i) / (n - 1)));
    return pts;
}

double max_c1_violation(const BezierSpline &s) {
    double worst = 0.0;
    size_t joints = s.segments.size() > 0 ? s.segments.size() - 1 : 0;
    for (size_t i = 0; i < joints; ++i) {
        if (i >= s.joint_c1.size() || !s.joint_c1[i]) continue;
        Vec2 in = (s.segments[i].b3 - s.segments[i].b2).normalized();
        Vec2 out = (s.segments[i + 1].b1 - s.segments[i + 1].b0).normalized();
        double c = std::clamp(in.dot(out), -1.0, 1.0);
        worst = std::max(worst, std::acos(c));
    }
    if (s.closed && !s.joint_c1.empty() && s.joint_c1.back()) {
        Vec2 in = (s.segments.back().b3 - s.segments.back().b2).normalized();
        Vec2 out = (s.segments.front().b1 - s.segments.front().b0).normalized();
        double c = std::clamp(in.dot(out), -1.0, 1.0);
        worst = std::max(worst, std::acos(c));
    }
    return worst;
}

} // namespace

TEST_CASE("fit_single recovers an exactly sampled cubic") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        CubicBezier truth = random_tame_cubic(rng);
        const int n = 60;
        std::vector<Vec2> pts;
        std::vector<double> u;
        for (int i = 0; i < n; ++i) {
            double t = double(i) / (n - 1);
            pts.push_back(truth.eval(t));
            u.push_back(t);
        }
        Vec2 t1 = (truth.b1 - truth.b0).normalized();
        Vec2 t2 = (truth.b2 - truth.b3).normalized();
        CubicBezier fit = fit_single(pts, u, t1, t2);
        CHECK(distance(fit.b1, truth.b1) < 1e-6);
        CHECK(distance(fit.b2, truth.b2) < 1e-6);
    }
}

TEST_CASE("fit_single: collinear points produce a segment-exact curve") {
    std::vector<Vec2> pts;
    std::vector<double> u;
    for (int i = 0; i <= 20; ++i) {
        pts.push_back({10.0 + 5.0 * i, 42.0});
        u.push_back(i / 20.0);
    }
    CubicBezier fit = fit_single(pts, u, {1, 0}, {-1, 0});
    for (int i = 0; i <= 100; ++i) {
        Vec2 p = fit.eval(i / 100.0);
        CHECK(std::fabs(p.y - 42.0) < 1e-9);
        CHECK(p.x >= 10.0 - 1e-9);
        CHECK(p.x <= 110.0 + 1e-9);
    }
}

TEST_CASE("fit_single: square corners with perpendicular tangents miss mid-samples most") {
    std::vector<Vec2> pts = {{0, 0}, {100, 0}, {100, 100}, {0, 100}};
    std::vector<double> u = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
    CubicBezier fit = fit_single(pts, u, {1, 0}, {1, 0});
    auto [err, idx] = max_error(pts, u, fit);
    CHECK(err > 0.0);
    CHECK((idx == 1 || idx == 2));
}

TEST_CASE("max_error: points on the curve measure zero") {
    std::mt19937_64 rng(9);
    CubicBezier c = random_tame_cubic(rng);
    const int n = 30;
    std::vector<Vec2> pts;
    std::vector<double> u;
    for (int i = 0; i < n; ++i) {
        double t = double(i) / (n - 1);
        pts.push_back(c.eval(t));
        u.push_back(t);
    }
    auto [err, idx] = max_error(pts, u, c);
    CHECK(err < 1e-9);
}

TEST_CASE("max_error: a displaced point reports its displacement and index") {
    std::mt19937_64 rng(11);
    CubicBezier c = random_tame_cubic(rng);
    const int n = 40;
    std::vector<Vec2> pts;
    std::vector<double> u;
    for (int i = 0; i < n; ++i) {
        double t = double(i) / (n - 1);
        pts.push_back(c.eval(t));
        u.push_back(t);
    }
    // Push point 17 five pixels along the curve normal.
    Vec2 d = c.derivative(u[17]).normalized();
    Vec2 normal{-d.y, d.x};
    pts[17] += normal * 5.0;
    auto [err, idx] = max_error(pts, u, c);
    CHECK(idx == 17);
    CHECK(err == doctest::Approx(5.0).epsilon(0.02));
}

TEST_CASE("max_error: symmetric double bump ties to the lower index") {
    std::vector<Vec2> pts;
    std::vector<double> u;
    const int n = 21;
    CubicBezier line{{0, 0}, {100.0 / 3, 0}, {200.0 / 3, 0}, {100, 0}};
    for (int i = 0; i < n; ++i) {
        double t = double(i) / (n - 1);
        pts.push_back(line.eval(t));
        u.push_back(t);
    }
    pts[5].y += 4.0;
    pts[15].y -= 4.0;
    auto [err, idx] = max_error(pts, u, line);
    CHECK(err == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(idx == 5);
}

TEST_CASE("reparametrize: an exact fit leaves parameters in place") {
    std::mt19937_64 rng(13);
    CubicBezier c = random_tame_cubic(rng);
    std::vector<Vec2> pts;
    std::vector<double> u;
    for (int i = 0; i < 25; ++i) {
        double t = double(i) / 24.0;
        pts.push_back(c.eval(t));
        u.push_back(t);
    }
    auto out = reparametrize(pts, u, c);
    for (size_t i = 0; i < u.size(); ++i) CHECK(out[i] == doctest::Approx(u[i]).epsilon(1e-9));
}

TEST_CASE("reparametrize: perturbed parameters strictly reduce the error") {
    std::mt19937_64 rng(17);
    CubicBezier c = random_tame_cubic(rng);
    std::vector<Vec2> pts;
    std::vector<double> u;
    for (int i = 0; i < 25; ++i) {
        double t = double(i) / 24.0;
        pts.push_back(c.eval(t));
        u.push_back(std::clamp(t + (i % 2 ? 0.01 : -0.01), 0.0, 1.0));
    }
    double before = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        before = std::max(before, distance(c.eval(u[i]), pts[i]));
    auto out = reparametrize(pts, u, c);
    double after = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        after = std::max(after, distance(c.eval(out[i]), pts[i]));
    CHECK(after < before);
}

TEST_CASE("reparametrize: uniform points on a straight curve converge to chord parameters") {
    CubicBezier line{{0, 0}, {20, 0}, {80, 0}, {100, 0}}; // non-uniform speed line
    std::vector<Vec2> pts;
    std::vector<double> u;
    for (int i = 0; i <= 20; ++i) {
        pts.push_back({5.0 * i, 0.0});
        u.push_back(i / 20.0);
    }
    std::vector<double> t = u;
    for (int k = 0; k < 3; ++k) t = reparametrize(pts, t, line);
    for (size_t i = 0; i < pts.size(); ++i)
        CHECK(distance(line.eval(t[i]), pts[i]) < 1e-6);
}

TEST_CASE("fit_path: points from one cubic fit with a single segment") {
    std::mt19937_64 rng(21);
    FitConfig cfg;
    cfg.desired_err = 3.0;
    for (int trial = 0; trial < 10; ++trial) {
        CubicBezier truth = random_tame_cubic(rng);
        std::vector<Vec2> pts = sample_curve(truth, 200);
        BezierSpline s = fit_path(pts, cfg);
        CHECK(s.segments.size() == 1);
        CHECK(ts::dense_spline_max_error(pts, s) < cfg.desired_err);
    }
}

TEST_CASE("fit_path: a sharp V splits at the apex") {
    std::vector<Vec2> pts;
    for (int i = 0; i <= 100; ++i) pts.push_back({double(i), 100.0 - i});
    for (int i = 1; i <= 100; ++i) pts.push_back({100.0 + i, double(i)});
    FitConfig cfg;
    cfg.desired_err = 1.0;
    BezierSpline s = fit_path(pts, cfg);
    CHECK(s.segments.size() >= 2);
    // One of the joints lands at the apex (within 2 samples).
    bool apex_joint = false;
    for (size_t i = 0; i + 1 < s.segments.size(); ++i) {
        Vec2 joint = s.segments[i].b3;
        if (distance(joint, Vec2{100, 0}) <= 2.0 * std::sqrt(2.0)) apex_joint = true;
    }
    CHECK(apex_joint);
    CHECK(ts::dense_spline_max_error(pts, s) < cfg.desired_err);
}

TEST_CASE("fit_path: a long straight line is a single 4-point segment") {
    std::vector<Pixel> pts;
    for (int i = 0; i <= 500; ++i) pts.push_back({i, 7});
    FitConfig cfg;
    BezierSpline s = fit_path(pts, cfg);
    CHECK(s.segments.size() == 1);
    CHECK(count_control_points(s) == 4);
    CHECK(ts::dense_spline_max_error_px(pts, s) < 1e-6);
}

TEST_CASE("fit_path handles 2- and 3-point inputs and rejects smaller ones") {
    FitConfig cfg;
    BezierSpline two = fit_path(std::vector<Pixel>{{0, 0}, {1, 1}}, cfg);
    CHECK(two.segments.size() == 1);
    BezierSpline three = fit_path(std::vector<Pixel>{{0, 0}, {1, 0}, {2, 1}}, cfg);
    CHECK(three.segments.size() == 1);
    CHECK_THROWS_AS(fit_path(std::vector<Pixel>{{0, 0}}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(fit_path(std::vector<Pixel>{}, cfg), std::invalid_argument);
}

TEST_CASE("fit_path error contract holds on noisy polylines") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    FitConfig cfg;
    cfg.desired_err = 2.0;
    for (int trial = 0; trial < 10; ++trial) {
        CubicBezier base = random_tame_cubic(rng);
        std::vector<Vec2> pts = sample_curve(base, 150);
        for (auto &p : pts) p += Vec2{jitter(rng), jitter(rng)};
        BezierSpline s = fit_path(pts, cfg);
        // Dense independent verification of the error contract.
        CHECK(ts::dense_spline_max_error(pts, s) < cfg.desired_err);
        CHECK(max_c1_violation(s) < 1e-3);
    }
}

TEST_CASE("fit_path: all imposed joints satisfy C1 within 1e-3 rad") {
    std::vector<Vec2> pts;
    for (int i = 0; i <= 80; ++i) pts.push_back({double(i), 40.0 * std::sin(i / 12.0)});
    FitConfig cfg;
    cfg.desired_err = 0.5;
    BezierSpline s = fit_path(pts, cfg);
    CHECK(s.segments.size() >= 2);
    CHECK(max_c1_violation(s) < 1e-3);
}

TEST_CASE("fit_closed_path: rasterized circle fits with few segments, all C1") {
    std::vector<Vec2> pts;
    const double r = 60.0;
    const int n = 360;
    for (int i = 0; i < n; ++i) {
        double a = 2.0 * M_PI * i / n;
        pts.push_back({100.0 + r * std::cos(a), 100.0 + r * std::sin(a)});
    }
    FitConfig cfg;
    cfg.desired_err = 2.0;
    BezierSpline s = fit_closed_path(pts, cfg);
    CHECK(s.closed);
    CHECK(s.segments.size() <= 4);
    CHECK(ts::dense_spline_max_error(pts, s) < cfg.desired_err);
    // Every joint including the seam is C1-flagged and collinear.
    for (bool f : s.joint_c1) CHECK(f);
    CHECK(max_c1_violation(s) < 1e-3);
    // Adjacent segments share their joint point.
    for (size_t i = 0; i < s.segments.size(); ++i) {
        const auto &cur = s.segments[i];
        const auto &next = s.segments[(i + 1) % s.segments.size()];
        CHECK(distance(cur.b3, next.b0) < 1e-9);
    }
}

TEST_CASE("fit_closed_path: square seam relocates to a corner") {
    std::vector<Vec2> pts;
    const int side = 60;
    // Start mid-edge so the initial seam is NOT a corner.
    for (int i = 0; i < side / 2; ++i) pts.push_back({30.0 + i, 10.0});
    for (int i = 0; i < side; ++i) pts.push_back({60.0, 10.0 + i});
    for (int i = 0; i < side; ++i) pts.push_back({60.0 - i, 70.0});
    for (int i = 0; i < side; ++i) pts.push_back({0.0, 70.0 - i});
    for (int i = 0; i < side / 2; ++i) pts.push_back({double(i), 10.0});

    // Coarse tolerance: the first pass fits one smooth oval, so the corners
    // are the discontinuities and the worst of them becomes the new seam.
    // (At fine tolerances the first pass splits exactly AT the corners and
    // interpolates them, which moves the residual maximum onto an edge.)
    FitConfig cfg;
    cfg.desired_err = 25.0;
    BezierSpline s = fit_closed_path(pts, cfg);
    CHECK(s.closed);
    Vec2 seam = s.segments.front().b0;
    double best = 1e300;
    for (const Vec2 &corner : {Vec2{60, 10}, Vec2{60, 70}, Vec2{0, 70}, Vec2{0, 10}})
        best = std::min(best, distance(seam, corner));
    CHECK(best <= 3.0);

    // The fine-tolerance fit still honors the error contract on the square.
    FitConfig fine;
    fine.desired_err = 1.5;
    BezierSpline sf = fit_closed_path(pts, fine);
    CHECK(ts::dense_spline_max_error(pts, sf) < fine.desired_err);
}

TEST_CASE("fit_closed_path: fits a smooth two-lobe loop and rejects open input") {
    std::vector<Vec2> pts;
    CubicBezier a{{0, 0}, {60, -50}, {120, -50}, {180, 0}};
    CubicBezier b{{180, 0}, {120, 50}, {60, 50}, {0, 0}};
    for (int i = 0; i < 120; ++i) pts.push_back(a.eval(i / 120.0));
    for (int i = 0; i < 120; ++i) pts.push_back(b.eval(i / 120.0));
    FitConfig cfg;
    cfg.desired_err = 2.0;

    BezierSpline s = fit_closed_path(pts, cfg);
    CHECK(ts::dense_spline_max_error(pts, s) < cfg.desired_err);

    CHECK_THROWS_AS(fit_closed_path(std::vector<Vec2>{{0, 0}, {50, 0}, {100, 0}, {150, 0}}, cfg),
                    std::invalid_argument);
}

TEST_CASE("count_control_points follows the shared-joint arithmetic") {
    BezierSpline s;
    s.segments.resize(1);
    CHECK(count_control_points(s) == 4);
    s.segments.resize(3);
    CHECK(count_control_points(s) == 10);
    s.segments.resize(4);
    s.closed = true;
    CHECK(count_control_points(s) == 12);
}

TEST_CASE("coarser tolerance never needs more control points") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> jitter(-0.4, 0.4);
    for (int trial = 0; trial < 8; ++trial) {
        CubicBezier base = random_tame_cubic(rng);
        std::vector<Vec2> pts = sample_curve(base, 160);
        for (auto &p : pts) p += Vec2{jitter(rng), jitter(rng)};
        FitConfig coarse, fine;
        coarse.desired_err = 4.0;
        fine.desired_err = 1.0;
        int coarse_points = count_control_points(fit_path(pts, coarse));
        int fine_points = count_control_points(fit_path(pts, fine));
        CHECK(coarse_points <= fine_points);
    }
}

TEST_CASE("fitting is deterministic") {
    std::mt19937_64 rng(43);
    CubicBezier base = random_tame_cubic(rng);
    std::vector<Vec2> pts = sample_curve(base, 100);
    FitConfig cfg;
    BezierSpline a = fit_path(pts, cfg);
    BezierSpline b = fit_path(pts, cfg);
    REQUIRE(a.segments.size() == b.segments.size());
    for (size_t i = 0; i < a.segments.size(); ++i) {
        CHECK(a.segments[i].b1.x == b.segments[i].b1.x);
        CHECK(a.segments[i].b2.y == b.segments[i].b2.y);
    }
}

TEST_CASE("fit config invariants are enforced") {
    FitConfig cfg;
    cfg.desired_err = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = FitConfig{};
    cfg.early_stop_fraction = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = FitConfig{};
    cfg.iterations_per_pixel = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
