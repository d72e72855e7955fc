#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace svx {

struct Pixel {
    int x = 0;
    int y = 0;
    auto operator<=>(const Pixel &) const = default;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2 &o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2 &o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 &operator+=(const Vec2 &o) { x += o.x; y += o.y; return *this; }

    double dot(const Vec2 &o) const { return x * o.x + y * o.y; }
    double cross(const Vec2 &o) const { return x * o.y - y * o.x; }
    double norm() const { return std::sqrt(x * x + y * y); }

    Vec2 normalized() const {
        double n = norm();
        return n > 0.0 ? Vec2{x / n, y / n} : Vec2{0.0, 0.0};
    }
};

inline Vec2 to_vec(const Pixel &p) { return {double(p.x), double(p.y)}; }

inline double distance(const Vec2 &a, const Vec2 &b) { return (a - b).norm(); }
inline double distance(const Pixel &a, const Pixel &b) {
    return std::hypot(double(a.x - b.x), double(a.y - b.y));
}

/// Angle at vertex `v` spanned by rays toward `a` and `b`, in [0, pi].
inline double vertex_angle(const Vec2 &a, const Vec2 &v, const Vec2 &b) {
    Vec2 u = (a - v).normalized();
    Vec2 w = (b - v).normalized();
    double c = u.dot(w);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return std::acos(c);
}

} // namespace svx
