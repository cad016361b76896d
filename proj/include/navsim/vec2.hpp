#pragma once

#include <cmath>
#include <numbers>

namespace navsim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double k) const { return {x * k, y * k}; }
    Vec2 operator/(double k) const { return {x / k, y / k}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
    double angle() const { return std::atan2(y, x); }

    Vec2 normalized() const {
        const double n = norm();
        return {x / n, y / n};
    }
    // Rotation by +90 degrees (counterclockwise).
    Vec2 perp() const { return {-y, x}; }
    Vec2 rotated(double a) const {
        const double c = std::cos(a), s = std::sin(a);
        return {c * x - s * y, s * x + c * y};
    }
};

inline Vec2 operator*(double k, const Vec2& v) { return v * k; }

inline double dist(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

inline Vec2 from_angle(double a) { return {std::cos(a), std::sin(a)}; }

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a > kPi) a -= kTwoPi;
    if (a <= -kPi) a += kTwoPi;
    return a;
}

// Continuation of `prev` by the wrapped increment towards `raw`.
inline double unwrap_towards(double prev, double raw) {
    return prev + wrap_angle(raw - prev);
}

inline double clamp(double v, double lo, double hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

inline int sgn(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace navsim
