#pragma once
/**
 * @file geometry.hpp
 * @brief Planar vector, angle helpers and the Pose type shared by every module.
 *
 * Conventions:
 *   - Right-handed ground plane, x to the east, y to the north.
 *   - Headings are measured counter-clockwise from +x, stored in [0, 2pi).
 *   - Positive rotations are counter-clockwise ("left turns").
 */

#include <cmath>
#include <numbers>

namespace hapticguide {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

    Vec2& operator+=(const Vec2& r) { x += r.x; y += r.y; return *this; }
    Vec2& operator-=(const Vec2& r) { x -= r.x; y -= r.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    constexpr bool operator==(const Vec2&) const = default;

    [[nodiscard]] constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    /// z-component of the 3D cross product; > 0 when @p r is to the left of *this.
    [[nodiscard]] constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }
    [[nodiscard]] double norm() const { return std::hypot(x, y); }
    [[nodiscard]] constexpr double squared_norm() const { return x * x + y * y; }
    [[nodiscard]] double angle() const { return std::atan2(y, x); }

    /// Unit vector, or (0,0) when the norm is at or below @p eps.
    [[nodiscard]] Vec2 normalized(double eps = 1e-12) const {
        const double n = norm();
        if (n <= eps) return {0.0, 0.0};
        return {x / n, y / n};
    }

    /// Counter-clockwise perpendicular.
    [[nodiscard]] constexpr Vec2 left_normal() const { return {-y, x}; }
};

[[nodiscard]] inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

[[nodiscard]] inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Rotate @p v counter-clockwise by @p angle radians.
[[nodiscard]] inline Vec2 rotate(const Vec2& v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Map any finite angle to [0, 2pi).
[[nodiscard]] double normalize_angle(double theta);

/// Map any finite angle to (-pi, pi].
[[nodiscard]] double wrap_pi(double theta);

[[nodiscard]] constexpr double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// Planar position plus heading; the heading is kept in [0, 2pi).
class Pose {
public:
    Pose() = default;
    Pose(Vec2 position, double heading);

    [[nodiscard]] const Vec2& position() const { return position_; }
    [[nodiscard]] double heading() const { return heading_; }
    [[nodiscard]] Vec2 forward() const { return unit_from_angle(heading_); }

    /// Express a world point in this pose's body frame (x forward, y left).
    [[nodiscard]] Vec2 to_local(const Vec2& world) const { return rotate(world - position_, -heading_); }
    [[nodiscard]] Vec2 to_world(const Vec2& local) const { return position_ + rotate(local, heading_); }

    bool operator==(const Pose&) const = default;

private:
    Vec2 position_{};
    double heading_{0.0};
};

}  // namespace hapticguide
