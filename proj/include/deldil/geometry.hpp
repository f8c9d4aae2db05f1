#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include "deldil/errors.hpp"

namespace deldil {

// Relative tolerance on |dist(center, vertex) - radius| for circumcircles.
inline constexpr double kCircumcircleRelTol = 1e-12;
// Scaled tolerance on (p - s).(p - center) for tangent points.
inline constexpr double kTangencyTol = 1e-10;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2() = default;
    Point2(double x_, double y_) : x(x_), y(y_) {
        if (!std::isfinite(x_) || !std::isfinite(y_)) {
            throw DegenerateInput("Point2: coordinates must be finite");
        }
    }

    friend bool operator==(const Point2&, const Point2&) = default;
    friend auto operator<=>(const Point2& a, const Point2& b) {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
};

// Free vector ops; Point2 doubles as a 2-vector.
inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Unit vector at angle `phi` (radians, counterclockwise from +x).
inline Point2 polar(double phi) { return {std::cos(phi), std::sin(phi)}; }
inline Point2 on_circle(Point2 center, double radius, double phi) {
    return {center.x + radius * std::cos(phi), center.y + radius * std::sin(phi)};
}

struct Circle {
    Point2 center;
    double radius = 0.0;
};

enum class PredicateSign : int { Negative = -1, Zero = 0, Positive = 1 };

inline PredicateSign sign_of(double v) {
    return v > 0 ? PredicateSign::Positive : (v < 0 ? PredicateSign::Negative : PredicateSign::Zero);
}
inline PredicateSign flip(PredicateSign s) { return static_cast<PredicateSign>(-static_cast<int>(s)); }

} // namespace deldil
