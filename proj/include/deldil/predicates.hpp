#pragma once

// Orientation and in-circle predicates with a floating-point filter and an
// exact expansion fallback, plus the few constructions built on them.

#include <cmath>
#include <limits>
#include <utility>

#include "deldil/errors.hpp"
#include "deldil/expansion.hpp"
#include "deldil/geometry.hpp"

namespace deldil {

namespace detail {

inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2; // 2^-53
inline constexpr double kOrientErrBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
inline constexpr double kIncircleErrBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

inline int orient2d_exact(const Point2& a, const Point2& b, const Point2& c) {
    using exact::Expansion;
    const auto acx = Expansion::difference(a.x, c.x);
    const auto acy = Expansion::difference(a.y, c.y);
    const auto bcx = Expansion::difference(b.x, c.x);
    const auto bcy = Expansion::difference(b.y, c.y);
    return (acx * bcy - acy * bcx).sign();
}

inline int incircle_exact(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    using exact::Expansion;
    const auto adx = Expansion::difference(a.x, d.x);
    const auto ady = Expansion::difference(a.y, d.y);
    const auto bdx = Expansion::difference(b.x, d.x);
    const auto bdy = Expansion::difference(b.y, d.y);
    const auto cdx = Expansion::difference(c.x, d.x);
    const auto cdy = Expansion::difference(c.y, d.y);

    const auto alift = adx * adx + ady * ady;
    const auto blift = bdx * bdx + bdy * bdy;
    const auto clift = cdx * cdx + cdy * cdy;
    const auto bc = bdx * cdy - cdx * bdy;
    const auto ca = cdx * ady - adx * cdy;
    const auto ab = adx * bdy - bdx * ady;
    return (alift * bc + blift * ca + clift * ab).sign();
}

// Sign of det [a-c; b-c]: +1 when a, b, c turn counterclockwise.
inline int orient2d_sign(const Point2& a, const Point2& b, const Point2& c) {
    const double detleft = (a.x - c.x) * (b.y - c.y);
    const double detright = (a.y - c.y) * (b.x - c.x);
    const double det = detleft - detright;
    const double detsum = std::abs(detleft) + std::abs(detright);
    if (std::abs(det) > kOrientErrBound * detsum) return det > 0 ? 1 : -1;
    if (detsum == 0.0) return 0;
    return orient2d_exact(a, b, c);
}

// +1 when d is strictly inside the circle through a, b, c (abc counterclockwise).
// Sign is reversed for clockwise abc; undefined meaning when abc collinear.
inline int incircle_sign(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double alift = adx * adx + ady * ady;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double blift = bdx * bdx + bdy * bdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    if (std::abs(det) > kIncircleErrBound * permanent) return det > 0 ? 1 : -1;
    if (permanent == 0.0) return 0;
    return incircle_exact(a, b, c, d);
}

} // namespace detail

inline PredicateSign orient2d(const Point2& a, const Point2& b, const Point2& c) {
    return static_cast<PredicateSign>(detail::orient2d_sign(a, b, c));
}

// Positive iff d lies strictly inside the circumcircle of abc; Zero iff the
// four points are cocircular. Clockwise abc is accepted and normalized.
inline PredicateSign incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const int o = detail::orient2d_sign(a, b, c);
    if (o == 0) throw DegenerateInput("incircle: a, b, c are collinear");
    return static_cast<PredicateSign>(o * detail::incircle_sign(a, b, c, d));
}

inline Circle circumcircle(const Point2& a, const Point2& b, const Point2& c) {
    if (detail::orient2d_sign(a, b, c) == 0) {
        throw DegenerateInput("circumcircle: degenerate (collinear) triangle");
    }
    const double bx = b.x - a.x, by = b.y - a.y;
    const double cx = c.x - a.x, cy = c.y - a.y;
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    const double den = 2.0 * (bx * cy - by * cx);
    const double ux = (cy * b2 - by * c2) / den;
    const double uy = (bx * c2 - cx * b2) / den;
    return {Point2{a.x + ux, a.y + uy}, std::hypot(ux, uy)};
}

// The two points where lines through s touch circle c. The first is reached
// by rotating the direction center->s counterclockwise.
inline std::pair<Point2, Point2> tangent_points(const Point2& s, const Circle& c) {
    const double dist = distance(s, c.center);
    if (!(dist > c.radius)) throw DegenerateInput("tangent_points: point is inside or on the circle");
    const double base = std::atan2(s.y - c.center.y, s.x - c.center.x);
    const double half = std::acos(c.radius / dist);
    return {on_circle(c.center, c.radius, base + half), on_circle(c.center, c.radius, base - half)};
}

} // namespace deldil
