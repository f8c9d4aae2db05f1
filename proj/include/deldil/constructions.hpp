#pragma once

// Point sets with large Delaunay dilation and their bespoke triangulations:
// evenly sampled circle (ladder), two unit semicircles joined by straight
// gaps, and three circles with shield points.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "deldil/closed_form.hpp"
#include "deldil/errors.hpp"
#include "deldil/geometry.hpp"
#include "deldil/numeric.hpp"
#include "deldil/predicates.hpp"
#include "deldil/triangulation.hpp"
#include "deldil/validity.hpp"

namespace deldil {

// Validity tolerance used for every generated construction (arc samples are
// only cocircular up to rounding).
inline constexpr double kConstructionEps = 1e-9;

struct ChewSpec {
    int n = 16;
};

struct TwoSemicircleSpec {
    double d = 0.29;
    double alpha = 1.0;
    int n_arc = 111; // points per semicircle, both endpoints included
};

struct ThreeCircleSpec {
    double d = 0.58;
    double r = 1.1507;
    double arc_density = 256.0; // points per unit arc length
    double shield_margin = 1e-4;
};

struct ConstructionOutput {
    PointSet points;
    Triangulation triangulation;
    int p = 0;
    int q = 1;
    double predicted_dilation = 0.0;
    std::vector<Circle> guides;                           // drawing aids
    std::vector<std::pair<std::string, double>> params;   // derived quantities, in a fixed order
};

// Ladder triangulation of a convex polygon (vertex cycle, either orientation).
// Vertices are taken in order of decreasing projection onto `axis`, walking
// both boundary chains from the extreme vertex; each new vertex forms a
// triangle with the current heads of both chains, so every chord joins the
// two chains and runs roughly perpendicular to `axis`.
inline std::vector<Tri> ladder_triangulation(const std::vector<Point2>& pts, const std::vector<int>& polygon,
                                             Point2 axis) {
    const int m = static_cast<int>(polygon.size());
    if (m < 3) throw InvalidSpec("ladder_triangulation: polygon needs at least 3 vertices");
    auto proj = [&](int k) { return dot(pts[polygon[k]], axis); };
    int top = 0, bottom = 0;
    for (int k = 1; k < m; ++k) {
        if (proj(k) > proj(top)) top = k;
        if (proj(k) < proj(bottom)) bottom = k;
    }
    auto fwd = [&](int k) { return (k + 1) % m; };
    auto bwd = [&](int k) { return (k + m - 1) % m; };

    std::vector<Tri> out;
    auto emit = [&](int a, int b, int c) {
        Tri t{polygon[a], polygon[b], polygon[c]};
        if (detail::orient2d_sign(pts[t[0]], pts[t[1]], pts[t[2]]) < 0) std::swap(t[1], t[2]);
        out.push_back(t);
    };

    int ha = fwd(top), hb = bwd(top);
    emit(top, ha, hb);
    while (out.size() < static_cast<std::size_t>(m - 2)) {
        const int na = fwd(ha), nb = bwd(hb);
        bool take_a;
        if (ha == bottom) {
            take_a = false;
        } else if (hb == bottom) {
            take_a = true;
        } else if (na == bottom) {
            take_a = nb == bottom; // last triangle
        } else if (nb == bottom) {
            take_a = true;
        } else {
            take_a = proj(na) >= proj(nb);
        }
        if (take_a) {
            emit(ha, na, hb);
            ha = na;
        } else {
            emit(hb, nb, ha);
            hb = nb;
        }
    }
    return out;
}

namespace detail {

// Every ladder chord between arc samples must keep the arc route from the
// marked point shorter than the detour through the chord. `angle[v]` is the
// angular position of v on its circle (unwrapped, increasing along the arc).
inline void check_chords(const std::vector<Tri>& tris, const std::vector<double>& angle, double marked,
                         std::pair<int, int> excluded) {
    for (const auto& t : tris) {
        for (int k = 0; k < 3; ++k) {
            int u = t[k], v = t[(k + 1) % 3];
            if (make_edge(u, v) == make_edge(excluded.first, excluded.second)) continue;
            double a = angle[u], b = angle[v];
            if (a > b) std::swap(a, b);
            if (!(a < marked && marked < b)) continue;
            const double theta = b - a;
            if (!arc_beats_detour(marked - a, theta) || !arc_beats_detour(b - marked, theta)) {
                throw InvalidSpec("ladder chord violates the arc condition; increase the sampling");
            }
        }
    }
}

inline std::vector<double> sample_span(double from, double to, int gaps) {
    std::vector<double> out;
    for (int i = 0; i <= gaps; ++i) out.push_back(from + (to - from) * i / gaps);
    return out;
}

} // namespace detail

inline ConstructionOutput generate_chew(const ChewSpec& spec) {
    const int n = spec.n;
    if (n < 8 || n % 2 != 0) throw InvalidSpec("generate_chew: n must be even and >= 8");
    const double pi = std::numbers::pi;
    std::vector<Point2> pts(n);
    for (int k = 0; k < n / 2; ++k) pts[k] = polar(2.0 * pi * k / n);
    // Exact antipodes keep the set centrally symmetric.
    for (int k = n / 2; k < n; ++k) pts[k] = {-pts[k - n / 2].x, -pts[k - n / 2].y};

    std::vector<int> cycle(n);
    for (int k = 0; k < n; ++k) cycle[k] = k;
    ConstructionOutput out;
    out.points = PointSet(pts);
    out.triangulation = Triangulation{ladder_triangulation(pts, cycle, {1.0, 0.0})}.canonical();
    out.p = 0;
    out.q = n / 2;
    out.predicted_dilation = (n / 2.0) * std::sin(pi / n);
    out.guides = {Circle{{0, 0}, 1.0}};
    return out;
}

// Two unit semicircles facing away from each other, centers (+-d/2, 0), closed
// by two straight segments of length d. The left arc runs counterclockwise
// from T = (-d/2, 1) to B = (-d/2, -1); p sits on it at angle alpha above the
// axis. The right arc is the point reflection of the left one, so p' = -p.
inline ConstructionOutput generate_two_semicircle(const TwoSemicircleSpec& spec) {
    const double pi = std::numbers::pi;
    if (!(spec.d > 0.0)) throw InvalidSpec("generate_two_semicircle: d must be > 0");
    if (!(spec.alpha > 0.0) || !(spec.alpha < pi / 2)) {
        throw InvalidSpec("generate_two_semicircle: alpha must be in (0, pi/2)");
    }
    if (spec.n_arc < 5) throw InvalidSpec("generate_two_semicircle: n_arc must be >= 5");

    // Split the arc gaps between T..p and p..B so the larger spacing is smallest.
    const double top_len = pi / 2 - spec.alpha, bottom_len = pi / 2 + spec.alpha;
    const int gaps = spec.n_arc - 1;
    int k1 = 1;
    double best = 1e300;
    for (int k = 1; k < gaps; ++k) {
        const double worst = std::max(top_len / k, bottom_len / (gaps - k));
        if (worst < best) {
            best = worst;
            k1 = k;
        }
    }
    const Point2 cl{-spec.d / 2, 0.0};
    const double marked = pi - spec.alpha;
    std::vector<double> angle = detail::sample_span(pi / 2, marked, k1);
    const auto lower = detail::sample_span(marked, 3 * pi / 2, gaps - k1);
    angle.insert(angle.end(), lower.begin() + 1, lower.end());

    const int n_arc = spec.n_arc;
    std::vector<Point2> pts;
    for (int i = 0; i < n_arc; ++i) {
        if (i == 0) {
            pts.push_back({cl.x, 1.0});
        } else if (i == n_arc - 1) {
            pts.push_back({cl.x, -1.0});
        } else {
            pts.push_back(on_circle(cl, 1.0, angle[i]));
        }
    }
    for (int i = 0; i < n_arc; ++i) pts.push_back({-pts[i].x, -pts[i].y});

    const int p = k1, q = n_arc + k1;
    const int top = 0, bottom = n_arc - 1, bottom_r = n_arc, top_r = 2 * n_arc - 1;

    std::vector<int> left(n_arc), right(n_arc);
    for (int i = 0; i < n_arc; ++i) {
        left[i] = i;
        right[i] = n_arc + i;
    }
    const Point2 axis_left = pts[p] - cl;
    std::vector<Tri> tris = ladder_triangulation(pts, left, axis_left);
    const auto right_tris = ladder_triangulation(pts, right, pts[q] - Point2{-cl.x, 0.0});
    tris.insert(tris.end(), right_tris.begin(), right_tris.end());
    const auto mid = ladder_triangulation(pts, {top, bottom, bottom_r, top_r}, pts[p] - pts[q]);
    tris.insert(tris.end(), mid.begin(), mid.end());

    // Arc condition on the left cap; the right cap is its mirror image.
    std::vector<double> all_angles(pts.size(), -1.0);
    for (int i = 0; i < n_arc; ++i) all_angles[i] = angle[i];
    std::vector<Tri> left_only(tris.begin(), tris.begin() + static_cast<long>(n_arc - 2));
    detail::check_chords(left_only, all_angles, marked, {top, bottom});

    ConstructionOutput out;
    out.points = PointSet(pts);
    out.triangulation = Triangulation{tris}.canonical();
    out.p = p;
    out.q = q;
    out.predicted_dilation = closed_form_t(spec.d, spec.alpha).t;
    out.guides = {Circle{cl, 1.0}, Circle{{-cl.x, 0.0}, 1.0}};
    out.params = {{"d", spec.d}, {"alpha", spec.alpha}, {"n_arc", double(n_arc)},
                  {"gaps_above_p", double(k1)}, {"gaps_below_p", double(gaps - k1)}};
    return out;
}

// Position of a shield point on the ray from `unit_center` (unit circle)
// through `junction`, where the unit circle meets `big`. At the returned
// point the path along the two tangents through s exceeds the boundary path
// (unit arc, straight gap to the big circle, arc of the big circle) by
// `margin` up to the bisection tolerance. Larger margins move s outward.
inline Point2 shield_position(const Point2& unit_center, const Point2& junction, const Circle& big, double margin) {
    if (!(margin > 0.0)) throw InvalidSpec("shield_position: margin must be > 0");
    if (std::abs(distance(junction, unit_center) - 1.0) > 1e-9 ||
        std::abs(distance(junction, big.center) - big.radius) > 1e-9 * big.radius) {
        throw InvalidSpec("shield_position: junction must lie on both circles");
    }
    const Point2 dir = junction - unit_center;
    const Point2 to_big = big.center - unit_center;
    if (std::abs(cross(dir, to_big)) < 1e-12 * norm(to_big)) {
        throw SearchFailed("shield_position: ray passes through the big circle's center (tangent circles)");
    }
    const Circle unit{unit_center, 1.0};

    auto arc = [](const Circle& c, const Point2& a, const Point2& b) {
        const Point2 u = a - c.center, v = b - c.center;
        return c.radius * std::abs(std::atan2(cross(u, v), dot(u, v)));
    };
    auto excess = [&](double lambda) {
        const Point2 s = unit_center + lambda * dir;
        const Point2 k = big.center + (big.radius / distance(s, big.center)) * (s - big.center);
        const auto [u1, u2] = tangent_points(s, unit);
        const Point2 us = distance(u1, big.center) > distance(u2, big.center) ? u1 : u2;
        const auto [v1, v2] = tangent_points(s, big);
        const Point2 vs = distance(v1, unit_center) > distance(v2, unit_center) ? v1 : v2;
        const double shortcut = distance(s, us) + distance(s, vs);
        const double boundary = arc(unit, us, junction) + distance(junction, k) + arc(big, k, vs);
        return shortcut - boundary - margin;
    };

    double lo = 1.0 + 1e-12;
    if (distance(unit_center + lo * dir, big.center) <= big.radius) {
        throw SearchFailed("shield_position: ray enters the big circle");
    }
    double hi = 1.0 + 1e-3;
    int doublings = 0;
    while (excess(hi) <= 0.0) {
        lo = hi;
        hi = 1.0 + 2.0 * (hi - 1.0);
        if (++doublings > 60) throw SearchFailed("shield_position: margin is never reached on the ray");
    }
    if (excess(lo) >= 0.0) throw SearchFailed("shield_position: no sign change in the bisection bracket");
    const auto bracket = numeric::bisect(excess, lo, hi, 1e-12);
    return unit_center + bracket.second * dir;
}

// Two unit circles with centers (+-d/2, 0) and a circle C of radius r about
// the origin. Points lie on the outer arcs of the unit circles and on the top
// and bottom arcs of C; shield points sit in the four concave corners.
inline ConstructionOutput generate_three_circle(const ThreeCircleSpec& spec) {
    const double pi = std::numbers::pi;
    const double d = spec.d, r = spec.r;
    if (!(d > 0.0) || !(r > 0.0) || !(spec.arc_density > 0.0) || !(spec.shield_margin > 0.0)) {
        throw InvalidSpec("generate_three_circle: d, r, arc_density and shield_margin must be > 0");
    }
    const Point2 cl{-d / 2, 0.0};
    const double xj = (1.0 - r * r - d * d / 4) / d;
    const double yj2 = r * r - xj * xj;
    // Each unit circle must cross C above and below the axis.
    if (!(yj2 > 0.0) || !(r > 1.0 - d / 2) || !(r < 1.0 + d / 2)) {
        throw InvalidSpec("generate_three_circle: unit circles do not cross C as required");
    }
    const Point2 j_tl{xj, std::sqrt(yj2)};
    const double theta = std::atan2(j_tl.y, -(j_tl.x - cl.x));
    const Circle c_big{{0.0, 0.0}, r};

    const Point2 s_tl = shield_position(cl, j_tl, c_big, spec.shield_margin);
    const Point2 k_tl = (r / norm(s_tl)) * s_tl;
    const double beta = std::atan2(k_tl.y, k_tl.x) - pi / 2;
    const double g = distance(j_tl, k_tl);
    if (!(beta > 0.0)) throw InvalidSpec("generate_three_circle: C arcs vanish");

    // Marked point: balance the boundary route against the route crossing
    // the cap chord. `a` is the arc length from J_TL down to p.
    const double perimeter = 2 * theta + 2 * g + 2 * r * beta;
    auto crossing_minus_perimeter = [&](double a) { return (2 * a + 2 * std::sin(theta) + 2 * g + 2 * r * beta) - perimeter; };
    const auto br = numeric::bisect(crossing_minus_perimeter, 0.0, theta, 1e-15);
    const double a = 0.5 * (br.first + br.second);
    const double marked = pi - theta + a;

    auto gaps_for = [&](double len) { return std::max(1, static_cast<int>(std::ceil(len * spec.arc_density))); };

    // Left cap from J_TL counterclockwise to J_BL, anchored at p.
    std::vector<double> cap_angle = detail::sample_span(pi - theta, marked, gaps_for(a));
    const auto cap_lower = detail::sample_span(marked, pi + theta, gaps_for(2 * theta - a));
    cap_angle.insert(cap_angle.end(), cap_lower.begin() + 1, cap_lower.end());
    const int n_cap = static_cast<int>(cap_angle.size());
    const int p_local = gaps_for(a);

    // Top arc of C from K_TR to K_TL.
    const std::vector<double> top_angle = detail::sample_span(pi / 2 - beta, pi / 2 + beta, gaps_for(2 * r * beta));
    const int n_top = static_cast<int>(top_angle.size());

    std::vector<Point2> pts;
    for (int i = 0; i < n_cap; ++i) {
        if (i == 0) {
            pts.push_back(j_tl);
        } else if (i == n_cap - 1) {
            pts.push_back({j_tl.x, -j_tl.y});
        } else {
            pts.push_back(on_circle(cl, 1.0, cap_angle[i]));
        }
    }
    std::vector<Point2> top;
    for (int i = 0; i < n_top; ++i) {
        if (i == n_top - 1) {
            top.push_back(k_tl);
        } else if (i == 0) {
            top.push_back({-k_tl.x, k_tl.y});
        } else {
            top.push_back(on_circle({0, 0}, r, top_angle[i]));
        }
    }
    const int bottom0 = n_cap;
    for (int i = 0; i < n_top; ++i) pts.push_back({-top[i].x, -top[i].y});
    const int right0 = bottom0 + n_top;
    for (int i = 0; i < n_cap; ++i) pts.push_back({-pts[i].x, -pts[i].y});
    const int top0 = right0 + n_cap;
    pts.insert(pts.end(), top.begin(), top.end());
    const int shield0 = top0 + n_top;
    pts.push_back(s_tl);
    pts.push_back({s_tl.x, -s_tl.y});
    pts.push_back({-s_tl.x, -s_tl.y});
    pts.push_back({-s_tl.x, s_tl.y});

    // Counterclockwise boundary of the union region, J_TL first.
    std::vector<int> boundary;
    for (int i = 0; i < n_cap; ++i) boundary.push_back(i);
    for (int i = 0; i < n_top; ++i) boundary.push_back(bottom0 + i);
    for (int i = 0; i < n_cap; ++i) boundary.push_back(right0 + i);
    for (int i = 0; i < n_top; ++i) boundary.push_back(top0 + i);

    const int p = p_local, q = right0 + p_local;
    std::vector<int> left(n_cap), right(n_cap);
    for (int i = 0; i < n_cap; ++i) {
        left[i] = i;
        right[i] = right0 + i;
    }
    std::vector<Tri> tris = ladder_triangulation(pts, left, pts[p] - cl);
    const auto rt = ladder_triangulation(pts, right, pts[q] - Point2{-cl.x, 0.0});
    tris.insert(tris.end(), rt.begin(), rt.end());

    std::vector<int> middle{n_cap - 1};
    for (int i = 0; i < n_top; ++i) middle.push_back(bottom0 + i);
    middle.push_back(right0);
    middle.push_back(right0 + n_cap - 1);
    for (int i = 0; i < n_top; ++i) middle.push_back(top0 + i);
    middle.push_back(0);
    const auto mt = ladder_triangulation(pts, middle, pts[p] - pts[q]);
    tris.insert(tris.end(), mt.begin(), mt.end());

    // Fan from each shield over the boundary edges it sees from outside.
    const int nb = static_cast<int>(boundary.size());
    for (int s = shield0; s < shield0 + 4; ++s) {
        for (int i = 0; i < nb; ++i) {
            const int x = boundary[i], y = boundary[(i + 1) % nb];
            if (detail::orient2d_sign(pts[x], pts[y], pts[s]) < 0) tris.push_back({y, x, s});
        }
    }

    std::vector<double> all_angles(pts.size(), -1.0);
    for (int i = 0; i < n_cap; ++i) all_angles[i] = cap_angle[i];
    std::vector<Tri> left_only(tris.begin(), tris.begin() + static_cast<long>(n_cap - 2));
    detail::check_chords(left_only, all_angles, marked, {0, n_cap - 1});

    ConstructionOutput out;
    out.points = PointSet(pts);
    out.triangulation = Triangulation{tris}.canonical();
    out.p = p;
    out.q = q;
    const double ell = distance(pts[p], pts[q]);
    out.predicted_dilation = perimeter / ell;
    out.guides = {Circle{cl, 1.0}, Circle{{-cl.x, 0.0}, 1.0}, c_big};
    out.params = {{"d", d},
                  {"r", r},
                  {"two_theta", 2 * theta},
                  {"two_beta", 2 * beta},
                  {"g", g},
                  {"ell", ell},
                  {"boundary_path", perimeter},
                  {"shield_x", s_tl.x},
                  {"shield_y", s_tl.y},
                  {"arc_density", spec.arc_density},
                  {"shield_margin", spec.shield_margin}};
    return out;
}

} // namespace deldil
