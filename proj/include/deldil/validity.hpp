#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "deldil/predicates.hpp"
#include "deldil/triangulation.hpp"

namespace deldil {

struct Violation {
    int triangle = 0; // index into the checked triangulation
    int point = 0;
    double margin = 0.0; // (R - |center - point|) / R; positive means inside
};

struct ValidityReport {
    bool valid = true;
    std::vector<Violation> violations;
};

// Relative amount by which `d` lies inside the circumcircle of abc.
inline double incircle_margin(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const Circle cc = circumcircle(a, b, c);
    return (cc.radius - distance(cc.center, d)) / cc.radius;
}

// Empty-circumcircle check. With eps == 0 the exact predicate decides and
// cocircular points are never violations; with eps > 0 a point is a
// violation only when inside by more than eps relative to the circumradius.
// Throws MalformedTriangulation when `t` is not a triangulation of `ps`.
// Triangles may be given in either orientation.
inline ValidityReport is_valid_delaunay(const PointSet& ps, const Triangulation& t, double eps) {
    if (!(eps >= 0.0)) throw InvalidSpec("is_valid_delaunay: eps must be >= 0");
    const Triangulation ccw = oriented_ccw(ps, t);
    validate_structure(ps, ccw);

    std::vector<int> by_x(ps.size());
    std::iota(by_x.begin(), by_x.end(), 0);
    std::sort(by_x.begin(), by_x.end(), [&](int a, int b) { return ps[a].x < ps[b].x; });
    std::vector<double> xs(ps.size());
    for (std::size_t i = 0; i < by_x.size(); ++i) xs[i] = ps[by_x[i]].x;

    ValidityReport report;
    for (std::size_t ti = 0; ti < ccw.triangles.size(); ++ti) {
        const auto& tri = ccw.triangles[ti];
        const Point2 &a = ps[tri[0]], &b = ps[tri[1]], &c = ps[tri[2]];
        const Circle cc = circumcircle(a, b, c);
        const double reach = cc.radius * (1.0 + 1e-6) + 1e-300;
        const auto lo = std::lower_bound(xs.begin(), xs.end(), cc.center.x - reach) - xs.begin();
        const auto hi = std::upper_bound(xs.begin(), xs.end(), cc.center.x + reach) - xs.begin();
        for (auto k = lo; k < hi; ++k) {
            const int v = by_x[static_cast<std::size_t>(k)];
            if (v == tri[0] || v == tri[1] || v == tri[2]) continue;
            const Point2& d = ps[v];
            if (std::abs(d.y - cc.center.y) > reach) continue;
            const double margin = (cc.radius - distance(cc.center, d)) / cc.radius;
            const bool inside =
                eps == 0.0 ? detail::incircle_sign(a, b, c, d) > 0 : margin > eps;
            if (inside) report.violations.push_back({static_cast<int>(ti), v, margin});
        }
    }
    report.valid = report.violations.empty();
    return report;
}

} // namespace deldil
