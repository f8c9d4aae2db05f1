#pragma once

// Perturbation tools: random displacement, empirical combinatorial
// stability, and a directed perturbation that turns a cocircular (tied)
// Delaunay triangulation into the unique Delaunay triangulation of a nearby
// point set.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "deldil/delaunay.hpp"
#include "deldil/expansion.hpp"
#include "deldil/rng.hpp"
#include "deldil/triangulation.hpp"
#include "deldil/validity.hpp"

namespace deldil {

// Edges with |incircle margin| at or below this are treated as cocircular ties.
inline constexpr double kTieTolerance = 1e-9;

// Exact test |q - p| <= r.
inline bool within_distance(const Point2& p, const Point2& q, double r) {
    using exact::Expansion;
    const auto dx = Expansion::difference(q.x, p.x);
    const auto dy = Expansion::difference(q.y, p.y);
    const auto rr = Expansion::product(r, r);
    return (dx * dx + dy * dy - rr).sign() <= 0;
}

// Each point moved uniformly within a disk of radius delta; deterministic in seed.
inline PointSet perturb(const PointSet& ps, double delta, std::uint64_t seed) {
    if (!(delta > 0.0)) throw InvalidSpec("perturb: delta must be > 0");
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(derive_seed(seed, attempt));
        std::vector<Point2> out;
        out.reserve(ps.size());
        for (const auto& p : ps) {
            for (;;) {
                const Point2 off = rng.in_disk(delta);
                const Point2 q{p.x + off.x, p.y + off.y};
                if (within_distance(p, q, delta)) {
                    out.push_back(q);
                    break;
                }
            }
        }
        try {
            return PointSet(std::move(out));
        } catch (const DegenerateInput&) {
            if (attempt > 16) throw;
        }
    }
}

namespace detail {

inline bool has_exact_tie(const PointSet& ps, const Triangulation& t) {
    const EdgeIndex index(t);
    for (const auto& e : internal_edges(t, index)) {
        if (incircle_sign(ps[e.a], ps[e.b], ps[e.c], ps[e.d]) >= 0) return true;
    }
    return false;
}

inline bool same_delaunay(const PointSet& ps, const Triangulation& canonical_target) {
    try {
        return delaunay(ps).triangles == canonical_target.triangles;
    } catch (const DegenerateInput&) {
        return false;
    }
}

} // namespace detail

// True iff `trials` independent perturbations of radius `delta` all keep the
// Delaunay triangle set equal to `t`. Cocircular (tied) input returns false.
inline bool stability_check(const PointSet& ps, const Triangulation& t, double delta, int trials, std::uint64_t seed) {
    Triangulation target;
    try {
        target = oriented_ccw(ps, t);
        validate_structure(ps, target);
    } catch (const Error&) {
        return false;
    }
    if (detail::has_exact_tie(ps, target)) return false;
    target = target.canonical();
    if (!detail::same_delaunay(ps, target)) return false;
    for (int trial = 0; trial < trials; ++trial) {
        const PointSet q = perturb(ps, delta, derive_seed(seed, 0x5eed, static_cast<std::uint64_t>(trial)));
        if (!detail::same_delaunay(q, target)) return false;
    }
    return true;
}

// Largest delta of the form start / 2^k (k < max_halvings) passing stability_check.
inline std::optional<double> find_stable_delta(const PointSet& ps, const Triangulation& t, double start, int trials,
                                               std::uint64_t seed, int max_halvings = 60) {
    double delta = start;
    for (int k = 0; k < max_halvings; ++k, delta *= 0.5) {
        if (stability_check(ps, t, delta, trials, seed)) return delta;
    }
    return std::nullopt;
}

namespace detail {

// Cocircular face: triangles of t glued across tied edges.
struct TiedFace {
    std::vector<int> triangles;
    Circle circle;
};

// Neighbors of triangle ti inside its face (across tied edges).
inline std::vector<int> face_neighbors(const Triangulation& t, const EdgeIndex& index, int ti,
                                       const std::vector<char>& tied_tri_edge) {
    std::vector<int> out;
    const auto& tri = t.triangles[ti];
    for (int k = 0; k < 3; ++k) {
        if (!tied_tri_edge[3 * static_cast<std::size_t>(ti) + k]) continue;
        const int tj = index.owner(tri[(k + 1) % 3], tri[k]);
        if (tj >= 0) out.push_back(tj);
    }
    return out;
}

// Dual-tree center of a face: midpoint of a longest path (double sweep).
inline int face_center(const Triangulation& t, const EdgeIndex& index, const TiedFace& face,
                       const std::vector<char>& tied_tri_edge) {
    auto sweep = [&](int start, std::map<int, int>& parent) {
        parent.clear();
        parent[start] = -1;
        std::vector<int> queue{start};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            for (int nb : face_neighbors(t, index, queue[qi], tied_tri_edge)) {
                if (parent.count(nb)) continue;
                parent[nb] = queue[qi];
                queue.push_back(nb);
            }
        }
        return queue.back();
    };
    std::map<int, int> parent;
    const int far = sweep(face.triangles.front(), parent);
    const int other = sweep(far, parent);
    std::vector<int> path;
    for (int x = other; x != -1; x = parent[x]) path.push_back(x);
    return path[path.size() / 2];
}

// Heights above the face's lifted plane (outward radial displacement raises a
// vertex) that make every tied edge of the face strictly convex. The dual of
// a face is a tree, so a breadth-first walk from its center can give each
// newly reached vertex a height a fixed amount above the plane of its parent
// triangle.
inline std::map<int, double> face_heights(const PointSet& ps, const Triangulation& t, const EdgeIndex& index,
                                          const TiedFace& face, const std::vector<char>& tied_tri_edge) {
    std::map<int, double> h;
    const int root = face_center(t, index, face, tied_tri_edge);
    for (int v : t.triangles[root]) h[v] = 0.0;
    std::vector<int> queue{root};
    std::map<int, char> seen{{root, 1}};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const int ti = queue[qi];
        const auto& tri = t.triangles[ti];
        for (int k = 0; k < 3; ++k) {
            if (!tied_tri_edge[3 * static_cast<std::size_t>(ti) + k]) continue;
            const int a = tri[k], b = tri[(k + 1) % 3], c = tri[(k + 2) % 3];
            const int tj = index.owner(b, a);
            if (tj < 0 || seen.count(tj)) continue;
            const int d = third_vertex(t.triangles[tj], a, b);
            if (h.count(d)) throw SearchFailed("make_unique_delaunay: cocircular face is not a tree of triangles");
            // Barycentric interpolation of the parent plane at d.
            const Point2 &pa = ps[a], &pb = ps[b], &pc = ps[c], &pd = ps[d];
            const double area = cross(pb - pa, pc - pa);
            const double la = cross(pb - pd, pc - pd) / area;
            const double lb = cross(pc - pd, pa - pd) / area;
            const double lc = 1.0 - la - lb;
            h[d] = la * h[a] + lb * h[b] + lc * h[c] + 1.0;
            seen[tj] = 1;
            queue.push_back(tj);
        }
    }
    return h;
}

} // namespace detail

// Returns a copy of `ps`, each point moved by at most `budget`, whose unique
// Delaunay triangulation is exactly `t`. `t` must be Delaunay up to cocircular
// ties (margin within kTieTolerance). Input that is already strictly Delaunay
// for `t` is returned unchanged. Throws SearchFailed after bounded retries.
inline PointSet make_unique_delaunay(const PointSet& ps, const Triangulation& t, double budget) {
    if (!(budget > 0.0)) throw InvalidSpec("make_unique_delaunay: budget must be > 0");
    const Triangulation tc = oriented_ccw(ps, t);
    validate_structure(ps, tc);
    const Triangulation target = tc.canonical();
    if (!detail::has_exact_tie(ps, tc) && detail::same_delaunay(ps, target)) return ps;

    const EdgeIndex index(tc);
    const auto edges = internal_edges(tc, index);
    std::vector<char> tied_tri_edge(3 * tc.triangles.size(), 0);
    detail::DisjointSets sets(tc.triangles.size());
    for (const auto& e : edges) {
        const double m = incircle_margin(ps[e.a], ps[e.b], ps[e.c], ps[e.d]);
        if (m > kTieTolerance) {
            throw InvalidSpec("make_unique_delaunay: triangulation is not Delaunay (margin " + std::to_string(m) + ")");
        }
        if (m < -kTieTolerance && detail::incircle_sign(ps[e.a], ps[e.b], ps[e.c], ps[e.d]) < 0) continue;
        sets.unite(e.left_tri, e.right_tri);
        for (int side = 0; side < 2; ++side) {
            const int ti = side == 0 ? e.left_tri : e.right_tri;
            const auto& tri = tc.triangles[ti];
            for (int k = 0; k < 3; ++k) {
                if (make_edge(tri[k], tri[(k + 1) % 3]) == make_edge(e.a, e.b)) {
                    tied_tri_edge[3 * static_cast<std::size_t>(ti) + k] = 1;
                }
            }
        }
    }

    std::map<int, detail::TiedFace> faces;
    for (int i = 0; i < static_cast<int>(tc.triangles.size()); ++i) faces[sets.find(i)].triangles.push_back(i);

    // Per vertex: (face circle, desired height) constraints.
    struct Constraint {
        Circle circle;
        double height;
    };
    std::vector<std::vector<Constraint>> wanted(ps.size());
    for (auto& [root, face] : faces) {
        if (face.triangles.size() < 2) continue;
        const auto& tri = tc.triangles[face.triangles.front()];
        face.circle = circumcircle(ps[tri[0]], ps[tri[1]], ps[tri[2]]);
        for (const auto& [v, height] : detail::face_heights(ps, tc, index, face, tied_tri_edge)) {
            wanted[v].push_back({face.circle, height});
        }
    }

    // Displacement realizing the heights to first order:
    // height change w.r.t. circle (c, R) of moving v by u is 2 (v - c) . u.
    std::vector<Point2> move(ps.size());
    double largest = 0.0;
    for (std::size_t v = 0; v < ps.size(); ++v) {
        const auto& w = wanted[v];
        if (w.empty()) continue;
        const Point2 p = ps[v];
        if (w.size() == 1) {
            const Point2 r = p - w[0].circle.center;
            move[v] = (w[0].height / (2.0 * dot(r, r))) * r;
        } else if (w.size() == 2) {
            const Point2 r1 = 2.0 * (p - w[0].circle.center);
            const Point2 r2 = 2.0 * (p - w[1].circle.center);
            const double det = cross(r1, r2);
            if (std::abs(det) < 1e-12 * norm(r1) * norm(r2)) {
                throw SearchFailed("make_unique_delaunay: shared vertex with parallel face normals");
            }
            move[v] = {(w[0].height * r2.y - w[1].height * r1.y) / det, (r1.x * w[1].height - r2.x * w[0].height) / det};
        } else {
            throw SearchFailed("make_unique_delaunay: vertex shared by more than two cocircular faces");
        }
        largest = std::max(largest, norm(move[v]));
    }
    if (largest == 0.0) throw SearchFailed("make_unique_delaunay: nothing to perturb");

    // Try the largest admissible scale first, then shrink.
    double scale = 0.5 * budget / largest;
    for (int attempt = 0; attempt < 12; ++attempt, scale *= 0.25) {
        std::vector<Point2> out(ps.points());
        bool ok = true;
        for (std::size_t v = 0; v < out.size(); ++v) {
            out[v] = {ps[v].x + scale * move[v].x, ps[v].y + scale * move[v].y};
            if (!within_distance(ps[v], out[v], budget)) ok = false;
        }
        if (!ok) continue;
        PointSet candidate;
        try {
            candidate = PointSet(std::move(out));
        } catch (const DegenerateInput&) {
            continue;
        }
        if (!detail::has_exact_tie(candidate, tc) && detail::same_delaunay(candidate, target)) return candidate;
    }
    throw SearchFailed("make_unique_delaunay: no perturbation within budget reproduced the triangulation");
}

} // namespace deldil
