#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "deldil/errors.hpp"
#include "deldil/geometry.hpp"
#include "deldil/predicates.hpp"

namespace deldil {

// Ordered points with stable indices; no two points coincide.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Point2> points) : points_(std::move(points)) {
        std::vector<Point2> sorted = points_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw DegenerateInput("PointSet: coincident points");
        }
    }

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const Point2& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point2>& points() const { return points_; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

private:
    std::vector<Point2> points_;
};

using Tri = std::array<int, 3>;

struct Edge {
    int a = 0; // a < b
    int b = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

inline std::uint64_t directed_key(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

// Rotate so the smallest index comes first; cyclic order is kept.
inline Tri rotate_min_first(Tri t) {
    const auto it = std::min_element(t.begin(), t.end());
    std::rotate(t.begin(), it, t.end());
    return t;
}

// Indexed triangle list. Triangles are counterclockwise index triples.
struct Triangulation {
    std::vector<Tri> triangles;

    // Smallest index first in each triangle, list sorted. Two triangulations
    // of the same points are equal iff their canonical forms are.
    Triangulation canonical() const {
        Triangulation out{triangles};
        for (auto& t : out.triangles) t = rotate_min_first(t);
        std::sort(out.triangles.begin(), out.triangles.end());
        return out;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(triangles.size() * 3);
        for (const auto& t : triangles) {
            for (int i = 0; i < 3; ++i) out.push_back(make_edge(t[i], t[(i + 1) % 3]));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend bool operator==(const Triangulation& x, const Triangulation& y) {
        return x.canonical().triangles == y.canonical().triangles;
    }
};

// Counterclockwise convex hull, including points lying on hull edges.
// Starts at the lexicographically smallest point.
inline std::vector<int> convex_hull(const PointSet& ps) {
    const int n = static_cast<int>(ps.size());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return ps[a] < ps[b]; });
    if (n < 3) return idx;

    // Strict hull (monotone chain), then splice in boundary points.
    std::vector<int> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && detail::orient2d_sign(ps[h[k - 2]], ps[h[k - 1]], ps[idx[i]]) <= 0) --k;
        h[k++] = idx[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && detail::orient2d_sign(ps[h[k - 2]], ps[h[k - 1]], ps[idx[i]]) <= 0) --k;
        h[k++] = idx[i];
    }
    h.resize(static_cast<std::size_t>(k - 1));
    if (h.size() < 3) return h; // collinear

    std::vector<char> on_hull(n, 0);
    for (int v : h) on_hull[v] = 1;
    std::vector<std::vector<int>> extra(h.size());
    for (int v = 0; v < n; ++v) {
        if (on_hull[v]) continue;
        const Point2& p = ps[v];
        for (std::size_t e = 0; e < h.size(); ++e) {
            const Point2& a = ps[h[e]];
            const Point2& b = ps[h[(e + 1) % h.size()]];
            if (detail::orient2d_sign(a, b, p) != 0) continue;
            if (dot(p - a, b - a) > 0 && dot(p - b, a - b) > 0) {
                extra[e].push_back(v);
                break;
            }
        }
    }
    std::vector<int> out;
    out.reserve(n);
    for (std::size_t e = 0; e < h.size(); ++e) {
        out.push_back(h[e]);
        const Point2 a = ps[h[e]];
        std::sort(extra[e].begin(), extra[e].end(),
                  [&](int u, int w) { return dot(ps[u] - a, ps[u] - a) < dot(ps[w] - a, ps[w] - a); });
        out.insert(out.end(), extra[e].begin(), extra[e].end());
    }
    return out;
}

// Returns a copy with every triangle turned counterclockwise.
// Degenerate triangles and bad indices are structural errors.
inline Triangulation oriented_ccw(const PointSet& ps, const Triangulation& t) {
    Triangulation out = t;
    const int n = static_cast<int>(ps.size());
    for (std::size_t i = 0; i < out.triangles.size(); ++i) {
        auto& tri = out.triangles[i];
        for (int v : tri) {
            if (v < 0 || v >= n) {
                throw MalformedTriangulation("triangle " + std::to_string(i) + ": index out of range");
            }
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            throw MalformedTriangulation("triangle " + std::to_string(i) + ": repeated vertex");
        }
        const int o = detail::orient2d_sign(ps[tri[0]], ps[tri[1]], ps[tri[2]]);
        if (o == 0) throw MalformedTriangulation("triangle " + std::to_string(i) + ": degenerate (collinear)");
        if (o < 0) std::swap(tri[1], tri[2]);
    }
    return out;
}

// Internal edge (a, b) shared by counterclockwise triangles (a, b, c) and (b, a, d).
struct InternalEdge {
    int a, b, c, d;
    int left_tri, right_tri;
};

// Map from directed edge to the counterclockwise triangle that owns it.
class EdgeIndex {
public:
    EdgeIndex() = default;
    explicit EdgeIndex(const Triangulation& t) {
        owner_.reserve(t.triangles.size() * 3);
        for (std::size_t i = 0; i < t.triangles.size(); ++i) {
            const auto& tri = t.triangles[i];
            for (int k = 0; k < 3; ++k) {
                const auto [it, fresh] =
                    owner_.emplace(directed_key(tri[k], tri[(k + 1) % 3]), static_cast<int>(i));
                if (!fresh) {
                    throw MalformedTriangulation("directed edge " + std::to_string(tri[k]) + "->" +
                                                 std::to_string(tri[(k + 1) % 3]) +
                                                 " used by two triangles (overlap or inconsistent orientation)");
                }
            }
        }
    }

    // Triangle owning u->v, or -1.
    int owner(int u, int v) const {
        const auto it = owner_.find(directed_key(u, v));
        return it == owner_.end() ? -1 : it->second;
    }

private:
    std::unordered_map<std::uint64_t, int> owner_;
};

inline int third_vertex(const Tri& t, int u, int v) {
    for (int w : t) {
        if (w != u && w != v) return w;
    }
    return -1;
}

inline std::vector<InternalEdge> internal_edges(const Triangulation& t, const EdgeIndex& index) {
    std::vector<InternalEdge> out;
    for (std::size_t i = 0; i < t.triangles.size(); ++i) {
        const auto& tri = t.triangles[i];
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k], b = tri[(k + 1) % 3];
            if (a > b) continue; // visit each undirected edge once
            const int j = index.owner(b, a);
            if (j < 0) continue;
            out.push_back({a, b, tri[(k + 2) % 3], third_vertex(t.triangles[j], a, b), static_cast<int>(i), j});
        }
    }
    return out;
}

struct StructureInfo {
    std::vector<int> hull;  // counterclockwise, boundary points included
    std::size_t edge_count = 0;
};

// Throws MalformedTriangulation unless `t` (counterclockwise triangles) is a
// triangulation of the convex hull of `ps` using every point.
inline StructureInfo validate_structure(const PointSet& ps, const Triangulation& t) {
    const int n = static_cast<int>(ps.size());
    if (n < 3) throw MalformedTriangulation("triangulation needs at least 3 points");
    const EdgeIndex index(t);

    std::vector<char> used(n, 0);
    for (const auto& tri : t.triangles) {
        for (int v : tri) used[v] = 1;
    }
    for (int v = 0; v < n; ++v) {
        if (!used[v]) throw MalformedTriangulation("point " + std::to_string(v) + " is not a triangle vertex");
    }

    StructureInfo info;
    info.hull = convex_hull(ps);
    const std::size_t h = info.hull.size();
    if (h < 3) throw MalformedTriangulation("points are collinear");

    // Boundary (unmatched) directed edges must be exactly the hull edges.
    std::size_t boundary = 0;
    for (const auto& tri : t.triangles) {
        for (int k = 0; k < 3; ++k) {
            if (index.owner(tri[(k + 1) % 3], tri[k]) < 0) ++boundary;
        }
    }
    for (std::size_t i = 0; i < h; ++i) {
        const int u = info.hull[i], v = info.hull[(i + 1) % h];
        if (index.owner(u, v) < 0 || index.owner(v, u) >= 0) {
            throw MalformedTriangulation("hull edge " + std::to_string(u) + "-" + std::to_string(v) +
                                         " is not a boundary edge");
        }
    }
    if (boundary != h) throw MalformedTriangulation("boundary does not match the convex hull");

    const std::size_t expected = 2 * static_cast<std::size_t>(n) - h - 2;
    if (t.triangles.size() != expected) {
        throw MalformedTriangulation("expected " + std::to_string(expected) + " triangles, got " +
                                     std::to_string(t.triangles.size()));
    }
    info.edge_count = 3 * static_cast<std::size_t>(n) - h - 3;
    return info;
}

} // namespace deldil
