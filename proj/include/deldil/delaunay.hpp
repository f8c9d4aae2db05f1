#pragma once

// Delaunay triangulation by incremental insertion with Lawson flips.
//
// Points are inserted in lexicographic (x, y) order, so every new point lies
// outside the current hull and no point location is needed: the new point is
// joined to the visible hull edges and the edges opposite it are legalized.
// All decisions use the exact predicates.
//
// Cocircular ties: after construction, triangles whose shared edge has four
// exactly cocircular points are merged into one convex polygon, which is
// re-triangulated as a fan from its smallest index. For the four corners of a
// square this picks the diagonal through vertex 0.

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "deldil/errors.hpp"
#include "deldil/predicates.hpp"
#include "deldil/triangulation.hpp"

namespace deldil {

namespace detail {

class IncrementalBuilder {
public:
    explicit IncrementalBuilder(const std::vector<Point2>& pts) : pts_(pts), next_(pts.size(), -1), prev_(pts.size(), -1) {}

    std::vector<Tri> run() {
        const int n = static_cast<int>(pts_.size());
        if (n < 3) throw DegenerateInput("delaunay: need at least 3 points");
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return pts_[a] < pts_[b]; });

        // The first points may be collinear; find the first one off their line.
        int j = 2;
        while (j < n && orient2d_sign(pts_[order[0]], pts_[order[1]], pts_[order[j]]) == 0) ++j;
        if (j == n) throw DegenerateInput("delaunay: all points are collinear");
        seed_fan(order, j);

        int last = order[j];
        for (int k = j + 1; k < n; ++k) {
            insert(order[k], last);
            last = order[k];
        }

        std::vector<Tri> out;
        out.reserve(tris_.size());
        for (const auto& t : tris_) out.push_back(t);
        return out;
    }

private:
    void set_tri(int idx, int a, int b, int c) {
        tris_[idx] = {a, b, c};
        owner_[directed_key(a, b)] = idx;
        owner_[directed_key(b, c)] = idx;
        owner_[directed_key(c, a)] = idx;
    }

    int add_tri(int a, int b, int c) {
        tris_.push_back({});
        const int idx = static_cast<int>(tris_.size()) - 1;
        set_tri(idx, a, b, c);
        return idx;
    }

    void drop_edges(int idx) {
        const auto& t = tris_[idx];
        for (int k = 0; k < 3; ++k) owner_.erase(directed_key(t[k], t[(k + 1) % 3]));
    }

    int owner(int u, int v) const {
        const auto it = owner_.find(directed_key(u, v));
        return it == owner_.end() ? -1 : it->second;
    }

    // Points order[0..j-1] are collinear and sorted along their line; order[j] is the apex.
    void seed_fan(const std::vector<int>& order, int j) {
        const int apex = order[j];
        const bool ccw = orient2d_sign(pts_[order[0]], pts_[order[1]], pts_[apex]) > 0;
        for (int m = 0; m + 1 < j; ++m) {
            if (ccw) {
                add_tri(order[m], order[m + 1], apex);
            } else {
                add_tri(order[m + 1], order[m], apex);
            }
        }
        if (ccw) {
            for (int m = 0; m + 1 < j; ++m) link(order[m], order[m + 1]);
            link(order[j - 1], apex);
            link(apex, order[0]);
        } else {
            for (int m = 0; m + 1 < j; ++m) link(order[m + 1], order[m]);
            link(order[0], apex);
            link(apex, order[j - 1]);
        }
    }

    void link(int u, int v) {
        next_[u] = v;
        prev_[v] = u;
    }

    bool visible(int u, int p) const { return orient2d_sign(pts_[u], pts_[next_[u]], pts_[p]) < 0; }

    void insert(int p, int last) {
        // Find one hull edge (u, next[u]) visible from p; try near the previous point first.
        int u = -1;
        if (visible(last, p)) {
            u = last;
        } else if (visible(prev_[last], p)) {
            u = prev_[last];
        } else {
            int w = next_[last];
            while (w != last) {
                if (visible(w, p)) {
                    u = w;
                    break;
                }
                w = next_[w];
            }
        }
        if (u < 0) throw DegenerateInput("delaunay: inserted point sees no hull edge");

        int first = u;
        while (visible(prev_[first], p)) first = prev_[first];
        int end = next_[u];
        while (visible(end, p)) end = next_[end];

        std::vector<std::pair<int, int>> stack;
        for (int x = first; x != end; x = next_[x]) {
            const int y = next_[x];
            add_tri(x, p, y);
            stack.emplace_back(y, x);
        }
        link(first, p);
        link(p, end);
        legalize(stack);
    }

    // Each entry (a, b) names a directed edge whose owner contains the new point.
    void legalize(std::vector<std::pair<int, int>>& stack) {
        while (!stack.empty()) {
            const auto [a, b] = stack.back();
            stack.pop_back();
            const int t1 = owner(a, b);
            const int t2 = owner(b, a);
            if (t1 < 0 || t2 < 0) continue;
            const int c = third_vertex(tris_[t1], a, b);
            const int d = third_vertex(tris_[t2], a, b);
            if (incircle_sign(pts_[a], pts_[b], pts_[c], pts_[d]) <= 0) continue;
            drop_edges(t1);
            drop_edges(t2);
            set_tri(t1, a, d, c);
            set_tri(t2, d, b, c);
            stack.emplace_back(a, d);
            stack.emplace_back(d, b);
        }
    }

    const std::vector<Point2>& pts_;
    std::vector<Tri> tris_;
    std::unordered_map<std::uint64_t, int> owner_;
    std::vector<int> next_, prev_; // counterclockwise hull links
};

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<int> parent_;
};

// Merge exactly cocircular neighbors and re-triangulate each merged polygon
// as a fan from its smallest vertex index.
inline std::vector<Tri> canonicalize_ties(const std::vector<Point2>& pts, std::vector<Tri> tris) {
    const Triangulation t{tris};
    const EdgeIndex index(t);
    DisjointSets sets(tris.size());
    bool any = false;
    for (const auto& e : internal_edges(t, index)) {
        if (incircle_sign(pts[e.a], pts[e.b], pts[e.c], pts[e.d]) == 0) {
            sets.unite(e.left_tri, e.right_tri);
            any = true;
        }
    }
    if (!any) return tris;

    std::unordered_map<int, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(tris.size()); ++i) groups[sets.find(i)].push_back(i);

    std::vector<Tri> out;
    out.reserve(tris.size());
    for (auto& [root, members] : groups) {
        if (members.size() == 1) {
            out.push_back(tris[members.front()]);
            continue;
        }
        std::unordered_map<std::uint64_t, char> in_group;
        for (int m : members) {
            const auto& tri = tris[m];
            for (int k = 0; k < 3; ++k) in_group[directed_key(tri[k], tri[(k + 1) % 3])] = 1;
        }
        std::unordered_map<int, int> succ;
        for (int m : members) {
            const auto& tri = tris[m];
            for (int k = 0; k < 3; ++k) {
                const int u = tri[k], v = tri[(k + 1) % 3];
                if (!in_group.count(directed_key(v, u))) succ[u] = v;
            }
        }
        int start = succ.begin()->first;
        for (const auto& kv : succ) start = std::min(start, kv.first);
        std::vector<int> cycle{start};
        for (int v = succ.at(start); v != start; v = succ.at(v)) cycle.push_back(v);
        for (std::size_t i = 1; i + 1 < cycle.size(); ++i) out.push_back({cycle[0], cycle[i], cycle[i + 1]});
    }
    return out;
}

} // namespace detail

// Delaunay triangulation of `ps` (counterclockwise triangles, canonical order).
// Throws DegenerateInput for fewer than 3 points or all-collinear input.
inline Triangulation delaunay(const PointSet& ps) {
    detail::IncrementalBuilder builder(ps.points());
    auto tris = detail::canonicalize_ties(ps.points(), builder.run());
    return Triangulation{std::move(tris)}.canonical();
}

} // namespace deldil
