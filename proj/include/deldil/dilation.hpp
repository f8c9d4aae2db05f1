#pragma once

// Triangulations as Euclidean graphs: shortest paths and dilation.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <thread>
#include <utility>
#include <vector>

#include "deldil/errors.hpp"
#include "deldil/triangulation.hpp"

namespace deldil {

// Undirected graph on a point set; each edge weighs its Euclidean length.
class EuclideanGraph {
public:
    EuclideanGraph(PointSet points, std::vector<Edge> edges) : points_(std::move(points)), edges_(std::move(edges)) {
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        const int n = static_cast<int>(points_.size());
        std::vector<int> degree(n + 1, 0);
        for (const auto& e : edges_) {
            if (e.a < 0 || e.b >= n || e.a == e.b) throw InvalidSpec("EuclideanGraph: bad edge");
            ++degree[e.a + 1];
            ++degree[e.b + 1];
        }
        for (int i = 0; i < n; ++i) degree[i + 1] += degree[i];
        offsets_ = degree;
        targets_.resize(2 * edges_.size());
        weights_.resize(2 * edges_.size());
        std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
        for (const auto& e : edges_) {
            const double w = distance(points_[e.a], points_[e.b]);
            targets_[fill[e.a]] = e.b;
            weights_[fill[e.a]++] = w;
            targets_[fill[e.b]] = e.a;
            weights_[fill[e.b]++] = w;
        }
        // Neighbors in index order keeps relaxation order deterministic.
        for (int v = 0; v < n; ++v) {
            std::vector<std::pair<int, double>> nb;
            for (int k = offsets_[v]; k < offsets_[v + 1]; ++k) nb.emplace_back(targets_[k], weights_[k]);
            std::sort(nb.begin(), nb.end());
            for (int k = offsets_[v]; k < offsets_[v + 1]; ++k) {
                targets_[k] = nb[k - offsets_[v]].first;
                weights_[k] = nb[k - offsets_[v]].second;
            }
        }
    }

    const PointSet& points() const { return points_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int vertex_count() const { return static_cast<int>(points_.size()); }

    // (neighbor, weight) pairs of v.
    auto neighbors(int v) const {
        struct Range {
            const int* t;
            const double* w;
            int n;
        };
        return Range{targets_.data() + offsets_[v], weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    double weight(int u, int v) const {
        for (int k = offsets_[u]; k < offsets_[u + 1]; ++k) {
            if (targets_[k] == v) return weights_[k];
        }
        return std::numeric_limits<double>::infinity();
    }

    // True iff every stored weight equals the recomputed endpoint distance.
    bool weights_consistent() const {
        for (int u = 0; u < vertex_count(); ++u) {
            for (int k = offsets_[u]; k < offsets_[u + 1]; ++k) {
                if (weights_[k] != distance(points_[u], points_[targets_[k]])) return false;
            }
        }
        return true;
    }

private:
    PointSet points_;
    std::vector<Edge> edges_;
    std::vector<int> offsets_;
    std::vector<int> targets_;
    std::vector<double> weights_;
};

inline EuclideanGraph graph_from_triangulation(const PointSet& ps, const Triangulation& t) {
    return EuclideanGraph(ps, t.edges());
}

struct PathResult {
    double length = 0.0;
    std::vector<int> path;
};

// Single-source shortest paths (binary heap). Among equal-length shortest
// paths each vertex keeps the lexicographically smallest vertex sequence.
class ShortestPathTree {
public:
    ShortestPathTree(const EuclideanGraph& g, int source)
        : source_(source),
          dist_(g.vertex_count(), std::numeric_limits<double>::infinity()),
          pred_(g.vertex_count(), -1) {
        if (source < 0 || source >= g.vertex_count()) throw InvalidSpec("shortest path: vertex out of range");
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        std::vector<char> done(g.vertex_count(), 0);
        dist_[source] = 0.0;
        heap.emplace(0.0, source);
        while (!heap.empty()) {
            const auto [du, u] = heap.top();
            heap.pop();
            if (done[u]) continue;
            done[u] = 1;
            const auto nb = g.neighbors(u);
            for (int k = 0; k < nb.n; ++k) {
                const int v = nb.t[k];
                if (done[v]) continue;
                const double nd = du + nb.w[k];
                if (nd < dist_[v]) {
                    dist_[v] = nd;
                    pred_[v] = u;
                    heap.emplace(nd, v);
                } else if (nd == dist_[v] && pred_[v] != u && path_less(u, pred_[v])) {
                    pred_[v] = u;
                }
            }
        }
    }

    int source() const { return source_; }
    double distance_to(int v) const { return dist_[v]; }
    const std::vector<double>& distances() const { return dist_; }

    std::vector<int> path_to(int v) const {
        std::vector<int> p;
        for (int x = v; x != -1; x = pred_[x]) p.push_back(x);
        std::reverse(p.begin(), p.end());
        return p;
    }

private:
    bool path_less(int u, int w) const { return path_to(u) < path_to(w); }

    int source_;
    std::vector<double> dist_;
    std::vector<int> pred_;
};

inline PathResult shortest_path(const EuclideanGraph& g, int u, int v) {
    if (v < 0 || v >= g.vertex_count()) throw InvalidSpec("shortest_path: vertex out of range");
    const ShortestPathTree tree(g, u);
    if (!std::isfinite(tree.distance_to(v))) throw DegenerateInput("shortest_path: vertices are disconnected");
    return {tree.distance_to(v), tree.path_to(v)};
}

// Shortest-path length over Euclidean distance. Clamped at 1, which exact
// arithmetic guarantees and rounding along collinear chains can undercut.
inline double pair_dilation(const EuclideanGraph& g, int u, int v) {
    if (u == v) throw InvalidSpec("pair_dilation: u == v has no defined ratio");
    const auto sp = shortest_path(g, u, v);
    return std::max(1.0, sp.length / distance(g.points()[u], g.points()[v]));
}

struct PairDilation {
    int i = 0; // i < j
    int j = 0;
    double path_length = 0.0;
    double dilation = 0.0;
};

struct DilationReport {
    double max_dilation = 1.0;
    std::pair<int, int> witness{0, 1};
    std::vector<int> witness_path;
    double witness_length = 0.0;
    std::optional<std::vector<PairDilation>> pairs;
};

struct DilationOptions {
    bool keep_pairs = false;
    unsigned threads = 0; // 0: hardware concurrency
};

// Exact maximum dilation: one shortest-path tree per source vertex. Ties are
// resolved toward the smallest (i, j), so the result does not depend on how
// sources are scheduled across threads.
inline DilationReport max_dilation(const EuclideanGraph& g, const DilationOptions& opts = {}) {
    const int n = g.vertex_count();
    if (n < 2) throw InvalidSpec("max_dilation: need at least 2 vertices");

    struct SourceBest {
        double ratio = -1.0;
        int j = -1;
        double length = 0.0;
    };
    std::vector<SourceBest> best(n);
    std::vector<std::vector<PairDilation>> rows(opts.keep_pairs ? n : 0);

    auto work = [&](int i) {
        const ShortestPathTree tree(g, i);
        SourceBest b;
        for (int j = i + 1; j < n; ++j) {
            const double len = tree.distance_to(j);
            if (!std::isfinite(len)) throw DegenerateInput("max_dilation: graph is disconnected");
            const double ratio = len / distance(g.points()[i], g.points()[j]);
            if (ratio > b.ratio) b = {ratio, j, len};
            if (opts.keep_pairs) rows[i].push_back({i, j, len, ratio});
        }
        best[i] = b;
    };

    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) work(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (int i = next++; i < n; i = next++) work(i);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    DilationReport report;
    report.max_dilation = -1.0;
    for (int i = 0; i + 1 < n; ++i) {
        if (best[i].ratio > report.max_dilation) {
            report.max_dilation = best[i].ratio;
            report.witness = {i, best[i].j};
            report.witness_length = best[i].length;
        }
    }
    report.witness_path = ShortestPathTree(g, report.witness.first).path_to(report.witness.second);
    if (opts.keep_pairs) {
        std::vector<PairDilation> all;
        for (auto& r : rows) all.insert(all.end(), r.begin(), r.end());
        report.pairs = std::move(all);
    }
    return report;
}

// Length of a vertex path recomputed from coordinates.
inline double path_length(const PointSet& ps, const std::vector<int>& path) {
    double len = 0.0;
    for (std::size_t k = 1; k < path.size(); ++k) len += distance(ps[path[k - 1]], ps[path[k]]);
    return len;
}

} // namespace deldil
