#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "deldil/delaunay.hpp"
#include "deldil/perturbation.hpp"
#include "deldil/rng.hpp"
#include "deldil/validity.hpp"

using namespace deldil;

namespace {

PointSet unit_square() { return PointSet({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

PointSet random_points(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Point2> pts;
    for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(), rng.uniform()});
    return PointSet(pts);
}

// Every triangle whose circumcircle holds no other point, by exhaustive search
// over all triples (general position assumed).
std::set<Tri> brute_delaunay(const PointSet& ps) {
    const int n = static_cast<int>(ps.size());
    std::set<Tri> out;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                const int o = static_cast<int>(orient2d(ps[i], ps[j], ps[k]));
                if (o == 0) continue;
                bool empty = true;
                for (int m = 0; m < n && empty; ++m) {
                    if (m == i || m == j || m == k) continue;
                    empty = incircle(ps[i], ps[j], ps[k], ps[m]) != PredicateSign::Positive;
                }
                if (empty) out.insert(rotate_min_first(o > 0 ? Tri{i, j, k} : Tri{i, k, j}));
            }
        }
    }
    return out;
}

// Lawson flipping from an arbitrary starting triangulation until no edge is illegal.
Triangulation flip_until_legal(const PointSet& ps, Triangulation t) {
    for (bool changed = true; changed;) {
        changed = false;
        const EdgeIndex index(t);
        for (const auto& e : internal_edges(t, index)) {
            if (incircle(ps[e.a], ps[e.b], ps[e.c], ps[e.d]) == PredicateSign::Positive) {
                t.triangles[e.left_tri] = {e.a, e.d, e.c};
                t.triangles[e.right_tri] = {e.d, e.b, e.c};
                changed = true;
                break;
            }
        }
    }
    return t;
}

// Fan from the lexicographically smallest point over the angularly sorted rest.
// The result is a triangulation of a star-shaped polygon; the hull pockets
// are closed by ear clipping against the hull.
Triangulation naive_triangulation(const PointSet& ps) {
    const int n = static_cast<int>(ps.size());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    const int o = *std::min_element(idx.begin(), idx.end(), [&](int a, int b) { return ps[a] < ps[b]; });
    idx.erase(std::find(idx.begin(), idx.end(), o));
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return orient2d(ps[o], ps[a], ps[b]) == PredicateSign::Positive; });
    Triangulation t;
    std::vector<int> chain{idx.front()};
    for (std::size_t k = 1; k < idx.size(); ++k) {
        t.triangles.push_back({o, chain.back(), idx[k]});
        chain.push_back(idx[k]);
        // Fill reflex pockets on the outer chain.
        while (chain.size() >= 3 && orient2d(ps[chain[chain.size() - 3]], ps[chain[chain.size() - 2]], ps[chain.back()]) ==
                                        PredicateSign::Negative) {
            t.triangles.push_back({chain[chain.size() - 3], chain.back(), chain[chain.size() - 2]});
            chain.erase(chain.end() - 2);
        }
    }
    return t;
}

} // namespace

TEST(PointSetTest, RejectsCoincident) {
    EXPECT_THROW(PointSet({{0, 0}, {1, 0}, {0, 0}}), DegenerateInput);
}

TEST(Hull, IncludesCollinearBoundaryPoints) {
    const PointSet ps({{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}});
    const auto h = convex_hull(ps);
    EXPECT_EQ(h, (std::vector<int>{0, 2, 1, 3, 4}));
}

TEST(Delaunay, SquarePicksDiagonalThroughZero) {
    const auto t = delaunay(unit_square());
    ASSERT_EQ(t.triangles.size(), 2u);
    EXPECT_EQ(t.edges().size(), 5u);
    EXPECT_EQ(t.triangles, (std::vector<Tri>{{0, 1, 2}, {0, 2, 3}}));

    // Same square, different labels: diagonal still through index 0.
    const auto t2 = delaunay(PointSet({{1, 1}, {0, 0}, {1, 0}, {0, 1}}));
    const auto e = t2.edges();
    EXPECT_TRUE(std::find(e.begin(), e.end(), Edge{0, 1}) != e.end());
}

TEST(Delaunay, SingleTriangle) {
    const auto t = delaunay(PointSet({{0, 0}, {0, 1}, {1, 0}}));
    EXPECT_EQ(t.triangles, (std::vector<Tri>{{0, 2, 1}}));
}

TEST(Delaunay, CollinearInputFails) {
    EXPECT_THROW(delaunay(PointSet({{0, 0}, {1, 1}, {2, 2}, {3, 3}})), DegenerateInput);
    EXPECT_THROW(delaunay(PointSet({{0, 0}, {1, 1}})), DegenerateInput);
}

TEST(Delaunay, CollinearPrefix) {
    const PointSet ps({{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1.5}, {-1, 1.2}});
    const auto t = delaunay(ps);
    EXPECT_TRUE(is_valid_delaunay(ps, t, 0).valid);
    EXPECT_EQ(t.triangles.size(), 2u * 6 - 4 - 2);
}

TEST(Delaunay, MatchesBruteForceSeed42) {
    const auto ps = random_points(100, 42);
    const auto t = delaunay(ps);
    const auto brute = brute_delaunay(ps);
    EXPECT_EQ(std::set<Tri>(t.triangles.begin(), t.triangles.end()), brute);
}

TEST(Delaunay, MatchesFlipOracleSeed42) {
    const auto ps = random_points(100, 42);
    const auto start = naive_triangulation(ps);
    ASSERT_NO_THROW(validate_structure(ps, oriented_ccw(ps, start)));
    const auto flipped = flip_until_legal(ps, oriented_ccw(ps, start));
    EXPECT_EQ(delaunay(ps), flipped);
}

TEST(Delaunay, ValidAndFlipStableOnRandomSets) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng(seed);
        const int n = 3 + static_cast<int>(rng.uniform() * 60);
        std::vector<Point2> pts;
        for (int i = 0; i < n; ++i) {
            // Coarse grid coordinates make many exact cocircular and collinear cases.
            pts.push_back({std::floor(rng.uniform() * 8), std::floor(rng.uniform() * 8)});
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const PointSet ps(pts);
        if (convex_hull(ps).size() < 3) continue;
        const auto t = delaunay(ps);
        ASSERT_TRUE(is_valid_delaunay(ps, t, 0).valid) << "seed " << seed;
        const EdgeIndex index(t);
        for (const auto& e : internal_edges(t, index)) {
            ASSERT_NE(incircle(ps[e.a], ps[e.b], ps[e.c], ps[e.d]), PredicateSign::Positive);
        }
        const auto info = validate_structure(ps, t);
        ASSERT_EQ(t.edges().size(), info.edge_count);
        ASSERT_EQ(delaunay(ps), t); // deterministic
    }
}

TEST(Delaunay, GridTieBreakIsFanFromSmallestIndex) {
    std::vector<Point2> pts;
    for (int y = 0; y < 3; ++y) {
        for (int x = 0; x < 3; ++x) pts.push_back({double(x), double(y)});
    }
    const PointSet ps(pts);
    const auto t = delaunay(ps);
    // Every cell is a cocircular square; its diagonal runs from the cell's smallest index.
    const auto edges = t.edges();
    for (int y = 0; y < 2; ++y) {
        for (int x = 0; x < 2; ++x) {
            const int v = 3 * y + x;
            EXPECT_TRUE(std::find(edges.begin(), edges.end(), Edge{v, v + 4}) != edges.end());
        }
    }
}

TEST(Validity, SquareEitherDiagonalValid) {
    const auto ps = unit_square();
    EXPECT_TRUE(is_valid_delaunay(ps, Triangulation{{{0, 1, 2}, {0, 2, 3}}}, 0).valid);
    EXPECT_TRUE(is_valid_delaunay(ps, Triangulation{{{0, 1, 3}, {1, 2, 3}}}, 0).valid);
}

TEST(Validity, IllegalDiagonalReported) {
    // Square with corner 2 pushed outward: diagonal 0-2 becomes illegal.
    const PointSet sq({{0, 0}, {1, 0}, {1.1, 1.1}, {0, 1}});
    ASSERT_EQ(incircle(sq[0], sq[1], sq[2], sq[3]), PredicateSign::Positive);
    const auto rep = is_valid_delaunay(sq, Triangulation{{{0, 1, 2}, {0, 2, 3}}}, 0);
    EXPECT_FALSE(rep.valid);
    // One illegal edge; each of its triangles' circles holds the opposite vertex.
    ASSERT_EQ(rep.violations.size(), 2u);
    EXPECT_EQ(rep.violations[0].point, 3);
    EXPECT_EQ(rep.violations[1].point, 1);
    EXPECT_GT(rep.violations[0].margin, 0);
    EXPECT_TRUE(is_valid_delaunay(sq, Triangulation{{{0, 1, 3}, {1, 2, 3}}}, 0).valid);
}

TEST(Validity, MalformedIsDistinctError) {
    const auto ps = unit_square();
    EXPECT_THROW(is_valid_delaunay(ps, Triangulation{{{0, 1, 2}, {0, 1, 3}}}, 0), MalformedTriangulation);
    EXPECT_THROW(is_valid_delaunay(ps, Triangulation{{{0, 1, 7}, {0, 2, 3}}}, 0), MalformedTriangulation);
    EXPECT_THROW(is_valid_delaunay(ps, Triangulation{{{0, 1, 2}}}, 0), MalformedTriangulation);
    EXPECT_THROW(is_valid_delaunay(ps, Triangulation{{{0, 1, 2}, {0, 2, 3}, {0, 1, 3}}}, 0), MalformedTriangulation);
}

TEST(Validity, EpsToleratesNearCocircular) {
    const double pi = std::numbers::pi;
    std::vector<Point2> pts;
    for (int k = 0; k < 12; ++k) pts.push_back(polar(2 * pi * k / 12));
    const PointSet ps(pts);
    Triangulation fan;
    for (int k = 1; k + 1 < 12; ++k) fan.triangles.push_back({0, k, k + 1});
    EXPECT_TRUE(is_valid_delaunay(ps, fan, 1e-9).valid);
}

TEST(Perturb, DeterministicAndBounded) {
    const auto ps = random_points(50, 1);
    const auto a = perturb(ps, 1e-3, 7);
    const auto b = perturb(ps, 1e-3, 7);
    EXPECT_EQ(a.points(), b.points());
    for (std::size_t i = 0; i < ps.size(); ++i) EXPECT_TRUE(within_distance(ps[i], a[i], 1e-3));
    const auto tiny = perturb(ps, 1e-300, 3);
    EXPECT_EQ(tiny.points(), ps.points());
}

TEST(Perturb, SquareGetsUniqueDiagonal) {
    const auto q = perturb(unit_square(), 1e-9, 1);
    EXPECT_NE(incircle(q[0], q[1], q[2], q[3]), PredicateSign::Zero);
    const auto t = delaunay(q);
    const EdgeIndex index(t);
    for (const auto& e : internal_edges(t, index)) {
        EXPECT_EQ(incircle(q[e.a], q[e.b], q[e.c], q[e.d]), PredicateSign::Negative);
    }
}

TEST(Stability, SquareIsUnstable) {
    const auto ps = unit_square();
    EXPECT_FALSE(stability_check(ps, delaunay(ps), 0.1, 20, 1));
    EXPECT_FALSE(stability_check(ps, delaunay(ps), 1e-12, 20, 1));
}

TEST(Stability, TriangleIsStable) {
    const PointSet ps({{0, 0}, {1, 0}, {0.3, 0.8}});
    EXPECT_TRUE(stability_check(ps, delaunay(ps), 0.01 * 0.8544, 100, 5));
}

TEST(Stability, HalvingSearchOnHexagon) {
    std::vector<Point2> pts;
    const double radii[] = {1.0, 1.1, 0.95, 1.05, 0.9, 1.02};
    for (int k = 0; k < 6; ++k) pts.push_back(on_circle({0, 0}, radii[k], 2 * std::numbers::pi * k / 6 + 0.1 * k));
    const PointSet ps(pts);
    const auto t = delaunay(ps);
    const auto delta = find_stable_delta(ps, t, 0.5, 100, 11);
    ASSERT_TRUE(delta.has_value());
    EXPECT_TRUE(stability_check(ps, t, *delta, 100, 11));
}

TEST(Stability, MonotoneInDelta) {
    int consistent = 0, cases = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto ps = random_points(12, 100 + seed);
        const auto t = delaunay(ps);
        for (double delta : {1e-3, 3e-3, 1e-2, 3e-2}) {
            if (!stability_check(ps, t, delta, 30, seed)) {
                ++cases;
                consistent += !stability_check(ps, t, 2 * delta, 30, seed);
            }
        }
    }
    ASSERT_GT(cases, 0);
    EXPECT_GE(consistent, 0.95 * cases);
}

TEST(MakeUnique, SquareWithChosenDiagonal) {
    const auto ps = unit_square();
    for (const Triangulation& want : {Triangulation{{{0, 1, 2}, {0, 2, 3}}}, Triangulation{{{0, 1, 3}, {1, 2, 3}}}}) {
        const auto q = make_unique_delaunay(ps, want, 1e-6);
        for (std::size_t i = 0; i < ps.size(); ++i) EXPECT_TRUE(within_distance(ps[i], q[i], 1e-6));
        EXPECT_EQ(delaunay(q), want);
        EXPECT_TRUE(stability_check(q, want, 1e-15, 10, 2));
    }
}

TEST(MakeUnique, AlreadyUniqueReturnsInput) {
    const auto ps = random_points(30, 8);
    const auto q = make_unique_delaunay(ps, delaunay(ps), 1e-6);
    EXPECT_EQ(q.points(), ps.points());
}

TEST(MakeUnique, RegularPolygonFan) {
    std::vector<Point2> pts;
    for (int k = 0; k < 10; ++k) pts.push_back(polar(2 * std::numbers::pi * k / 10));
    const PointSet ps(pts);
    Triangulation zigzag;
    // Zig-zag strip, not the fan the builder would pick.
    int lo = 1, hi = 9;
    zigzag.triangles.push_back({0, 1, 9});
    bool up = true;
    while (hi - lo > 1) {
        if (up) {
            zigzag.triangles.push_back({lo, lo + 1, hi});
            ++lo;
        } else {
            zigzag.triangles.push_back({lo, hi - 1, hi});
            --hi;
        }
        up = !up;
    }
    const auto q = make_unique_delaunay(ps, zigzag, 1e-6);
    EXPECT_EQ(delaunay(q), zigzag);
}

TEST(MakeUnique, RejectsNonDelaunay) {
    const PointSet sq({{0, 0}, {1, 0}, {1.1, 1.1}, {0, 1}});
    EXPECT_THROW(make_unique_delaunay(sq, Triangulation{{{0, 1, 2}, {0, 2, 3}}}, 1e-6), InvalidSpec);
}
