#pragma once

// Seeded random point sets, planted configurations and dilation statistics.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "deldil/constructions.hpp"
#include "deldil/delaunay.hpp"
#include "deldil/dilation.hpp"
#include "deldil/errors.hpp"
#include "deldil/perturbation.hpp"
#include "deldil/rng.hpp"

namespace deldil {

enum class DensityKind { UniformSquare, UniformDisk, Gaussian, Mixture };

struct DensitySpec {
    DensityKind kind = DensityKind::UniformSquare;
    Point2 origin{0.0, 0.0}; // square: lower-left corner; disk and gaussian: center / mean
    double size = 1.0;       // square: side; disk: radius; gaussian: standard deviation
    std::vector<std::pair<double, DensitySpec>> components; // mixture only: (weight, component)

    static DensitySpec uniform_square(double side = 1.0, Point2 corner = {0.0, 0.0}) {
        return {DensityKind::UniformSquare, corner, side, {}};
    }
    static DensitySpec uniform_disk(double radius = 0.5, Point2 center = {0.5, 0.5}) {
        return {DensityKind::UniformDisk, center, radius, {}};
    }
    static DensitySpec gaussian(double sigma = 0.15, Point2 mean = {0.5, 0.5}) {
        return {DensityKind::Gaussian, mean, sigma, {}};
    }
    static DensitySpec mixture(std::vector<std::pair<double, DensitySpec>> parts) {
        return {DensityKind::Mixture, {}, 0.0, std::move(parts)};
    }
};

// "uniform-square", "uniform-disk", "gaussian", or "mixture" (equal parts of
// the three unit-scale kinds).
inline DensitySpec parse_density(const std::string& name) {
    if (name == "uniform-square") return DensitySpec::uniform_square();
    if (name == "uniform-disk") return DensitySpec::uniform_disk();
    if (name == "gaussian") return DensitySpec::gaussian();
    if (name == "mixture") {
        return DensitySpec::mixture({{1.0, DensitySpec::uniform_square()},
                                     {1.0, DensitySpec::uniform_disk(0.25, {0.25, 0.75})},
                                     {1.0, DensitySpec::gaussian(0.1, {0.75, 0.25})}});
    }
    throw InvalidSpec("unknown density '" + name + "'");
}

inline void validate_density(const DensitySpec& d) {
    if (d.kind == DensityKind::Mixture) {
        if (d.components.empty()) throw InvalidSpec("mixture density needs components");
        for (const auto& [w, c] : d.components) {
            if (!(w > 0.0)) throw InvalidSpec("mixture weights must be > 0");
            if (c.kind == DensityKind::Mixture) throw InvalidSpec("nested mixtures are not supported");
            validate_density(c);
        }
    } else if (!(d.size > 0.0)) {
        throw InvalidSpec("density scale must be > 0");
    }
}

inline Point2 draw(const DensitySpec& d, Rng& rng) {
    switch (d.kind) {
    case DensityKind::UniformSquare:
        return {d.origin.x + d.size * rng.uniform(), d.origin.y + d.size * rng.uniform()};
    case DensityKind::UniformDisk: {
        const Point2 u = rng.in_disk(d.size);
        return {d.origin.x + u.x, d.origin.y + u.y};
    }
    case DensityKind::Gaussian: {
        const double x = rng.normal(), y = rng.normal();
        return {d.origin.x + d.size * x, d.origin.y + d.size * y};
    }
    case DensityKind::Mixture: {
        double total = 0.0;
        for (const auto& c : d.components) total += c.first;
        double u = rng.uniform() * total;
        for (const auto& [w, c] : d.components) {
            if (u < w) return draw(c, rng);
            u -= w;
        }
        return draw(d.components.back().second, rng);
    }
    }
    throw InvalidSpec("unknown density kind");
}

// n i.i.d. points; exact duplicates are redrawn.
inline PointSet sample(const DensitySpec& density, int n, std::uint64_t seed) {
    if (n < 3) throw InvalidSpec("sample: n must be >= 3");
    validate_density(density);
    Rng rng(seed);
    std::vector<Point2> pts;
    std::set<Point2> seen;
    pts.reserve(static_cast<std::size_t>(n));
    while (static_cast<int>(pts.size()) < n) {
        const Point2 p = draw(density, rng);
        if (seen.insert(p).second) pts.push_back(p);
    }
    return PointSet(std::move(pts));
}

struct TrialRecord {
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    double max_dilation = 1.0;
    int witness_i = 0;
    int witness_j = 0;
    int redraws = 0; // degenerate samples replaced
};

struct TrendSummary {
    int n = 0;
    double median = 0.0;
    double max = 0.0;
    std::vector<std::pair<double, double>> exceed; // (threshold, fraction of trials above it)
};

struct TrendResult {
    std::vector<TrialRecord> trials; // ordered by (n, trial)
    std::vector<TrendSummary> summary;
};

inline const std::vector<double>& trend_thresholds() {
    static const std::vector<double> t{1.2, 1.3, 1.4, 1.5};
    return t;
}

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

inline TrialRecord run_trial(const DensitySpec& density, int n, int trial, std::uint64_t master) {
    TrialRecord rec;
    rec.n = n;
    rec.trial = trial;
    rec.seed = derive_seed(master, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial));
    for (std::uint64_t attempt = 0;; ++attempt) {
        const std::uint64_t s = attempt == 0 ? rec.seed : derive_seed(rec.seed, attempt);
        try {
            const PointSet ps = sample(density, n, s);
            const auto report = max_dilation(graph_from_triangulation(ps, delaunay(ps)), {false, 1});
            rec.max_dilation = std::max(1.0, report.max_dilation);
            rec.witness_i = report.witness.first;
            rec.witness_j = report.witness.second;
            return rec;
        } catch (const DegenerateInput&) {
            ++rec.redraws;
            if (attempt > 100) throw SearchFailed("dilation_trend: sampling keeps producing degenerate sets");
        }
    }
}

// Max dilation of the Delaunay triangulation of `trials` samples at each n.
// Every trial seeds itself from (seed, n, trial), so results do not depend
// on `threads`.
inline TrendResult dilation_trend(const DensitySpec& density, const std::vector<int>& ns, int trials,
                                  std::uint64_t seed, unsigned threads = 1) {
    validate_density(density);
    if (ns.empty() || trials < 1) throw InvalidSpec("dilation_trend: need at least one n and one trial");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 3) throw InvalidSpec("dilation_trend: every n must be >= 3");
        if (i > 0 && ns[i] <= ns[i - 1]) throw InvalidSpec("dilation_trend: ns must be increasing");
    }
    TrendResult out;
    out.trials.resize(ns.size() * static_cast<std::size_t>(trials));
    const int jobs = static_cast<int>(out.trials.size());
    auto job = [&](int k) { out.trials[k] = run_trial(density, ns[k / trials], k % trials, seed); };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1) {
        for (int k = 0; k < jobs; ++k) job(k);
    } else {
        std::atomic<int> next{0};
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (int k = next++; k < jobs; k = next++) job(k);
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

    for (std::size_t i = 0; i < ns.size(); ++i) {
        std::vector<double> vals;
        for (int t = 0; t < trials; ++t) vals.push_back(out.trials[i * trials + t].max_dilation);
        TrendSummary s;
        s.n = ns[i];
        s.median = median_of(vals);
        s.max = *std::max_element(vals.begin(), vals.end());
        for (double th : trend_thresholds()) {
            const auto above = std::count_if(vals.begin(), vals.end(), [&](double v) { return v > th; });
            s.exceed.emplace_back(th, static_cast<double>(above) / trials);
        }
        out.summary.push_back(s);
    }
    return out;
}

// Number of adjacent pairs of medians that decrease.
inline int median_inversions(const TrendResult& r) {
    int inv = 0;
    for (std::size_t i = 1; i < r.summary.size(); ++i) inv += r.summary[i].median < r.summary[i - 1].median;
    return inv;
}

// K configuration points inside the unit box, each jittered within
// ball_radius, then mapped by x -> scale * x + offset; plus n_outside points
// from a density restricted to the complement of the mapped box.
struct PlantSpec {
    PointSet config;
    double ball_radius = 0.0;
    double scale = 1.0;
    Point2 offset{0.0, 0.0};
    int n_outside = 0;
};

inline constexpr long kOutsideAttempts = 1000000;

inline void validate_plant(const PlantSpec& spec) {
    if (!(spec.ball_radius >= 0.0)) throw InvalidSpec("plant: ball_radius must be >= 0");
    if (!(spec.scale > 0.0)) throw InvalidSpec("plant: scale must be > 0");
    if (spec.n_outside < 0) throw InvalidSpec("plant: n_outside must be >= 0");
    const double r = spec.ball_radius;
    for (const auto& x : spec.config) {
        if (!(x.x - r > 0.0 && x.x + r < 1.0 && x.y - r > 0.0 && x.y + r < 1.0)) {
            throw InvalidSpec("plant: configuration balls must lie inside the unit box");
        }
    }
    if (r > 0.0) {
        std::vector<Point2> sorted(spec.config.begin(), spec.config.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            for (std::size_t j = i + 1; j < sorted.size() && sorted[j].x - sorted[i].x <= 2 * r; ++j) {
                if (distance(sorted[i], sorted[j]) <= 2 * r) throw InvalidSpec("plant: configuration balls overlap");
            }
        }
    }
}

inline bool inside_box(const Point2& p, double scale, const Point2& offset) {
    const double u = (p.x - offset.x) / scale, v = (p.y - offset.y) / scale;
    return u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0;
}

// The first K points are the planted configuration, in order.
inline PointSet plant(const PlantSpec& spec, const DensitySpec& density, std::uint64_t seed) {
    validate_plant(spec);
    validate_density(density);
    Rng rng(derive_seed(seed, 0x9a11));
    std::vector<Point2> pts;
    for (const auto& x : spec.config) {
        Point2 z = x;
        if (spec.ball_radius > 0.0) {
            for (;;) {
                const Point2 u = rng.in_disk(spec.ball_radius);
                z = {x.x + u.x, x.y + u.y};
                if (within_distance(x, z, spec.ball_radius)) break;
            }
        }
        pts.push_back({spec.scale * z.x + spec.offset.x, spec.scale * z.y + spec.offset.y});
    }
    std::set<Point2> seen(pts.begin(), pts.end());
    Rng outside(derive_seed(seed, 0x0b5));
    long attempts = 0;
    for (int k = 0; k < spec.n_outside;) {
        if (++attempts > kOutsideAttempts) {
            throw SearchFailed("plant: rejection sampling outside the box gave up after 1e6 attempts");
        }
        const Point2 y = draw(density, outside);
        if (inside_box(y, spec.scale, spec.offset) || !seen.insert(y).second) continue;
        pts.push_back(y);
        ++k;
    }
    return PointSet(std::move(pts));
}

struct PlantedConfiguration {
    PointSet config;       // inside the unit box, unique Delaunay triangulation
    Triangulation triangulation;
    double ball_radius = 0.0;
    double dilation = 0.0; // of the configuration alone
    int p = 0;
    int q = 1;
};

// The two-semicircle construction scaled into the unit box, perturbed so its
// Delaunay triangulation is unique, with the planting radius set to half the
// largest stable perturbation found by halving.
inline PlantedConfiguration planted_two_semicircle(const TwoSemicircleSpec& spec, std::uint64_t seed) {
    const auto c = generate_two_semicircle(spec);
    double lox = 1e300, hix = -1e300, loy = 1e300, hiy = -1e300;
    for (const auto& g : c.guides) {
        lox = std::min(lox, g.center.x - g.radius);
        hix = std::max(hix, g.center.x + g.radius);
        loy = std::min(loy, g.center.y - g.radius);
        hiy = std::max(hiy, g.center.y + g.radius);
    }
    const double s = 0.5 / std::max(hix - lox, hiy - loy);
    const Point2 mid{0.5 * (lox + hix), 0.5 * (loy + hiy)};
    std::vector<Point2> mapped;
    for (const auto& p : c.points) mapped.push_back({0.5 + s * (p.x - mid.x), 0.5 + s * (p.y - mid.y)});
    const PointSet scaled(std::move(mapped));
    if (!is_valid_delaunay(scaled, c.triangulation, kConstructionEps).valid) {
        throw SearchFailed("planted_two_semicircle: scaled construction lost validity");
    }

    PlantedConfiguration out;
    out.config = make_unique_delaunay(scaled, c.triangulation, 1e-7 * s);
    out.triangulation = c.triangulation;
    const auto delta = find_stable_delta(out.config, out.triangulation, 1e-3, 20, seed);
    if (!delta) throw SearchFailed("planted_two_semicircle: no stable perturbation radius found");
    out.ball_radius = *delta / 2;
    out.dilation = max_dilation(graph_from_triangulation(out.config, out.triangulation), {false, 1}).max_dilation;
    out.p = c.p;
    out.q = c.q;
    return out;
}

inline constexpr double kInvarianceTol = 1e-9;

// Max Delaunay dilation is unchanged (relative kInvarianceTol) by x -> a x + b.
// Throws DegenerateInput when the Delaunay triangulation of `ps` is not
// unique or not stable under tiny perturbation; perturb such sets first.
inline bool invariance_check(const PointSet& ps, double a, Point2 b, std::uint64_t seed) {
    if (a == 0.0 || !std::isfinite(a)) throw InvalidSpec("invariance_check: a must be finite and nonzero");
    const Triangulation t = delaunay(ps);
    double extent = 0.0;
    for (const auto& p : ps) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    if (!stability_check(ps, t, 1e-9 * std::max(extent, 1e-300), 4, seed)) {
        throw DegenerateInput("invariance_check: Delaunay triangulation is not unique and stable; perturb the points first");
    }
    std::vector<Point2> moved;
    for (const auto& p : ps) moved.push_back({a * p.x + b.x, a * p.y + b.y});
    const PointSet q(std::move(moved));
    const double d0 = max_dilation(graph_from_triangulation(ps, t), {false, 1}).max_dilation;
    const double d1 = max_dilation(graph_from_triangulation(q, delaunay(q)), {false, 1}).max_dilation;
    return std::abs(d1 - d0) <= kInvarianceTol * d0;
}

} // namespace deldil
