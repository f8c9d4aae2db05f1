#pragma once

// Limit formulas for the two-semicircle family: as the arcs are sampled
// ever more densely the boundary path has length pi + d and the marked pair
// sits at distance sqrt(4 + d^2 + 4 d cos(alpha)).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "deldil/errors.hpp"
#include "deldil/numeric.hpp"

namespace deldil {

// On a unit circle, with q and q' subtending `theta` and p between them at
// arc `beta` from q: true iff the arc p->q is shorter than arc p->q' plus
// the chord q'q.
inline bool arc_beats_detour(double beta, double theta) {
    if (!(beta >= 0.0) || !(theta >= beta) || !(theta <= 2.0 * std::numbers::pi)) {
        throw InvalidSpec("arc_beats_detour: need 0 <= beta <= theta <= 2*pi");
    }
    return beta < theta / 2.0 + std::sin(theta / 2.0);
}

struct ClosedForm {
    double ell = 0.0; // distance between the marked points
    double t = 0.0;   // limiting dilation
};

inline ClosedForm closed_form_t(double d, double alpha) {
    if (!(d >= 0.0)) throw InvalidSpec("closed_form_t: d must be >= 0");
    const double ell = std::sqrt(4.0 + d * d + 4.0 * d * std::cos(alpha));
    return {ell, (std::numbers::pi + d) / ell};
}

struct LimitPaths {
    double perimeter = 0.0; // around one semicircle and across the gap
    double crossing = 0.0;  // through a semicircle diameter
};

inline LimitPaths path_lengths_limit(double d, double alpha) {
    if (!(d >= 0.0)) throw InvalidSpec("path_lengths_limit: d must be >= 0");
    if (!(alpha > 0.0) || !(alpha <= std::numbers::pi / 2)) {
        throw InvalidSpec("path_lengths_limit: alpha must be in (0, pi/2]");
    }
    const double pi = std::numbers::pi;
    return {pi + d, pi + 2.0 - 2.0 * alpha + d};
}

// Marker angle at which both limit path types have equal length.
inline double balance_alpha() {
    // perimeter - crossing = 2 alpha - 2, independent of d.
    return 1.0;
}

struct SweepRow {
    double d = 0.0;
    double ell = 0.0;
    double t = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double argmax_d = 0.0; // refined by golden section
    double max_t = 0.0;
};

inline constexpr double kSweepRefineTol = 1e-9;

// Dense evaluation of closed_form_t at alpha = 1 over [d_min, d_max].
inline SweepResult sweep_d(double d_min, double d_max, double step) {
    if (!(step > 0.0)) throw InvalidSpec("sweep_d: step must be > 0");
    if (!(d_min >= 0.0) || !(d_max >= d_min)) throw InvalidSpec("sweep_d: need 0 <= d_min <= d_max");
    const double alpha = balance_alpha();
    SweepResult out;
    const auto count = static_cast<long>(std::floor((d_max - d_min) / step * (1.0 + 1e-12))) + 1;
    out.rows.reserve(static_cast<std::size_t>(count));
    std::size_t best = 0;
    for (long i = 0; i < count; ++i) {
        const double d = std::min(d_min + static_cast<double>(i) * step, d_max);
        const auto cf = closed_form_t(d, alpha);
        out.rows.push_back({d, cf.ell, cf.t});
        if (cf.t > out.rows[best].t) best = out.rows.size() - 1;
    }
    const double lo = best == 0 ? out.rows.front().d : out.rows[best - 1].d;
    const double hi = best + 1 == out.rows.size() ? out.rows.back().d : out.rows[best + 1].d;
    if (hi > lo) {
        out.argmax_d = numeric::golden_section_max([&](double d) { return closed_form_t(d, alpha).t; }, lo, hi,
                                                   kSweepRefineTol);
    } else {
        out.argmax_d = lo;
    }
    out.max_t = closed_form_t(out.argmax_d, alpha).t;
    return out;
}

} // namespace deldil
