#pragma once

#include <cmath>
#include <utility>

#include "deldil/errors.hpp"

namespace deldil::numeric {

// Bisection for a sign change of f on [lo, hi]. Returns the final bracket;
// f(first) and f(second) keep the signs of f(lo) and f(hi).
template <class F>
std::pair<double, double> bisect(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return {lo, lo};
    if (fhi == 0.0) return {hi, hi};
    if ((flo < 0) == (fhi < 0)) throw SearchFailed("bisect: no sign change in bracket");
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return {mid, mid};
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace deldil::numeric
