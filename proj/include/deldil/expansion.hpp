#pragma once

// Floating-point expansion arithmetic (sum of nonoverlapping doubles,
// increasing magnitude). Exact for +, -, * of doubles, assuming IEEE binary64
// with round-to-nearest and no extended-precision intermediates.

#include <vector>

namespace deldil::exact {

namespace detail {

inline void two_sum(double a, double b, double& x, double& y) {
    x = a + b;
    const double bv = x - a;
    const double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void fast_two_sum(double a, double b, double& x, double& y) {
    // |a| >= |b|
    x = a + b;
    y = b - (x - a);
}

inline void two_diff(double a, double b, double& x, double& y) {
    x = a - b;
    const double bv = a - x;
    const double av = x + bv;
    y = (a - av) + (bv - b);
}

inline void split(double a, double& hi, double& lo) {
    constexpr double splitter = 134217729.0; // 2^27 + 1
    const double c = splitter * a;
    const double abig = c - a;
    hi = c - abig;
    lo = a - hi;
}

inline void two_product(double a, double b, double& x, double& y) {
    x = a * b;
    double ahi, alo, bhi, blo;
    split(a, ahi, alo);
    split(b, bhi, blo);
    const double err1 = x - ahi * bhi;
    const double err2 = err1 - alo * bhi;
    const double err3 = err2 - ahi * blo;
    y = alo * blo - err3;
}

} // namespace detail

class Expansion {
public:
    Expansion() = default;
    explicit Expansion(double v) {
        if (v != 0.0) terms_.push_back(v);
    }

    static Expansion difference(double a, double b) {
        double x, y;
        detail::two_diff(a, b, x, y);
        Expansion e;
        if (y != 0.0) e.terms_.push_back(y);
        if (x != 0.0) e.terms_.push_back(x);
        return e;
    }

    static Expansion product(double a, double b) {
        double x, y;
        detail::two_product(a, b, x, y);
        Expansion e;
        if (y != 0.0) e.terms_.push_back(y);
        if (x != 0.0) e.terms_.push_back(x);
        return e;
    }

    int sign() const {
        if (terms_.empty()) return 0;
        return terms_.back() > 0 ? 1 : -1;
    }

    // Nearest-ish double; the most significant term dominates.
    double estimate() const {
        double s = 0.0;
        for (double t : terms_) s += t;
        return s;
    }

    const std::vector<double>& terms() const { return terms_; }

    Expansion operator-() const {
        Expansion r = *this;
        for (double& t : r.terms_) t = -t;
        return r;
    }

    friend Expansion operator+(const Expansion& e, const Expansion& f) {
        Expansion h = e;
        for (double b : f.terms_) h = h.grow(b);
        return h;
    }

    friend Expansion operator-(const Expansion& e, const Expansion& f) { return e + (-f); }

    friend Expansion operator*(const Expansion& e, const Expansion& f) {
        Expansion h;
        for (double b : f.terms_) h = h + e.scale(b);
        return h;
    }

private:
    Expansion grow(double b) const {
        Expansion h;
        h.terms_.reserve(terms_.size() + 1);
        double q = b;
        for (double t : terms_) {
            double qn, hh;
            detail::two_sum(q, t, qn, hh);
            if (hh != 0.0) h.terms_.push_back(hh);
            q = qn;
        }
        if (q != 0.0) h.terms_.push_back(q);
        return h;
    }

    Expansion scale(double b) const {
        Expansion h;
        if (terms_.empty() || b == 0.0) return h;
        h.terms_.reserve(2 * terms_.size());
        double q, hh;
        detail::two_product(terms_[0], b, q, hh);
        if (hh != 0.0) h.terms_.push_back(hh);
        for (std::size_t i = 1; i < terms_.size(); ++i) {
            double p1, p0, sum;
            detail::two_product(terms_[i], b, p1, p0);
            detail::two_sum(q, p0, sum, hh);
            if (hh != 0.0) h.terms_.push_back(hh);
            detail::fast_two_sum(p1, sum, q, hh);
            if (hh != 0.0) h.terms_.push_back(hh);
        }
        if (q != 0.0) h.terms_.push_back(q);
        return h;
    }

    std::vector<double> terms_;
};

} // namespace deldil::exact
