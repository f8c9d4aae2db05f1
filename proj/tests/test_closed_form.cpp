#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "deldil/closed_form.hpp"

using namespace deldil;

namespace {

constexpr double kPi = std::numbers::pi;

// t(d) at alpha = 1, written out independently of the library.
long double t_direct(long double d) {
    const long double ell = std::sqrt(4.0L + d * d + 4.0L * d * std::cos(1.0L));
    return (std::numbers::pi_v<long double> + d) / ell;
}

// Root of dt/dd by bisection on a central difference.
double argmax_by_derivative(double lo, double hi) {
    auto slope = [](long double d) {
        const long double h = 1e-7L;
        return t_direct(d + h) - t_direct(d - h);
    };
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST(ArcBeatsDetour, Examples) {
    EXPECT_TRUE(arc_beats_detour(0.0, 1.0));
    EXPECT_FALSE(arc_beats_detour(1.0 + kPi / 2, kPi));
    EXPECT_FALSE(arc_beats_detour(1.0, 1.0));
    EXPECT_TRUE(arc_beats_detour(0.97, 1.0));
}

TEST(ArcBeatsDetour, RejectsOutOfRange) {
    EXPECT_THROW(arc_beats_detour(-0.1, 1.0), InvalidSpec);
    EXPECT_THROW(arc_beats_detour(2.0, 1.0), InvalidSpec);
    EXPECT_THROW(arc_beats_detour(1.0, 7.0), InvalidSpec);
    EXPECT_THROW(arc_beats_detour(std::nan(""), 1.0), InvalidSpec);
}

TEST(ClosedForm, SingleCircle) {
    for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
        const auto cf = closed_form_t(0.0, alpha);
        EXPECT_DOUBLE_EQ(cf.ell, 2.0);
        EXPECT_DOUBLE_EQ(cf.t, kPi / 2);
    }
}

TEST(ClosedForm, QuotedValues) {
    EXPECT_GT(closed_form_t(0.29, 1.0).t, 1.581);
    EXPECT_NEAR(closed_form_t(0.29, 1.0).t, 1.581052, 1e-6);
    EXPECT_GT(closed_form_t(0.2935, 1.0).t, 1.5810528);
    EXPECT_NEAR(closed_form_t(0.29, 1.0).t, static_cast<double>(t_direct(0.29L)), 1e-15);
    EXPECT_THROW(closed_form_t(-0.1, 1.0), InvalidSpec);
}

TEST(PathLengths, Examples) {
    const auto a = path_lengths_limit(0.29, 1.0);
    EXPECT_DOUBLE_EQ(a.perimeter, a.crossing);
    const auto b = path_lengths_limit(0.0, kPi / 2);
    EXPECT_NEAR(b.crossing, 2.0, 1e-15);
    const auto c = path_lengths_limit(0.29, 0.9);
    EXPECT_NEAR(c.crossing - c.perimeter, 0.2, 1e-14);
    EXPECT_THROW(path_lengths_limit(0.29, 0.0), InvalidSpec);
    EXPECT_THROW(path_lengths_limit(-1.0, 1.0), InvalidSpec);
}

TEST(BalanceAlpha, EqualisesPaths) {
    EXPECT_EQ(balance_alpha(), 1.0);
    for (double d : {0.0, 0.29, 1.0}) {
        const auto p = path_lengths_limit(d, balance_alpha());
        EXPECT_DOUBLE_EQ(p.perimeter, p.crossing) << d;
    }
}

TEST(Sweep, QuotedWindow) {
    const auto s = sweep_d(0.293, 0.294, 1e-4);
    ASSERT_EQ(s.rows.size(), 11u);
    EXPECT_DOUBLE_EQ(s.rows.back().d, 0.294);
    for (const auto& r : s.rows) EXPECT_GT(r.t, 1.5810528) << r.d;
}

TEST(Sweep, ArgmaxMatchesOracle) {
    const auto s = sweep_d(0.0, 1.0, 1e-3);
    EXPECT_EQ(s.rows.size(), 1001u);
    EXPECT_GT(s.argmax_d, 0.29);
    EXPECT_LT(s.argmax_d, 0.30);
    const double oracle = argmax_by_derivative(0.0, 1.0);
    EXPECT_NEAR(s.argmax_d, oracle, 1e-6);

    // brute grid at 1e-6
    double best_d = 0.0, best_t = 0.0;
    for (int i = 0; i <= 1000000; ++i) {
        const double d = i * 1e-6;
        const double t = static_cast<double>(t_direct(d));
        if (t > best_t) best_t = t, best_d = d;
    }
    EXPECT_NEAR(s.argmax_d, best_d, 2e-6);
    EXPECT_GE(s.max_t, best_t - 1e-15);
    for (const auto& r : s.rows) EXPECT_LE(r.t, s.max_t + 1e-15);
}

TEST(Sweep, Degenerate) {
    const auto s = sweep_d(0.0, 0.0, 1e-3);
    ASSERT_EQ(s.rows.size(), 1u);
    EXPECT_DOUBLE_EQ(s.rows[0].t, kPi / 2);
    EXPECT_THROW(sweep_d(0.0, 1.0, 0.0), InvalidSpec);
    EXPECT_THROW(sweep_d(0.0, 1.0, -1e-3), InvalidSpec);
    EXPECT_THROW(sweep_d(0.5, 0.4, 1e-3), InvalidSpec);
}
