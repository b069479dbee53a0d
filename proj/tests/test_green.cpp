#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "rocketbvp/green.hpp"

using namespace rocketbvp;

namespace {

// independent quadrature oracle: trapezoid of f over [lo, hi] with n panels
template <typename F>
double trapz(F f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double acc = 0.5 * (f(lo) + f(hi));
    for (int k = 1; k < n; ++k) acc += f(lo + k * h);
    return acc * h;
}

// int G(t, s) ds, integrating each smooth side of the diagonal separately
double green_row_integral(double t, Interval iv, int panels_per_side) {
    const auto f = [&](double s) { return green(t, s, iv); };
    double acc = 0.0;
    if (t > iv.t0) acc += trapz(f, iv.t0, t, panels_per_side);
    if (t < iv.t1) acc += trapz(f, t, iv.t1, panels_per_side);
    return acc;
}

// int |dG/dt(t, s)| ds with the diagonal as a split point
double green_dt_row_integral(double t, Interval iv, int panels_per_side) {
    double acc = 0.0;
    if (t > iv.t0) {
        acc += trapz([&](double s) {
            return std::abs(green_dt(t, s, iv, GreenSide::Left));
        }, iv.t0, t, panels_per_side);
    }
    if (t < iv.t1) {
        acc += trapz([&](double s) {
            return std::abs(green_dt(t, s, iv, GreenSide::Right));
        }, t, iv.t1, panels_per_side);
    }
    return acc;
}

}  // namespace

TEST_CASE("kernel values and boundary zeros") {
    const Interval iv{0.0, 1.0};
    CHECK(green(0.5, 0.5, iv) == doctest::Approx(0.25).epsilon(1e-15));

    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double s = u(rng);
        CHECK(green(0.0, s, iv) == 0.0);  // condition b, exact
        CHECK(green(1.0, s, iv) == 0.0);
        CHECK(green(u(rng), s, iv) >= 0.0);
    }
}

TEST_CASE("kernel symmetry is exact") {
    const Interval iv{2.0, 7.5};
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(iv.t0, iv.t1);
    for (int k = 0; k < 1000; ++k) {
        const double t = u(rng), s = u(rng);
        CHECK(green(t, s, iv) == green(s, t, iv));  // bitwise
    }
}

TEST_CASE("kernel is affine on each side of the diagonal") {
    const Interval iv{0.0, 3.0};
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 500; ++k) {
        const double s = iv.t0 + iv.length() * u(rng);
        // three equally spaced points strictly on one side
        const bool below = k % 2 == 0;
        const double lo = below ? iv.t0 : s;
        const double hi = below ? s : iv.t1;
        const double d = (hi - lo) / 4.0;
        const double t = lo + d;
        const double second =
            green(t, s, iv) - 2.0 * green(t + d, s, iv) + green(t + 2.0 * d, s, iv);
        CHECK(std::abs(second) <= 1e-12 * std::max(1.0, std::abs(green(t + d, s, iv))));
    }
}

TEST_CASE("kernel derivative values and the unit jump") {
    const Interval iv{0.0, 1.0};
    CHECK(green_dt(0.25, 0.75, iv) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(green_dt(0.5, 1.0, iv) == 0.0);  // boundary row, t < s

    CHECK_THROWS_AS(green_dt(0.4, 0.4, iv), std::invalid_argument);

    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 1000; ++k) {
        const double t = u(rng);
        const double jump = green_dt(t, t, iv, GreenSide::Right) -
                            green_dt(t, t, iv, GreenSide::Left);
        CHECK(jump == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("derivative jump recovered by finite differencing across the diagonal") {
    const Interval iv{1.0, 5.0};
    const double L = iv.length();
    const double eps = 1e-9 * L;
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (int k = 0; k < 200; ++k) {
        const double t = iv.t0 + L * u(rng);
        // slope in t from wide stencils: exact for a function affine in t
        const auto slope_below = [&](double s) {  // stencil inside t < s
            const double ta = iv.t0 + 0.25 * (s - iv.t0);
            const double tb = iv.t0 + 0.75 * (s - iv.t0);
            return (green(tb, s, iv) - green(ta, s, iv)) / (tb - ta);
        };
        const auto slope_above = [&](double s) {  // stencil inside t > s
            const double ta = s + 0.25 * (iv.t1 - s);
            const double tb = s + 0.75 * (iv.t1 - s);
            return (green(tb, s, iv) - green(ta, s, iv)) / (tb - ta);
        };
        const double jump = slope_below(t + eps) - slope_above(t - eps);
        CHECK(jump == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("arguments outside the interval are rejected") {
    const Interval iv{0.0, 2.0};
    CHECK_THROWS_AS(green(-0.1, 1.0, iv), std::domain_error);
    CHECK_THROWS_AS(green(0.5, 2.3, iv), std::domain_error);
    CHECK_THROWS_AS(green_dt(2.1, 1.0, iv), std::domain_error);
    CHECK_THROWS_AS(green(0.5, 1.0, Interval{1.0, 1.0}), std::domain_error);
}

TEST_CASE("kernel inversion: int G f solves u'' = -f with Dirichlet zeros") {
    // f = 2 on [0, 1]: u(t) = t (1 - t), so u'' = -2
    const Interval iv{0.0, 1.0};
    for (double t : {0.0, 0.1, 0.25, 0.5, 0.6875, 1.0}) {
        const double u = green_row_integral(t, iv, 400) * 2.0;
        CHECK(u == doctest::Approx(t * (1.0 - t)).epsilon(1e-12));
    }
}

TEST_CASE("row integrals match their closed forms") {
    const Interval iv{0.5, 4.0};
    const double L = iv.length();
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> u(iv.t0, iv.t1);
    for (int k = 0; k < 25; ++k) {
        const double t = u(rng);
        const double gi = green_row_integral(t, iv, 2000);
        CHECK(gi == doctest::Approx((t - iv.t0) * (iv.t1 - t) / 2.0).epsilon(1e-9));
        const double di = green_dt_row_integral(t, iv, 2000);
        const double closed =
            ((t - iv.t0) * (t - iv.t0) + (iv.t1 - t) * (iv.t1 - t)) / (2.0 * L);
        CHECK(di == doctest::Approx(closed).epsilon(1e-9));
    }
}

TEST_CASE("norm constants from quadrature maximization") {
    const Interval unit{0.0, 1.0};
    SUBCASE("corrected closed forms") {
        CHECK(green_constants(unit).g0 == doctest::Approx(0.125).epsilon(1e-15));
        CHECK(green_constants(unit).g1 == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(green_constants(Interval{0.0, 2.0}).g0 == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(green_constants(Interval{0.0, 2.0}).g1 == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("maximized quadrature agrees with the corrected values") {
        for (const Interval iv : {Interval{0.0, 1.0}, Interval{2.0, 7.5}}) {
            double m0 = 0.0, m1 = 0.0;
            const int nt = 2000;
            for (int k = 0; k <= nt; ++k) {
                const double t = iv.t0 + iv.length() * k / nt;
                m0 = std::max(m0, green_row_integral(t, iv, 400));
                m1 = std::max(m1, green_dt_row_integral(t, iv, 400));
            }
            const GreenConstants gc = green_constants(iv);
            CHECK(m0 == doctest::Approx(gc.g0).epsilon(1e-6));
            CHECK(m1 == doctest::Approx(gc.g1).epsilon(1e-6));
        }
    }
    SUBCASE("published values are exposed and differ") {
        const GreenConstants gp = green_constants_paper(unit);
        CHECK(gp.g0 == doctest::Approx(0.375).epsilon(1e-15));
        CHECK(gp.g1 == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(gp.g0 != green_constants(unit).g0);
        CHECK(gp.g1 != green_constants(unit).g1);
    }
}
