#include "rocketbvp/green.hpp"

#include <stdexcept>

namespace rocketbvp {

namespace {

void check_args(double t, double s, Interval iv) {
    if (!(iv.t1 > iv.t0)) {
        throw std::domain_error("green: interval must satisfy t1 > t0");
    }
    if (t < iv.t0 || t > iv.t1 || s < iv.t0 || s > iv.t1) {
        throw std::domain_error("green: arguments outside [t0, t1]");
    }
}

}  // namespace

double green(double t, double s, Interval iv) {
    check_args(t, s, iv);
    const double L = iv.length();
    if (t <= s) return (t - iv.t0) * (iv.t1 - s) / L;
    return (s - iv.t0) * (iv.t1 - t) / L;
}

double green_dt(double t, double s, Interval iv) {
    if (t == s) {
        throw std::invalid_argument(
            "green_dt: derivative jumps at t == s; pass a GreenSide");
    }
    return green_dt(t, s, iv, t < s ? GreenSide::Right : GreenSide::Left);
}

double green_dt(double t, double s, Interval iv, GreenSide side) {
    check_args(t, s, iv);
    const double L = iv.length();
    if (t < s || (t == s && side == GreenSide::Right)) return (iv.t1 - s) / L;
    return (iv.t0 - s) / L;
}

GreenConstants green_constants(Interval iv) {
    const double L = iv.length();
    return GreenConstants{L * L / 8.0, L / 2.0};
}

GreenConstants green_constants_paper(Interval iv) {
    const double L = iv.length();
    return GreenConstants{3.0 * L * L / 8.0, L * L};
}

}  // namespace rocketbvp
