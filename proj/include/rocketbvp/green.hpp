#pragma once

namespace rocketbvp {

struct Interval {
    double t0 = 0.0;
    double t1 = 1.0;

    double length() const { return t1 - t0; }
};

/// Limit direction in s when evaluating the kernel derivative on the
/// diagonal: Left is s -> t- (the t > s branch), Right is s -> t+ (t < s).
enum class GreenSide { Left, Right };

/// Green's function of -d^2/dt^2 with homogeneous Dirichlet conditions:
///   G(t,s) = (t - t0)(t1 - s)/(t1 - t0)   for t <= s,
///            (s - t0)(t1 - t)/(t1 - t0)   for t >  s.
/// Continuous, symmetric, non-negative; G(t0,s) = G(t1,s) = 0.
/// Note the inversion sign: u(t) = int G(t,s) f(s) ds satisfies u'' = -f.
/// Throws std::domain_error when an argument leaves [t0, t1].
double green(double t, double s, Interval iv);

/// dG/dt(t,s) = (t1 - s)/(t1 - t0) for t < s, (t0 - s)/(t1 - t0) for t > s.
/// The two-argument form throws std::invalid_argument at t == s, where the
/// derivative jumps; pass a GreenSide to pick a one-sided value there.
double green_dt(double t, double s, Interval iv);
double green_dt(double t, double s, Interval iv, GreenSide side);

struct GreenConstants {
    double g0 = 0.0;  ///< sup_t int G(t,s) ds [s^2]
    double g1 = 0.0;  ///< sup_t int |dG/dt(t,s)| ds [s]
};

/// Sharp values: G0 = L^2/8 (attained at the midpoint), G1 = L/2 (endpoints),
/// from maximizing int G(t,s) ds = (t-t0)(t1-t)/2 and
/// int |dG/dt| ds = ((t-t0)^2 + (t1-t)^2)/(2L).
GreenConstants green_constants(Interval iv);

/// The values as originally published for this kernel: 3/8 L^2 and L^2.
/// They disagree with the sharp closed forms above (the second is not even
/// dimensionally a length); both are exposed so certificates can be produced
/// in either arithmetic.
GreenConstants green_constants_paper(Interval iv);

}  // namespace rocketbvp
