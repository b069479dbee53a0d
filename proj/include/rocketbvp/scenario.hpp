#pragma once

#include <string>
#include <vector>

namespace rocketbvp {

/// Linear-burn propellant schedule with a burnout plateau.
///
/// m(t) = m_dry + m1(t),  m1(t) = propellant - burn_rate * (min(t, burnout_time) - burn_start),
/// so mdot = -burn_rate while t <= burnout_time and 0 afterwards.
struct MassProfile {
    double m_dry = 0.0;         ///< dry mass, everything that is never expelled [kg]
    double propellant = 0.0;    ///< propellant on board at burn_start [kg]
    double burn_rate = 0.0;     ///< emission rate r >= 0 [kg/s]
    double burnout_time = 0.0;  ///< engine cut-off time t_b [s]
    double burn_start = 0.0;    ///< burn reference time, the scenario start [s]
};

/// One piecewise-constant exhaust segment: c applies for t >= start until the next segment.
struct ExhaustSegment {
    double start = 0.0;  ///< [s]
    double c = 0.0;      ///< relative exhaust velocity, negative while emitting [m/s]
};

/// Relative exhaust velocity schedule c(t), constant or piecewise constant.
struct ExhaustProfile {
    std::vector<ExhaustSegment> segments;

    static ExhaustProfile constant(double c) { return ExhaustProfile{{{0.0, c}}}; }
};

/// Full problem statement: physics, endpoints, grid and iteration controls.
struct ScenarioConfig {
    double t0 = 0.0;      ///< start time [s]
    double t1 = 0.0;      ///< arrival time [s]
    double x0 = 0.0;      ///< start altitude [m]
    double x1 = 0.0;      ///< arrival altitude [m]
    double g = 9.81;      ///< gravitational acceleration [m/s^2]
    double A = 0.0;       ///< cross-sectional area [m^2]
    double C_D = 0.0;     ///< drag coefficient [-]
    double rho0 = 1.225;  ///< sea-level air density [kg/m^3]
    double H = 8000.0;    ///< atmospheric scale height [m]
    MassProfile mass;
    ExhaustProfile exhaust;
    int n_grid = 201;     ///< node count of the uniform time grid
    double tol = 1e-8;    ///< convergence tolerance on the C1 norm [mixed m, m/s]
    int max_iter = 500;   ///< fixed-point iteration cap
    double damping = 0.5; ///< relaxation weight in (0, 1]
    std::string label;    ///< optional name used for output files
};

/// The straight line y(t) = a (t - t0) + x0 joining the endpoint constraints.
struct ChordShift {
    double a = 0.0;   ///< chord slope (x1 - x0)/(t1 - t0) [m/s]
    double t0 = 0.0;  ///< [s]
    double x0 = 0.0;  ///< [m]

    double at(double t) const { return a * (t - t0) + x0; }
};

struct MassState {
    double m = 0.0;     ///< [kg]
    double mdot = 0.0;  ///< [kg/s], <= 0
};

struct AlphaBeta {
    double alpha = 0.0;  ///< drag coefficient function, <= 0 [1/m]
    double beta = 0.0;   ///< thrust-minus-gravity acceleration [m/s^2]
};

/// Chord through (t0,x0)-(t1,x1). Throws std::invalid_argument when t1 == t0.
ChordShift chord_shift(double t0, double t1, double x0, double x1);
ChordShift chord_shift(const ScenarioConfig& config);

/// Mass and emission rate at time t. Never throws; profile validity is
/// checked at scenario construction, not at evaluation.
MassState mass_eval(const MassProfile& profile, double t);

/// Same, but the burning/plateau branch is chosen by `piece_hint` instead of t.
/// Integrators use the enclosing subinterval's midpoint as the hint so that a
/// stage evaluation at the burnout node stays on its own side of the kink.
MassState mass_eval_piece(const MassProfile& profile, double t, double piece_hint);

double exhaust_at(const ExhaustProfile& profile, double t);
double exhaust_at_piece(const ExhaustProfile& profile, double t, double piece_hint);

/// Reduced-equation coefficients at time t:
///   alpha(t) = -A C_D rho0 exp(-y(t)/H) / (2 m(t)),  beta(t) = c(t) mdot(t)/m(t) - g.
AlphaBeta alpha_beta_at(const ScenarioConfig& config, double t);
AlphaBeta alpha_beta_at_piece(const ScenarioConfig& config, double t, double piece_hint);

/// Nonlinearity of the reduced problem: F = alpha (p + a)^2 exp(-z/H).
/// `p` is the derivative slot treated as an independent variable.
double nonlinearity_F(double alpha, double a, double H, double z, double p);

/// Closed-form velocity for constant exhaust speed in a uniform gravity field:
///   v = v_init - g dt + c ln(m / m_init).
/// Throws std::domain_error for non-positive masses.
double tsiolkovsky_velocity(double v_init, double c, double m_init, double m,
                            double g, double dt);

/// Acceleration of the unshifted problem:
///   xddot = c mdot/m - g - A C_D rho0 v^2 exp(-x/H) / (2 m).
double full_rhs(double t, double x, double v, const ScenarioConfig& config);
double full_rhs_piece(double t, double x, double v, const ScenarioConfig& config,
                      double piece_hint);

/// Validates every scenario invariant (ordering, positivity, mass floor,
/// exhaust sign, grid alignment of interior breakpoints). Throws
/// std::invalid_argument naming the violated rule.
void validate_scenario(const ScenarioConfig& config);

/// Breakpoints of the piecewise-smooth coefficients that fall strictly inside
/// (t0, t1): the burnout time and exhaust segment starts. These must land on
/// grid nodes (validate_scenario enforces it) so quadrature never straddles a
/// kink.
std::vector<double> interior_breakpoints(const ScenarioConfig& config);

}  // namespace rocketbvp
