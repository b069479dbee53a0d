#include "rocketbvp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rocketbvp {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("scenario: " + what);
}

}  // namespace

ChordShift chord_shift(double t0, double t1, double x0, double x1) {
    if (!(t1 != t0)) {
        throw std::invalid_argument("scenario: degenerate interval, t1 must differ from t0");
    }
    return ChordShift{(x1 - x0) / (t1 - t0), t0, x0};
}

ChordShift chord_shift(const ScenarioConfig& config) {
    return chord_shift(config.t0, config.t1, config.x0, config.x1);
}

MassState mass_eval(const MassProfile& profile, double t) {
    return mass_eval_piece(profile, t, t);
}

MassState mass_eval_piece(const MassProfile& profile, double t, double piece_hint) {
    const bool burning = piece_hint <= profile.burnout_time;
    const double burned_until = burning ? t : profile.burnout_time;
    const double m1 = profile.propellant -
                      profile.burn_rate * std::max(0.0, burned_until - profile.burn_start);
    return MassState{profile.m_dry + m1, burning ? -profile.burn_rate : 0.0};
}

double exhaust_at(const ExhaustProfile& profile, double t) {
    return exhaust_at_piece(profile, t, t);
}

double exhaust_at_piece(const ExhaustProfile& profile, double t, double piece_hint) {
    (void)t;  // c is constant within a segment; only the segment choice matters
    if (profile.segments.empty()) return 0.0;
    double c = profile.segments.front().c;
    for (const auto& seg : profile.segments) {
        if (seg.start <= piece_hint) c = seg.c;
    }
    return c;
}

AlphaBeta alpha_beta_at(const ScenarioConfig& config, double t) {
    return alpha_beta_at_piece(config, t, t);
}

AlphaBeta alpha_beta_at_piece(const ScenarioConfig& config, double t, double piece_hint) {
    const MassState ms = mass_eval_piece(config.mass, t, piece_hint);
    const double c = exhaust_at_piece(config.exhaust, t, piece_hint);
    const double y = chord_shift(config).at(t);
    const double alpha =
        -config.A * config.C_D * config.rho0 * std::exp(-y / config.H) / (2.0 * ms.m);
    const double beta = c * ms.mdot / ms.m - config.g;
    return AlphaBeta{alpha, beta};
}

double nonlinearity_F(double alpha, double a, double H, double z, double p) {
    const double w = p + a;
    return alpha * w * w * std::exp(-z / H);
}

double tsiolkovsky_velocity(double v_init, double c, double m_init, double m,
                            double g, double dt) {
    if (!(m > 0.0) || !(m_init > 0.0)) {
        throw std::domain_error("tsiolkovsky_velocity: masses must be positive");
    }
    return v_init - g * dt + c * std::log(m / m_init);
}

double full_rhs(double t, double x, double v, const ScenarioConfig& config) {
    return full_rhs_piece(t, x, v, config, t);
}

double full_rhs_piece(double t, double x, double v, const ScenarioConfig& config,
                      double piece_hint) {
    const MassState ms = mass_eval_piece(config.mass, t, piece_hint);
    const double c = exhaust_at_piece(config.exhaust, t, piece_hint);
    const double drag =
        config.A * config.C_D * config.rho0 * v * v * std::exp(-x / config.H) / (2.0 * ms.m);
    return c * ms.mdot / ms.m - config.g - drag;
}

std::vector<double> interior_breakpoints(const ScenarioConfig& config) {
    std::vector<double> pts;
    const auto interior = [&](double t) { return t > config.t0 && t < config.t1; };
    if (config.mass.burn_rate > 0.0 && interior(config.mass.burnout_time)) {
        pts.push_back(config.mass.burnout_time);
    }
    for (const auto& seg : config.exhaust.segments) {
        if (interior(seg.start)) pts.push_back(seg.start);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

void validate_scenario(const ScenarioConfig& config) {
    if (!(config.t1 > config.t0)) fail("t1 must exceed t0");
    if (!(config.x1 > config.x0)) fail("x1 must exceed x0 (ascending flight)");
    if (!(config.H > 0.0)) fail("H must be positive");
    if (config.rho0 < 0.0) fail("rho0 must be non-negative");
    if (config.A < 0.0) fail("A must be non-negative");
    if (config.C_D < 0.0) fail("C_D must be non-negative");
    if (config.g < 0.0) fail("g must be non-negative");
    if (config.n_grid < 3) fail("n_grid must be at least 3");
    if (!(config.damping > 0.0 && config.damping <= 1.0)) fail("damping must lie in (0, 1]");
    if (!(config.tol > 0.0)) fail("tol must be positive");
    if (config.max_iter < 1) fail("max_iter must be at least 1");

    const MassProfile& mp = config.mass;
    if (!(mp.m_dry > 0.0)) fail("m_dry must be positive");
    if (mp.propellant < 0.0) fail("propellant must be non-negative");
    if (mp.burn_rate < 0.0) fail("burn_rate must be non-negative");
    // mass floor: m1 is non-increasing until burnout, so checking the earlier
    // of burnout and arrival covers the whole window
    const double t_check = std::min(mp.burnout_time, config.t1);
    const double m1_min = mp.propellant - mp.burn_rate * std::max(0.0, t_check - mp.burn_start);
    if (m1_min < -1e-9 * std::max(1.0, mp.propellant)) {
        fail("mass profile drops below the dry mass before t1 (invalid profile)");
    }

    if (config.exhaust.segments.empty()) fail("exhaust profile needs at least one segment");
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& seg : config.exhaust.segments) {
        if (!(seg.start > prev)) fail("exhaust segments must have strictly increasing starts");
        prev = seg.start;
        if (std::abs(seg.c) > 1e5) fail("exhaust velocity magnitude is not physically sane");
    }
    if (config.exhaust.segments.front().start > config.t0) {
        fail("exhaust schedule must cover t0");
    }
    // c < 0 wherever mass is being emitted
    if (mp.burn_rate > 0.0) {
        const double burn_end = std::min(mp.burnout_time, config.t1);
        for (const auto& seg : config.exhaust.segments) {
            const bool active_while_burning = seg.start < burn_end;
            if (active_while_burning && !(seg.c < 0.0)) {
                fail("exhaust velocity must be negative while mass is emitted");
            }
        }
    }

    // interior breakpoints must land on grid nodes so that quadrature and RK4
    // steps never straddle a kink of the coefficients
    const double h = (config.t1 - config.t0) / (config.n_grid - 1);
    for (double bp : interior_breakpoints(config)) {
        const double k = (bp - config.t0) / h;
        if (std::abs(k - std::round(k)) > 1e-9 * config.n_grid) {
            fail("breakpoint at t=" + std::to_string(bp) +
                 " does not align with the grid; adjust n_grid");
        }
    }
}

}  // namespace rocketbvp
