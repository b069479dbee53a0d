#include "rocketbvp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rocketbvp {

Trajectory ivp_integrate(const ScenarioConfig& config, double v_init) {
    validate_scenario(config);
    const std::size_t n = static_cast<std::size_t>(config.n_grid);
    Trajectory traj;
    traj.t0 = config.t0;
    traj.t1 = config.t1;
    traj.x.assign(n, 0.0);
    traj.v.assign(n, 0.0);
    traj.x[0] = config.x0;
    traj.v[0] = v_init;
    const double h = traj.step();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double t = traj.node(i);
        // all four stages evaluate the smooth piece containing this step
        const double hint = t + 0.5 * h;
        const auto acc = [&](double ts, double xs, double vs) {
            return full_rhs_piece(ts, xs, vs, config, hint);
        };
        const double x = traj.x[i], v = traj.v[i];
        const double k1x = v, k1v = acc(t, x, v);
        const double k2x = v + 0.5 * h * k1v, k2v = acc(t + 0.5 * h, x + 0.5 * h * k1x, v + 0.5 * h * k1v);
        const double k3x = v + 0.5 * h * k2v, k3v = acc(t + 0.5 * h, x + 0.5 * h * k2x, v + 0.5 * h * k2v);
        const double k4x = v + h * k3v, k4v = acc(t + h, x + h * k3x, v + h * k3v);
        traj.x[i + 1] = x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        traj.v[i + 1] = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!std::isfinite(traj.x[i + 1]) || !std::isfinite(traj.v[i + 1])) {
            throw IntegrationBlowup("ivp_integrate: state became non-finite", traj.node(i + 1));
        }
    }
    return traj;
}

namespace {

double shoot_miss(const ScenarioConfig& config, double v_init) {
    const Trajectory traj = ivp_integrate(config, v_init);
    return traj.x.back() - config.x1;
}

}  // namespace

ShootingResult shooting_solve(const ScenarioConfig& config) {
    const double L = config.t1 - config.t0;
    const double half_width = 10.0 * std::max(config.g, 1.0) * L;
    return shooting_solve(config, half_width, 64);
}

ShootingResult shooting_solve(const ScenarioConfig& config, double half_width,
                              int scan_steps) {
    validate_scenario(config);
    const double a = chord_shift(config).a;
    const double L = config.t1 - config.t0;
    const double x_tol = 1e-9 * std::max(1.0, std::abs(config.x1));

    // scan for sign changes of the miss function
    std::vector<double> vs(static_cast<std::size_t>(scan_steps) + 1);
    std::vector<double> miss(vs.size());
    for (std::size_t k = 0; k < vs.size(); ++k) {
        vs[k] = a - half_width + 2.0 * half_width * static_cast<double>(k) /
                                     static_cast<double>(scan_steps);
        try {
            miss[k] = shoot_miss(config, vs[k]);
        } catch (const IntegrationBlowup&) {
            miss[k] = std::numeric_limits<double>::quiet_NaN();
        }
    }

    std::vector<double> roots;
    for (std::size_t k = 0; k + 1 < vs.size(); ++k) {
        if (!std::isfinite(miss[k]) || !std::isfinite(miss[k + 1])) continue;
        if (miss[k] == 0.0) {
            roots.push_back(vs[k]);
            continue;
        }
        if (miss[k] * miss[k + 1] >= 0.0) continue;
        double lo = vs[k], hi = vs[k + 1];
        double flo = miss[k];
        for (int it = 0; it < 80 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = shoot_miss(config, mid);
            if (fmid == 0.0) {
                lo = hi = mid;
                break;
            }
            if (flo * fmid < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fmid;
            }
        }
        // secant polish
        double v0 = lo, v1 = 0.5 * (lo + hi);
        if (v1 == v0) v1 = v0 * (1.0 + 1e-12) + 1e-12;
        double f0 = shoot_miss(config, v0), f1 = shoot_miss(config, v1);
        for (int it = 0; it < 8 && std::abs(f1) > 0.0 && f1 != f0; ++it) {
            const double v2 = v1 - f1 * (v1 - v0) / (f1 - f0);
            v0 = v1;
            f0 = f1;
            v1 = v2;
            f1 = shoot_miss(config, v1);
            if (std::abs(f1) <= x_tol * 1e-3) break;
        }
        roots.push_back(std::abs(f1) <= std::abs(f0) ? v1 : v0);
    }
    if (roots.empty()) {
        throw NoBracketError("shooting_solve: no bracket in the scanned v_init range; "
                             "the problem may have no solution there");
    }
    std::sort(roots.begin(), roots.end());

    const double v_guess = a + config.g * L / 2.0;  // drag-free prediction
    double best = roots.front();
    for (double r : roots) {
        if (std::abs(r - v_guess) < std::abs(best - v_guess)) best = r;
    }
    ShootingResult out;
    out.v_init = best;
    out.roots = roots;
    out.trajectory = ivp_integrate(config, best);
    out.miss = out.trajectory.x.back() - config.x1;
    if (std::abs(out.miss) > x_tol) {
        throw NoBracketError("shooting_solve: polishing failed to reach the endpoint "
                             "tolerance");
    }
    return out;
}

GridFunction fd_newton_solve(const ScenarioConfig& config) {
    return fd_newton_solve_detailed(config).z;
}

FdNewtonResult fd_newton_solve_detailed(const ScenarioConfig& config) {
    validate_scenario(config);
    if (config.n_grid < 5) {
        throw std::invalid_argument("fd_newton_solve: need at least 5 nodes");
    }
    const std::size_t n = static_cast<std::size_t>(config.n_grid);
    const double a = chord_shift(config).a;
    GridFunction z = GridFunction::zeros(config.t0, config.t1, n);
    const double h = z.step();

    std::vector<double> alpha(n), beta(n);
    for (std::size_t i = 0; i < n; ++i) {
        const AlphaBeta ab = alpha_beta_at(config, z.node(i));
        alpha[i] = ab.alpha;
        beta[i] = ab.beta;
    }

    const std::size_t m = n - 2;  // interior unknowns
    std::vector<double> lower(m), diag(m), upper(m), rhs(m), delta(m);
    int steps = 0;
    for (; steps < 50; ++steps) {
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t i = k + 1;
            const double zd = (z.values[i + 1] - z.values[i - 1]) / (2.0 * h);
            const double ez = std::exp(-z.values[i] / config.H);
            const double w = zd + a;
            const double F = alpha[i] * w * w * ez;
            const double Fz = -F / config.H;
            const double Fp = 2.0 * alpha[i] * w * ez;
            const double second =
                (z.values[i - 1] - 2.0 * z.values[i] + z.values[i + 1]) / (h * h);
            rhs[k] = -(second - F - beta[i]);
            lower[k] = 1.0 / (h * h) + Fp / (2.0 * h);
            diag[k] = -2.0 / (h * h) - Fz;
            upper[k] = 1.0 / (h * h) - Fp / (2.0 * h);
        }
        // Thomas elimination
        for (std::size_t k = 1; k < m; ++k) {
            const double w = lower[k] / diag[k - 1];
            diag[k] -= w * upper[k - 1];
            rhs[k] -= w * rhs[k - 1];
        }
        delta[m - 1] = rhs[m - 1] / diag[m - 1];
        for (std::size_t k = m - 1; k-- > 0;) {
            delta[k] = (rhs[k] - upper[k] * delta[k + 1]) / diag[k];
        }
        double step_norm = 0.0, z_norm = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            z.values[k + 1] += delta[k];
            step_norm = std::max(step_norm, std::abs(delta[k]));
            z_norm = std::max(z_norm, std::abs(z.values[k + 1]));
        }
        if (!std::isfinite(step_norm)) {
            throw NewtonFailure("fd_newton_solve: step became non-finite");
        }
        if (step_norm <= 1e-10 * (1.0 + z_norm)) {
            ++steps;
            // centered interior derivatives, second-order one-sided at the ends
            for (std::size_t i = 1; i + 1 < n; ++i) {
                z.derivs[i] = (z.values[i + 1] - z.values[i - 1]) / (2.0 * h);
            }
            z.derivs[0] = (-3.0 * z.values[0] + 4.0 * z.values[1] - z.values[2]) / (2.0 * h);
            z.derivs[n - 1] =
                (3.0 * z.values[n - 1] - 4.0 * z.values[n - 2] + z.values[n - 3]) / (2.0 * h);
            return FdNewtonResult{std::move(z), steps};
        }
    }
    throw NewtonFailure("fd_newton_solve: no convergence within 50 Newton steps");
}

GridFunction trajectory_to_grid(const Trajectory& traj, const ScenarioConfig& config) {
    const ChordShift y = chord_shift(config);
    GridFunction z = GridFunction::zeros(traj.t0, traj.t1, traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        z.values[i] = traj.x[i] - y.at(traj.node(i));
        z.derivs[i] = traj.v[i] - y.a;
    }
    return z;
}

Trajectory grid_to_trajectory(const GridFunction& z, const ScenarioConfig& config) {
    const ChordShift y = chord_shift(config);
    Trajectory traj;
    traj.t0 = z.t0;
    traj.t1 = z.t1;
    traj.x.resize(z.size());
    traj.v.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        traj.x[i] = z.values[i] + y.at(z.node(i));
        traj.v[i] = z.derivs[i] + y.a;
    }
    return traj;
}

}  // namespace rocketbvp
