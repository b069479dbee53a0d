#pragma once

#include <stdexcept>
#include <vector>

#include "rocketbvp/grid_function.hpp"
#include "rocketbvp/scenario.hpp"

namespace rocketbvp {

/// Position/velocity samples of the unshifted problem on the solver grid.
struct Trajectory {
    double t0 = 0.0;
    double t1 = 1.0;
    std::vector<double> x;  ///< altitude [m]
    std::vector<double> v;  ///< velocity [m/s]

    std::size_t size() const { return x.size(); }
    double step() const { return (t1 - t0) / static_cast<double>(size() - 1); }
    double node(std::size_t i) const {
        return i + 1 == size() ? t1 : t0 + static_cast<double>(i) * step();
    }
};

class OracleError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// State became non-finite during integration; carries the blow-up time.
class IntegrationBlowup : public OracleError {
public:
    IntegrationBlowup(const std::string& what, double t) : OracleError(what), time_(t) {}
    double blow_up_time() const { return time_; }

private:
    double time_ = 0.0;
};

class NoBracketError : public OracleError {
    using OracleError::OracleError;
};

class NewtonFailure : public OracleError {
    using OracleError::OracleError;
};

/// Classical RK4 on (xdot, vdot) = (v, full_rhs) from (x0, v_init), one step
/// per grid interval. Breakpoints are grid-aligned by validation, so every
/// step stays inside one smooth piece of the coefficients.
Trajectory ivp_integrate(const ScenarioConfig& config, double v_init);

struct ShootingResult {
    Trajectory trajectory;        ///< trajectory of the selected root
    double v_init = 0.0;          ///< selected initial velocity [m/s]
    std::vector<double> roots;    ///< every bracketed root, ascending
    double miss = 0.0;            ///< x(t1) - x1 of the selected root [m]
};

/// Finds v_init with x(t1) = x1 within 1e-9 max(1, |x1|): scans the miss
/// function over [a - half_width, a + half_width] for sign changes, bisects
/// each bracket and polishes by secant steps. When several roots exist the
/// one closest to the drag-free prediction a + g(t1-t0)/2 is selected and
/// all are reported. Throws NoBracketError when the scan finds no sign
/// change (the problem may genuinely have no solution).
ShootingResult shooting_solve(const ScenarioConfig& config);
ShootingResult shooting_solve(const ScenarioConfig& config, double half_width,
                              int scan_steps);

struct FdNewtonResult {
    GridFunction z;
    int newton_steps = 0;
};

/// Solves the central-difference discretization of the reduced problem
///   (z_{i-1} - 2 z_i + z_{i+1})/h^2 = F(t_i, z_i, (z_{i+1}-z_{i-1})/(2h)) + beta_i
/// with pinned endpoints by Newton iteration on the tridiagonal Jacobian
/// (dF/dz = -F/H, dF/dzdot = 2 alpha (zdot + a) exp(-z/H)), Thomas
/// elimination, starting from z = 0. Stops at step norm <= 1e-10 (1 + ||z||);
/// throws NewtonFailure after 50 steps.
///
/// This path never touches the kernel quadrature, so its agreement with the
/// fixed-point solution is independent evidence.
GridFunction fd_newton_solve(const ScenarioConfig& config);
FdNewtonResult fd_newton_solve_detailed(const ScenarioConfig& config);

/// z = x - y(t), zdot = v - a on the shared grid, and back.
GridFunction trajectory_to_grid(const Trajectory& traj, const ScenarioConfig& config);
Trajectory grid_to_trajectory(const GridFunction& z, const ScenarioConfig& config);

}  // namespace rocketbvp
