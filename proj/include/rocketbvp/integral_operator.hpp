#pragma once

#include <cstddef>
#include <vector>

#include "rocketbvp/grid_function.hpp"
#include "rocketbvp/scenario.hpp"

namespace rocketbvp {

/// Coefficient samples of the reduced problem on the solver grid, plus the
/// inhomogeneous term b and its derivative obtained by kernel quadrature.
/// Sign convention: b_i = -int G(t_i,s) beta(s) ds, so that bdd = beta and
/// b(t0) = b(t1) = 0; the same minus sign appears in apply_S, making fixed
/// points solve zdd = F + beta. (The raw kernel inverts with u'' = -f.)
struct Coefficients {
    double t0 = 0.0;
    double t1 = 1.0;
    std::vector<double> alpha;   ///< [1/m]
    std::vector<double> beta;    ///< [m/s^2]
    std::vector<double> b;       ///< [m], zero at both ends
    std::vector<double> bprime;  ///< [m/s]

    std::size_t size() const { return alpha.size(); }
    double step() const { return (t1 - t0) / static_cast<double>(size() - 1); }
    double node(std::size_t i) const {
        return i + 1 == size() ? t1 : t0 + static_cast<double>(i) * step();
    }
};

/// Samples alpha, beta at the n_grid nodes and integrates b, b' by composite
/// trapezoid. The kernel kink sits on a node by construction and beta is
/// sampled per subinterval side at its own breakpoints, keeping the rule at
/// clean O(h^2).
Coefficients build_coefficients(const ScenarioConfig& config);
Coefficients build_coefficients(const ScenarioConfig& config, std::size_t n);

/// One application of the integral operator:
///   w_i  = -int G(t_i,s)      F(s, z(s), zdot(s)) ds + b_i
///   w'_i = -int dG/dt(t_i,s)  F(s, z(s), zdot(s)) ds + b'_i
/// F is evaluated nodewise from z's values and derivs. Output endpoints are
/// exactly zero. Throws std::invalid_argument on grid mismatch.
GridFunction apply_S(const GridFunction& z, const Coefficients& coeffs,
                     const ScenarioConfig& config);

/// Sup over interior nodes of |second difference of values - F - beta|;
/// an implementation-independent check that z solves the reduced ODE.
/// Nodes sitting on coefficient breakpoints are skipped (the second
/// derivative jumps there). Requires n >= 5.
double ode_residual(const GridFunction& z, const ScenarioConfig& config);

}  // namespace rocketbvp
