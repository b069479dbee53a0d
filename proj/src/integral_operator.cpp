#include "rocketbvp/integral_operator.hpp"

#include <cmath>
#include <stdexcept>

namespace rocketbvp {

namespace {

struct KernelRows {
    std::vector<double> val;  ///< int G(t_i,s) f(s) ds
    std::vector<double> der;  ///< int dG/dt(t_i,s) f(s) ds
};

// Composite trapezoid of the kernel-weighted integrand, all rows at once.
// fl[j], fr[j] are the integrand values at the left/right endpoint of
// subinterval [s_j, s_{j+1}] (they differ only where f jumps at a node).
// Splitting the integral at the diagonal gives, with
//   P_i = int_{t0}^{t_i} (s - t0) f ds,  Q_i = int_{t_i}^{t1} (t1 - s) f ds,
//   int G(t_i,s) f ds     = [(t1 - t_i) P_i + (t_i - t0) Q_i] / L
//   int dG/dt(t_i,s) f ds = [Q_i - P_i] / L
// which is exactly the row-wise rule with the kink pinned to node i.
KernelRows kernel_rows(double t0, double t1, std::size_t n,
                       const std::vector<double>& fl, const std::vector<double>& fr) {
    const double L = t1 - t0;
    const double h = L / static_cast<double>(n - 1);
    const auto node = [&](std::size_t i) {
        return i + 1 == n ? t1 : t0 + static_cast<double>(i) * h;
    };
    std::vector<double> P(n, 0.0), Q(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double sl = node(j), sr = node(j + 1);
        P[j + 1] = P[j] + 0.5 * h * ((sl - t0) * fl[j] + (sr - t0) * fr[j]);
    }
    for (std::size_t j = n - 1; j-- > 0;) {
        const double sl = node(j), sr = node(j + 1);
        Q[j] = Q[j + 1] + 0.5 * h * ((t1 - sl) * fl[j] + (t1 - sr) * fr[j]);
    }
    KernelRows out{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double ti = node(i);
        out.val[i] = ((t1 - ti) * P[i] + (ti - t0) * Q[i]) / L;
        out.der[i] = (Q[i] - P[i]) / L;
    }
    return out;
}

}  // namespace

Coefficients build_coefficients(const ScenarioConfig& config) {
    return build_coefficients(config, static_cast<std::size_t>(config.n_grid));
}

Coefficients build_coefficients(const ScenarioConfig& config, std::size_t n) {
    if (n < 3) throw std::invalid_argument("build_coefficients: need at least 3 nodes");
    Coefficients cf;
    cf.t0 = config.t0;
    cf.t1 = config.t1;
    cf.alpha.resize(n);
    cf.beta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const AlphaBeta ab = alpha_beta_at(config, cf.node(i));
        cf.alpha[i] = ab.alpha;
        cf.beta[i] = ab.beta;
    }
    // beta jumps where the burn or an exhaust segment ends; sample it per
    // subinterval side so the trapezoid never sees the wrong branch
    std::vector<double> bl(n - 1), br(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double hint = 0.5 * (cf.node(j) + cf.node(j + 1));
        bl[j] = alpha_beta_at_piece(config, cf.node(j), hint).beta;
        br[j] = alpha_beta_at_piece(config, cf.node(j + 1), hint).beta;
    }
    const KernelRows rows = kernel_rows(cf.t0, cf.t1, n, bl, br);
    cf.b.resize(n);
    cf.bprime.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        cf.b[i] = -rows.val[i];
        cf.bprime[i] = -rows.der[i];
    }
    return cf;
}

GridFunction apply_S(const GridFunction& z, const Coefficients& coeffs,
                     const ScenarioConfig& config) {
    const std::size_t n = z.size();
    if (n != coeffs.size() || z.values.size() != z.derivs.size() ||
        z.t0 != coeffs.t0 || z.t1 != coeffs.t1) {
        throw std::invalid_argument("apply_S: grid mismatch between z and coefficients");
    }
    const double a = chord_shift(config).a;
    std::vector<double> F(n);
    for (std::size_t i = 0; i < n; ++i) {
        F[i] = nonlinearity_F(coeffs.alpha[i], a, config.H, z.values[i], z.derivs[i]);
    }
    std::vector<double> fl(n - 1), fr(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        fl[j] = F[j];
        fr[j] = F[j + 1];
    }
    const KernelRows rows = kernel_rows(z.t0, z.t1, n, fl, fr);
    GridFunction w = GridFunction::zeros(z.t0, z.t1, n);
    for (std::size_t i = 0; i < n; ++i) {
        w.values[i] = -rows.val[i] + coeffs.b[i];
        w.derivs[i] = -rows.der[i] + coeffs.bprime[i];
    }
    return w;
}

double ode_residual(const GridFunction& z, const ScenarioConfig& config) {
    const std::size_t n = z.size();
    if (n < 5) throw std::invalid_argument("ode_residual: need at least 5 nodes");
    const double h = z.step();
    const double a = chord_shift(config).a;
    const std::vector<double> kinks = interior_breakpoints(config);
    const auto on_kink = [&](double t) {
        for (double bp : kinks) {
            if (std::abs(t - bp) <= 0.5 * h) return true;
        }
        return false;
    };
    double res = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double ti = z.node(i);
        if (on_kink(ti)) continue;  // zdd jumps with beta there
        const double zdd = (z.values[i - 1] - 2.0 * z.values[i] + z.values[i + 1]) / (h * h);
        const AlphaBeta ab = alpha_beta_at(config, ti);
        const double F = nonlinearity_F(ab.alpha, a, config.H, z.values[i], z.derivs[i]);
        res = std::max(res, std::abs(zdd - F - ab.beta));
    }
    return res;
}

}  // namespace rocketbvp
