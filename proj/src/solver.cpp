#include "rocketbvp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rocketbvp/green.hpp"

namespace rocketbvp {

const char* cert_mode_name(CertMode mode) {
    return mode == CertMode::PaperLiteral ? "paper_literal" : "corrected_rigorous";
}

CertificateArithmetic certificate_from_constants(double a, double g2, double sup_b) {
    CertificateArithmetic out;
    out.a = a;
    out.g2 = g2;
    out.sup_b = sup_b;
    if (a > 1.0) {
        const double root_a = std::sqrt(a);
        const double denom = 2.0 * a * (a - 1.0);
        out.aest_lower = (a - root_a) / denom;
        out.aest_upper = (a + root_a) / denom;
        out.aest_ok = g2 > 0.0 && (g2 < out.aest_lower || g2 > out.aest_upper);
    }
    if (g2 > 0.0) {
        out.best_bound = (4.0 * a * (a - 1.0) * g2 * g2 - 4.0 * a * g2 + 1.0) / (4.0 * g2);
        out.best_ok = sup_b < out.best_bound;
    }
    out.delta = (2.0 * a * g2 - 1.0) * (2.0 * a * g2 - 1.0) - 4.0 * g2 * (g2 * a + sup_b);
    if (g2 > 0.0 && out.delta > 0.0 && 1.0 - 2.0 * a * g2 > 0.0) {
        out.radius = ((1.0 - 2.0 * a * g2) - std::sqrt(out.delta)) / (2.0 * g2);
    }
    out.overall = a > 1.0 && out.aest_ok && out.best_ok;
    return out;
}

namespace {

struct SupSamples {
    double sup_alpha = 0.0;
    double sup_b = 0.0;
    double sup_bprime = 0.0;
};

// sup |alpha|, sup |b|, sup |b'| by 10x grid oversampling with one
// refinement pass (Richardson-style: the O(h^2) sampling gap is extrapolated
// away and the estimate is kept one-sided from above).
SupSamples sample_sups(const ScenarioConfig& config) {
    const auto pass = [&](std::size_t n) {
        SupSamples s;
        const Coefficients cf = build_coefficients(config, n);
        for (std::size_t i = 0; i < n; ++i) {
            s.sup_alpha = std::max(s.sup_alpha, std::abs(cf.alpha[i]));
            s.sup_b = std::max(s.sup_b, std::abs(cf.b[i]));
            s.sup_bprime = std::max(s.sup_bprime, std::abs(cf.bprime[i]));
        }
        return s;
    };
    const std::size_t n1 = 10 * static_cast<std::size_t>(config.n_grid - 1) + 1;
    const SupSamples c = pass(n1);
    const SupSamples f = pass(2 * (n1 - 1) + 1);
    const auto extrapolate = [](double coarse, double fine) {
        return std::max(fine, fine + (fine - coarse) / 3.0);
    };
    return SupSamples{extrapolate(c.sup_alpha, f.sup_alpha),
                      extrapolate(c.sup_b, f.sup_b),
                      extrapolate(c.sup_bprime, f.sup_bprime)};
}

}  // namespace

ExistenceCertificate certificate(const ScenarioConfig& config, CertMode mode) {
    validate_scenario(config);
    ExistenceCertificate cert;
    cert.mode = mode;
    cert.a = chord_shift(config).a;

    const Interval iv{config.t0, config.t1};
    const GreenConstants gc =
        mode == CertMode::PaperLiteral ? green_constants_paper(iv) : green_constants(iv);
    cert.g0 = gc.g0;
    cert.g1 = gc.g1;

    const SupSamples sups = sample_sups(config);
    cert.sup_alpha = sups.sup_alpha;
    cert.sup_b = sups.sup_b;
    cert.sup_bprime = sups.sup_bprime;
    cert.g2 = cert.sup_alpha * std::max(cert.g0, cert.g1);
    cert.linear = config.A * config.C_D * config.rho0 == 0.0;

    if (cert.linear) {
        // no drag: S is constant, the unique solution is b itself
        cert.aest_ok = true;
        cert.best_ok = true;
        cert.overall = true;
        cert.radius = std::max(cert.sup_b, cert.sup_bprime);
        cert.note = "linear case: drag term absent, solution exists unconditionally";
        return cert;
    }

    const CertificateArithmetic arith =
        certificate_from_constants(cert.a, cert.g2, cert.sup_b);
    cert.aest_lower = arith.aest_lower;
    cert.aest_upper = arith.aest_upper;
    cert.aest_ok = arith.aest_ok;
    cert.best_bound = arith.best_bound;
    cert.best_ok = arith.best_ok;
    cert.delta = arith.delta;
    cert.overall = arith.overall;
    // the radius field is only meaningful under a positive verdict
    if (cert.overall) cert.radius = arith.radius;
    if (!(cert.a > 1.0)) {
        cert.note = "a <= 1: the existence conditions require chord slope a > 1";
    } else if (!cert.overall) {
        cert.note = "sufficient conditions not met; solutions may still exist";
    }
    return cert;
}

SolveError::SolveError(const std::string& what, GridFunction partial, SolveReport report)
    : std::runtime_error(what), partial_(std::move(partial)), report_(std::move(report)) {}

SolveOutcome picard_solve(const ScenarioConfig& config) {
    return picard_solve(config, 0.0);
}

SolveOutcome picard_solve(const ScenarioConfig& config, double norm_guard) {
    validate_scenario(config);
    const Coefficients cf = build_coefficients(config);
    const std::size_t n = cf.size();
    if (norm_guard <= 0.0) {
        double bnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            bnorm = std::max(bnorm, std::max(std::abs(cf.b[i]), std::abs(cf.bprime[i])));
        }
        norm_guard = 1e6 * (1.0 + bnorm);
    }
    const double omega = config.damping;
    GridFunction z = GridFunction::zeros(config.t0, config.t1, n);
    SolveReport report;
    for (int k = 1; k <= config.max_iter; ++k) {
        const GridFunction w = apply_S(z, cf, config);
        const double residual = c1_distance(w, z);  // ||S z - z||
        for (std::size_t i = 0; i < n; ++i) {
            z.values[i] += omega * (w.values[i] - z.values[i]);
            z.derivs[i] += omega * (w.derivs[i] - z.derivs[i]);
        }
        report.iterations = k;
        report.delta_history.push_back(omega * residual);
        if (residual <= config.tol) {
            report.converged = true;
            report.final_residual = ode_residual(z, config);
            return SolveOutcome{std::move(z), std::move(report)};
        }
        const std::size_t hist = report.delta_history.size();
        const bool growing =
            hist >= 6 && report.delta_history[hist - 1] >
                             10.0 * report.delta_history[hist - 6];
        if (!std::isfinite(residual) || c1_norm(z) > norm_guard || growing) {
            report.final_residual = std::isfinite(residual) ? ode_residual(z, config)
                                                            : std::numeric_limits<double>::infinity();
            throw SolveDivergence("picard_solve: iteration diverges", std::move(z),
                                  std::move(report));
        }
    }
    report.final_residual = ode_residual(z, config);
    throw SolveNonConvergence("picard_solve: max_iter reached before tolerance",
                              std::move(z), std::move(report));
}

BallCheckReport ball_check(double radius, const ScenarioConfig& config, int n_samples,
                           CertMode mode, std::uint64_t seed) {
    if (radius < 0.0) {
        throw std::invalid_argument("ball_check: radius must be non-negative");
    }
    validate_scenario(config);
    BallCheckReport out;
    out.radius = radius;

    const double a = chord_shift(config).a;
    const Interval iv{config.t0, config.t1};
    const SupSamples sups = sample_sups(config);
    const double b_norm = std::max(sups.sup_b, sups.sup_bprime);

    const GreenConstants gp = green_constants_paper(iv);
    const double g2p = sups.sup_alpha * std::max(gp.g0, gp.g1);
    out.literal_lhs = g2p * (radius * radius + 2.0 * a * radius + a) + sups.sup_b;
    out.literal_ok = out.literal_lhs <= radius;

    const GreenConstants gr = green_constants(iv);
    const double g2r = sups.sup_alpha * std::max(gr.g0, gr.g1);
    out.rigorous_lhs =
        g2r * (radius + a) * (radius + a) * std::exp(radius / config.H) + b_norm;
    out.rigorous_ok = out.rigorous_lhs <= radius;

    out.analytic_ok = mode == CertMode::PaperLiteral ? out.literal_ok : out.rigorous_ok;

    const Coefficients cf = build_coefficients(config);
    const std::size_t n = cf.size();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> fill(0.05, 1.0);
    for (int s = 0; s < n_samples; ++s) {
        // z(t) = tau (1 - tau) (c0 + c1 tau + c2 tau^2 + c3 tau^3), tau in [0,1]
        double c[4];
        for (double& ci : c) ci = coeff(rng);
        const double L = config.t1 - config.t0;
        GridFunction z = GridFunction::zeros(config.t0, config.t1, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double tau = (z.node(i) - config.t0) / L;
            const double poly = c[0] + tau * (c[1] + tau * (c[2] + tau * c[3]));
            const double dpoly = c[1] + tau * (2.0 * c[2] + tau * 3.0 * c[3]);
            const double env = tau * (1.0 - tau);
            const double denv = 1.0 - 2.0 * tau;
            z.values[i] = env * poly;
            z.derivs[i] = (denv * poly + env * dpoly) / L;  // d/dt = (1/L) d/dtau
        }
        const double norm = c1_norm(z);
        if (norm == 0.0) continue;
        const double scale = fill(rng) * radius / norm;
        for (std::size_t i = 0; i < n; ++i) {
            z.values[i] *= scale;
            z.derivs[i] *= scale;
        }
        const GridFunction w = apply_S(z, cf, config);
        const double wnorm = c1_norm(w);
        out.worst_norm = std::max(out.worst_norm, wnorm);
        if (wnorm > radius) ++out.violations;
        ++out.samples;
    }
    return out;
}

}  // namespace rocketbvp
