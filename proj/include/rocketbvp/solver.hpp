#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rocketbvp/grid_function.hpp"
#include "rocketbvp/integral_operator.hpp"
#include "rocketbvp/scenario.hpp"

namespace rocketbvp {

/// Which kernel constants feed the certificate arithmetic.
/// PaperLiteral reproduces the originally published values (G0 = 3/8 L^2,
/// G1 = L^2); CorrectedRigorous uses the sharp closed forms (L^2/8, L/2).
enum class CertMode { PaperLiteral, CorrectedRigorous };

const char* cert_mode_name(CertMode mode);

/// The bare sufficient-condition arithmetic, decoupled from any scenario:
/// given the chord slope a, the contraction constant G2 = |alpha| max{G0,G1}
/// and |b|, evaluate
///   (aest): a > 1 and G2 in (0, (a-sqrt a)/(2a(a-1))) u ((a+sqrt a)/(2a(a-1)), inf)
///   (best): |b| < (4a(a-1)G2^2 - 4aG2 + 1) / (4G2)
///   Delta = (2aG2 - 1)^2 - 4G2(G2 a + |b|)
/// and, when Delta > 0 and 1 - 2aG2 > 0, the smaller root
///   R = ((1 - 2aG2) - sqrt Delta) / (2 G2)
/// of G2 R^2 + (2aG2 - 1) R + (G2 a + |b|) = 0, the tightest invariant ball.
struct CertificateArithmetic {
    double a = 0.0;
    double g2 = 0.0;
    double sup_b = 0.0;
    double aest_lower = 0.0;  ///< lower branch endpoint of (aest)
    double aest_upper = 0.0;  ///< upper branch endpoint of (aest)
    bool aest_ok = false;
    double best_bound = 0.0;
    bool best_ok = false;
    double delta = 0.0;
    std::optional<double> radius;
    bool overall = false;
};

CertificateArithmetic certificate_from_constants(double a, double g2, double sup_b);

/// Scenario-level existence certificate.
struct ExistenceCertificate {
    CertMode mode = CertMode::CorrectedRigorous;
    double a = 0.0;          ///< chord slope [m/s]
    double sup_alpha = 0.0;  ///< sup |alpha| [1/m]
    double sup_b = 0.0;      ///< sup |b| [m]
    double sup_bprime = 0.0; ///< sup |b'| [m/s]
    double g0 = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    double aest_lower = 0.0;
    double aest_upper = 0.0;
    double best_bound = 0.0;
    double delta = 0.0;
    std::optional<double> radius;
    bool aest_ok = false;
    bool best_ok = false;
    bool overall = false;
    bool linear = false;     ///< A C_D rho0 == 0: drag absent, problem linear
    std::string note;
};

/// Evaluates the sufficient conditions for the scenario. sup|alpha|, sup|b|
/// and sup|b'| come from 10x-oversampled grids with one refinement pass.
/// Special cases: the drag-free scenario is reported as unconditionally
/// solvable (linear problem); a <= 1 yields verdict false with a note, since
/// the hypothesis of the sufficient condition fails.
ExistenceCertificate certificate(const ScenarioConfig& config, CertMode mode);

/// Iteration record of a fixed-point solve.
struct SolveReport {
    int iterations = 0;
    std::vector<double> delta_history;  ///< C1 norm of successive iterate differences
    double final_residual = 0.0;        ///< ode_residual of the returned function
    bool converged = false;
    std::optional<ExistenceCertificate> cert;
};

struct SolveOutcome {
    GridFunction z;
    SolveReport report;
};

/// Carries the partial iterate and report when a solve fails.
class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& what, GridFunction partial, SolveReport report);
    const GridFunction& partial() const { return partial_; }
    const SolveReport& report() const { return report_; }

private:
    GridFunction partial_;
    SolveReport report_;
};

class SolveDivergence : public SolveError {
    using SolveError::SolveError;
};

class SolveNonConvergence : public SolveError {
    using SolveError::SolveError;
};

/// Damped Picard iteration z <- (1-w) z + w S z from z = 0. Stops once
/// ||S z - z|| <= tol (so the returned iterate is a fixed point within tol;
/// the recorded update deltas are then <= damping * tol). Throws
/// SolveDivergence when deltas grow more than 10x over 5 consecutive steps
/// or the iterate norm passes `norm_guard`; SolveNonConvergence when
/// max_iter runs out.
SolveOutcome picard_solve(const ScenarioConfig& config);
SolveOutcome picard_solve(const ScenarioConfig& config, double norm_guard);

struct BallCheckReport {
    double radius = 0.0;
    double literal_lhs = 0.0;    ///< G2p (R^2 + 2aR + a) + |b|, published estimate
    bool literal_ok = false;
    double rigorous_lhs = 0.0;   ///< G2 (R+a)^2 exp(R/H) + max{|b|, |b'|}
    bool rigorous_ok = false;
    bool analytic_ok = false;    ///< the bound selected by `mode`
    int samples = 0;
    int violations = 0;          ///< samples with ||S z|| > R
    double worst_norm = 0.0;     ///< largest ||S z|| observed
};

/// Ball-invariance check for B(0, R): evaluates both analytic bounds (the
/// published one with its constants, the rigorous one with the sharp
/// constants), then applies S to n_samples random smooth grid functions of
/// C1 norm <= R (low-degree polynomials vanishing at the endpoints, rescaled)
/// and counts ||S z|| > R violations. `mode` selects which analytic verdict
/// is surfaced as analytic_ok.
BallCheckReport ball_check(double radius, const ScenarioConfig& config, int n_samples,
                           CertMode mode = CertMode::CorrectedRigorous,
                           std::uint64_t seed = 20240815u);

}  // namespace rocketbvp
