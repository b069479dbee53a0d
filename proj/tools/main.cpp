// rocketbvp command line: solve / certify / sweep on scenario files.
//
// Exit codes: 0 success (and, for certify, rigorous certificate true);
// 1 malformed scenario or bad arguments; 2 solver non-convergence;
// 3 oracle failure or three-way disagreement; 4 certify with rigorous
// certificate false.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rocketbvp/io.hpp"
#include "rocketbvp/oracle.hpp"
#include "rocketbvp/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace rocketbvp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitOracle = 3;
constexpr int kExitNotCertified = 4;

fs::path default_out_dir() {
    if (const char* env = std::getenv("ROCKETBVP_OUT")) return fs::path(env);
    return fs::path(".");
}

std::string effective_label(const ScenarioConfig& config, const fs::path& scenario_path) {
    if (!config.label.empty()) return config.label;
    return scenario_path.stem().string();
}

struct SolveRun {
    ScenarioConfig config;
    ExistenceCertificate cert_rig;
    ExistenceCertificate cert_pap;
    std::optional<GridFunction> solution;
    SolveReport report;
    std::string solve_error;
    ordered_json oracles;
    bool oracles_ok = false;
    std::string oracle_error;
};

ordered_json metrics_json(const DiffMetrics& m) {
    return ordered_json{{"sup_values", m.sup_values},
                        {"sup_derivs", m.sup_derivs},
                        {"rms_values", m.rms_values},
                        {"rms_derivs", m.rms_derivs}};
}

// Picard plus both oracles plus agreement bookkeeping; throws nothing,
// failures are recorded in the run record.
SolveRun run_scenario(const ScenarioConfig& config, double agree_tol, bool with_oracles) {
    SolveRun run;
    run.config = config;
    run.cert_rig = certificate(config, CertMode::CorrectedRigorous);
    run.cert_pap = certificate(config, CertMode::PaperLiteral);

    try {
        SolveOutcome outcome = picard_solve(config);
        outcome.report.cert = run.cert_rig;
        run.solution = std::move(outcome.z);
        run.report = std::move(outcome.report);
    } catch (const SolveError& err) {
        run.report = err.report();
        run.solve_error = err.what();
        run.solution = err.partial();
        return run;  // no oracle comparison against a failed solve
    }

    if (!with_oracles) {
        run.oracles_ok = true;
        return run;
    }

    const double max_z = [&] {
        double m = 0.0;
        for (double v : run.solution->values) m = std::max(m, std::abs(v));
        return m;
    }();
    const double tol = std::max(agree_tol * max_z, 1e-6);
    run.oracles["agreement_tol"] = tol;

    bool agree = true;
    std::optional<GridFunction> z_shoot, z_fd;
    try {
        const ShootingResult shot = shooting_solve(config);
        z_shoot = trajectory_to_grid(shot.trajectory, config);
        const DiffMetrics m = compare(*run.solution, *z_shoot);
        run.oracles["shooting"] =
            ordered_json{{"v_init", shot.v_init},
                         {"roots", shot.roots},
                         {"endpoint_miss", shot.miss},
                         {"vs_picard", metrics_json(m)}};
        agree = agree && m.sup_values <= tol;
    } catch (const OracleError& err) {
        run.oracles["shooting"] = ordered_json{{"error", err.what()}};
        run.oracle_error = err.what();
        agree = false;
    }
    try {
        const FdNewtonResult fd = fd_newton_solve_detailed(config);
        z_fd = fd.z;
        const DiffMetrics m = compare(*run.solution, fd.z);
        run.oracles["fd_newton"] = ordered_json{{"newton_steps", fd.newton_steps},
                                                {"vs_picard", metrics_json(m)}};
        agree = agree && m.sup_values <= tol;
    } catch (const OracleError& err) {
        run.oracles["fd_newton"] = ordered_json{{"error", err.what()}};
        run.oracle_error = err.what();
        agree = false;
    }
    if (z_shoot && z_fd) {
        const DiffMetrics m = compare(*z_shoot, *z_fd);
        run.oracles["shooting_vs_fd_newton"] = metrics_json(m);
        agree = agree && m.sup_values <= tol;
    }
    run.oracles["agree"] = agree;
    run.oracles_ok = agree;
    return run;
}

int cmd_solve(const fs::path& scenario_path, std::optional<int> grid,
              std::optional<double> tol, std::optional<double> damping,
              fs::path out_dir, double agree_tol, bool stamp) {
    ScenarioConfig config = load_scenario(scenario_path);
    if (grid) config.n_grid = *grid;
    if (tol) config.tol = *tol;
    if (damping) config.damping = *damping;
    validate_scenario(config);
    config.label = effective_label(config, scenario_path);

    const SolveRun run = run_scenario(config, agree_tol, true);

    fs::create_directories(out_dir);
    const ordered_json report =
        build_run_report(config, run.cert_rig, run.cert_pap, run.report, run.solve_error,
                         run.solution ? &*run.solution : nullptr, run.oracles, stamp);
    {
        std::ofstream out(out_dir / (config.label + ".report.json"));
        out << report.dump(2) << '\n';
    }
    if (run.solution) {
        write_trajectory_csv(out_dir / (config.label + ".trajectory.csv"), *run.solution,
                             config);
    }

    if (!run.solve_error.empty()) {
        std::cerr << "solve failed: " << run.solve_error << '\n';
        return kExitNoConvergence;
    }
    std::cout << config.label << ": converged in " << run.report.iterations
              << " iterations, residual " << run.report.final_residual << ", oracles "
              << (run.oracles_ok ? "agree" : "DISAGREE") << '\n';
    return run.oracles_ok ? kExitOk : kExitOracle;
}

int cmd_certify(const fs::path& scenario_path, const std::string& mode_arg) {
    const ScenarioConfig config = load_scenario(scenario_path);
    const ExistenceCertificate rig = certificate(config, CertMode::CorrectedRigorous);
    const ExistenceCertificate pap = certificate(config, CertMode::PaperLiteral);
    ordered_json out{{"schema", "rocketbvp-certify/1"},
                     {"label", config.label},
                     {"corrected_rigorous", certificate_to_json(rig)},
                     {"paper_literal", certificate_to_json(pap)}};
    const ExistenceCertificate& shown = mode_arg == "paper" ? pap : rig;
    out["selected_mode"] = cert_mode_name(shown.mode);
    std::cout << out.dump(2) << '\n';
    return rig.overall ? kExitOk : kExitNotCertified;
}

int cmd_certify_synthetic(const std::string& triple) {
    // a:G2:|b| given directly, bypassing any scenario
    double a = 0.0, g2 = 0.0, b = 0.0;
    if (std::sscanf(triple.c_str(), "%lf:%lf:%lf", &a, &g2, &b) != 3) {
        std::cerr << "--synthetic expects a:G2:b\n";
        return kExitUsage;
    }
    const CertificateArithmetic arith = certificate_from_constants(a, g2, b);
    ordered_json out{{"schema", "rocketbvp-certify/1"},
                     {"a", arith.a},
                     {"G2", arith.g2},
                     {"sup_b", arith.sup_b},
                     {"aest_lower", arith.aest_lower},
                     {"aest_upper", arith.aest_upper},
                     {"aest_ok", arith.aest_ok},
                     {"best_bound", arith.best_bound},
                     {"best_ok", arith.best_ok},
                     {"delta", arith.delta},
                     {"overall", arith.overall}};
    if (arith.radius) {
        out["radius"] = *arith.radius;
    } else {
        out["radius"] = nullptr;
    }
    std::cout << out.dump(2) << '\n';
    return arith.overall ? kExitOk : kExitNotCertified;
}

void apply_sweep_param(ScenarioConfig& config, const std::string& param, double value) {
    if (param == "A") {
        config.A = value;
    } else if (param == "C_D") {
        config.C_D = value;
    } else if (param == "r") {
        config.mass.burn_rate = value;
    } else if (param == "c") {
        config.exhaust = ExhaustProfile::constant(-std::abs(value));
        config.exhaust.segments.front().start = config.t0;
    } else if (param == "x1") {
        config.x1 = value;
    } else {
        throw std::invalid_argument("unknown sweep parameter: " + param +
                                    " (expected A, C_D, r, c or x1)");
    }
}

int cmd_sweep(const fs::path& scenario_path, const std::string& param,
              const std::string& range, int steps, fs::path out_dir) {
    double lo = 0.0, hi = 0.0;
    if (std::sscanf(range.c_str(), "%lf:%lf", &lo, &hi) != 2) {
        std::cerr << "--range expects LO:HI\n";
        return kExitUsage;
    }
    if (steps < 1) {
        std::cerr << "--steps must be at least 1\n";
        return kExitUsage;
    }
    ScenarioConfig base = load_scenario(scenario_path);
    base.label = effective_label(base, scenario_path);

    std::ostringstream csv;
    csv << "param,value,linear,converged,iterations,max_abs_z,"
           "certified_rigorous,certified_paper,drag_gravity_impulse_ratio\n";
    for (int k = 0; k < steps; ++k) {
        const double value =
            steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / (steps - 1);
        ScenarioConfig config = base;
        apply_sweep_param(config, param, value);
        validate_scenario(config);
        const SolveRun run = run_scenario(config, 1e-3, false);
        const bool linear = config.A * config.C_D * config.rho0 == 0.0;
        double max_z = 0.0;
        if (run.solution) {
            for (double v : run.solution->values) max_z = std::max(max_z, std::abs(v));
        }
        std::optional<double> ratio;
        if (run.solution && run.solve_error.empty()) {
            ratio = drag_gravity_impulse_ratio(*run.solution, config);
        }
        char buf[512];
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%d,%d,%d,%.17g,%d,%d,", param.c_str(),
                      value, linear ? 1 : 0, run.solve_error.empty() ? 1 : 0,
                      run.report.iterations, max_z, run.cert_rig.overall ? 1 : 0,
                      run.cert_pap.overall ? 1 : 0);
        csv << buf;
        if (ratio) {
            std::snprintf(buf, sizeof(buf), "%.17g\n", *ratio);
            csv << buf;
        } else {
            csv << "\n";
        }
    }
    std::cout << csv.str();
    fs::create_directories(out_dir);
    std::ofstream out(out_dir / (base.label + ".sweep.csv"));
    out << csv.str();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green's-function fixed-point solver for the rocket ascent "
                 "two-point boundary value problem"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::optional<int> grid;
    std::optional<double> tol, damping;
    std::string out_dir = default_out_dir().string();
    double agree_tol = 1e-3;
    bool stamp = false;

    CLI::App* solve = app.add_subcommand("solve", "solve a scenario and cross-validate");
    solve->add_option("scenario", scenario_file, "scenario JSON file")->required();
    solve->add_option("--grid", grid, "override n_grid");
    solve->add_option("--tol", tol, "override tol");
    solve->add_option("--damping", damping, "override damping");
    solve->add_option("--out", out_dir, "output directory (default $ROCKETBVP_OUT or .)");
    solve->add_option("--agree-tol", agree_tol,
                      "relative oracle agreement tolerance (default 1e-3)");
    solve->add_flag("--stamp", stamp, "include a timestamp in the report");

    std::string mode = "rigorous";
    std::string synthetic;
    CLI::App* certify = app.add_subcommand("certify", "evaluate the existence certificate");
    certify->add_option("scenario", scenario_file, "scenario JSON file");
    certify->add_option("--mode", mode, "paper|rigorous (selected view; both are printed)")
        ->check(CLI::IsMember({"paper", "rigorous"}));
    certify->add_option("--synthetic", synthetic,
                        "a:G2:b triple evaluated directly instead of a scenario");

    std::string param, range;
    int steps = 1;
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep with summary CSV");
    sweep->add_option("scenario", scenario_file, "scenario JSON file")->required();
    sweep->add_option("--param", param, "A, C_D, r, c or x1")->required();
    sweep->add_option("--range", range, "LO:HI")->required();
    sweep->add_option("--steps", steps, "number of values (default 1)");
    sweep->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(scenario_file, grid, tol, damping, out_dir, agree_tol, stamp);
        }
        if (certify->parsed()) {
            if (!synthetic.empty()) return cmd_certify_synthetic(synthetic);
            if (scenario_file.empty()) {
                std::cerr << "certify needs a scenario file or --synthetic\n";
                return kExitUsage;
            }
            return cmd_certify(scenario_file, mode);
        }
        if (sweep->parsed()) {
            return cmd_sweep(scenario_file, param, range, steps, out_dir);
        }
    } catch (const ScenarioParseError& err) {
        std::cerr << err.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& err) {
        std::cerr << err.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
