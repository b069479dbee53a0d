#include "rocketbvp/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "rocketbvp/green.hpp"
#include "rocketbvp/integral_operator.hpp"

namespace rocketbvp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& what) {
    throw ScenarioParseError("scenario file: " + what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!known.count(item.key())) {
            parse_fail("unknown key \"" + item.key() + "\" in " + where);
        }
    }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) parse_fail("missing key \"" + key + "\" in " + where);
    if (!obj.at(key).is_number()) parse_fail("key \"" + key + "\" in " + where + " must be a number");
    return obj.at(key).get<double>();
}

double optional_number(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) parse_fail("key \"" + key + "\" must be a number");
    return obj.at(key).get<double>();
}

int optional_int(const json& obj, const std::string& key, int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number_integer()) parse_fail("key \"" + key + "\" must be an integer");
    return obj.at(key).get<int>();
}

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ScenarioConfig scenario_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) parse_fail("top level must be an object");
    reject_unknown_keys(doc,
                        {"label", "t0", "t1", "x0", "x1", "g", "A", "C_D", "rho0", "H",
                         "mass", "exhaust", "n_grid", "tol", "max_iter", "damping"},
                        "top level");
    ScenarioConfig cfg;
    cfg.t0 = require_number(doc, "t0", "top level");
    cfg.t1 = require_number(doc, "t1", "top level");
    cfg.x0 = require_number(doc, "x0", "top level");
    cfg.x1 = require_number(doc, "x1", "top level");
    cfg.A = require_number(doc, "A", "top level");
    cfg.C_D = require_number(doc, "C_D", "top level");
    cfg.g = optional_number(doc, "g", 9.81);
    cfg.rho0 = optional_number(doc, "rho0", 1.225);
    cfg.H = optional_number(doc, "H", 8000.0);
    cfg.n_grid = optional_int(doc, "n_grid", 201);
    cfg.tol = optional_number(doc, "tol", 1e-8);
    cfg.max_iter = optional_int(doc, "max_iter", 500);
    cfg.damping = optional_number(doc, "damping", 0.5);
    if (doc.contains("label")) {
        if (!doc.at("label").is_string()) parse_fail("key \"label\" must be a string");
        cfg.label = doc.at("label").get<std::string>();
    }

    if (!doc.contains("mass") || !doc.at("mass").is_object()) {
        parse_fail("missing object \"mass\"");
    }
    const json& mass = doc.at("mass");
    reject_unknown_keys(mass, {"m_dry", "propellant", "burn_rate", "burnout_time"}, "mass");
    cfg.mass.m_dry = require_number(mass, "m_dry", "mass");
    cfg.mass.propellant = require_number(mass, "propellant", "mass");
    cfg.mass.burn_rate = require_number(mass, "burn_rate", "mass");
    cfg.mass.burnout_time = require_number(mass, "burnout_time", "mass");
    cfg.mass.burn_start = cfg.t0;

    if (!doc.contains("exhaust") || !doc.at("exhaust").is_object()) {
        parse_fail("missing object \"exhaust\"");
    }
    const json& ex = doc.at("exhaust");
    reject_unknown_keys(ex, {"c", "segments"}, "exhaust");
    if (ex.contains("c") == ex.contains("segments")) {
        parse_fail("exhaust needs exactly one of \"c\" or \"segments\"");
    }
    if (ex.contains("c")) {
        cfg.exhaust = ExhaustProfile::constant(require_number(ex, "c", "exhaust"));
        cfg.exhaust.segments.front().start = cfg.t0;
    } else {
        if (!ex.at("segments").is_array() || ex.at("segments").empty()) {
            parse_fail("exhaust segments must be a non-empty array");
        }
        for (const auto& seg : ex.at("segments")) {
            if (!seg.is_object()) parse_fail("exhaust segment must be an object");
            reject_unknown_keys(seg, {"t", "c"}, "exhaust segment");
            cfg.exhaust.segments.push_back(ExhaustSegment{
                require_number(seg, "t", "exhaust segment"),
                require_number(seg, "c", "exhaust segment")});
        }
    }

    validate_scenario(cfg);
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioParseError("cannot open scenario file: " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);  // nlohmann reports "parse error at line L, column C"
    } catch (const json::parse_error& err) {
        throw ScenarioParseError(std::string("scenario file ") + path.string() + ": " +
                                 err.what());
    }
    return scenario_from_json(doc);
}

nlohmann::ordered_json scenario_to_json(const ScenarioConfig& config) {
    ordered_json mass{{"m_dry", config.mass.m_dry},
                      {"propellant", config.mass.propellant},
                      {"burn_rate", config.mass.burn_rate},
                      {"burnout_time", config.mass.burnout_time}};
    ordered_json exhaust;
    if (config.exhaust.segments.size() == 1) {
        exhaust["c"] = config.exhaust.segments.front().c;
    } else {
        exhaust["segments"] = ordered_json::array();
        for (const auto& seg : config.exhaust.segments) {
            exhaust["segments"].push_back(ordered_json{{"t", seg.start}, {"c", seg.c}});
        }
    }
    return ordered_json{{"label", config.label}, {"t0", config.t0}, {"t1", config.t1},
                        {"x0", config.x0},       {"x1", config.x1}, {"g", config.g},
                        {"A", config.A},         {"C_D", config.C_D},
                        {"rho0", config.rho0},   {"H", config.H},
                        {"mass", mass},          {"exhaust", exhaust},
                        {"n_grid", config.n_grid}, {"tol", config.tol},
                        {"max_iter", config.max_iter}, {"damping", config.damping}};
}

void write_trajectory_csv(const std::filesystem::path& path, const GridFunction& z,
                          const ScenarioConfig& config) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write trajectory file: " + path.string());
    }
    const ChordShift y = chord_shift(config);
    const std::size_t n = z.size();
    const double h = z.step();
    out << "t,z,zdot,x,v,residual\n";
    for (std::size_t i = 0; i < n; ++i) {
        const double t = z.node(i);
        double residual = 0.0;
        if (i > 0 && i + 1 < n) {
            const double zdd =
                (z.values[i - 1] - 2.0 * z.values[i] + z.values[i + 1]) / (h * h);
            const AlphaBeta ab = alpha_beta_at(config, t);
            const double F =
                nonlinearity_F(ab.alpha, y.a, config.H, z.values[i], z.derivs[i]);
            residual = std::abs(zdd - F - ab.beta);
        }
        out << format17(t) << ',' << format17(z.values[i]) << ','
            << format17(z.derivs[i]) << ',' << format17(z.values[i] + y.at(t)) << ','
            << format17(z.derivs[i] + y.a) << ',' << format17(residual) << '\n';
    }
}

GridFunction read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read trajectory file: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != "t,z,zdot,x,v,residual") {
        throw std::runtime_error("trajectory file has an unexpected header: " + path.string());
    }
    std::vector<double> t, z, zdot;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        std::vector<double> row;
        while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
        if (row.size() != 6) {
            throw std::runtime_error("trajectory row must have 6 fields");
        }
        t.push_back(row[0]);
        z.push_back(row[1]);
        zdot.push_back(row[2]);
    }
    if (t.size() < 2) throw std::runtime_error("trajectory file has too few rows");
    return GridFunction{t.front(), t.back(), std::move(z), std::move(zdot)};
}

std::optional<double> drag_gravity_impulse_ratio(const GridFunction& z,
                                                 const ScenarioConfig& config) {
    const double L = config.t1 - config.t0;
    if (config.g * L == 0.0) return std::nullopt;
    const double a = chord_shift(config).a;
    const std::size_t n = z.size();
    const double h = z.step();
    double impulse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const AlphaBeta ab = alpha_beta_at(config, z.node(i));
        const double drag =
            std::abs(nonlinearity_F(ab.alpha, a, config.H, z.values[i], z.derivs[i]));
        impulse += (i == 0 || i + 1 == n ? 0.5 : 1.0) * h * drag;
    }
    return impulse / (config.g * L);
}

nlohmann::ordered_json certificate_to_json(const ExistenceCertificate& cert) {
    ordered_json j{{"mode", cert_mode_name(cert.mode)},
                   {"a", cert.a},
                   {"sup_alpha", cert.sup_alpha},
                   {"sup_b", cert.sup_b},
                   {"sup_bprime", cert.sup_bprime},
                   {"G0", cert.g0},
                   {"G1", cert.g1},
                   {"G2", cert.g2},
                   {"aest_lower", cert.aest_lower},
                   {"aest_upper", cert.aest_upper},
                   {"aest_ok", cert.aest_ok},
                   {"best_bound", cert.best_bound},
                   {"best_ok", cert.best_ok},
                   {"delta", cert.delta},
                   {"linear", cert.linear},
                   {"overall", cert.overall},
                   {"note", cert.note}};
    if (cert.radius) {
        j["radius"] = *cert.radius;
    } else {
        j["radius"] = nullptr;
    }
    return j;
}

nlohmann::ordered_json build_run_report(const ScenarioConfig& config,
                                        const ExistenceCertificate& cert_rigorous,
                                        const ExistenceCertificate& cert_literal,
                                        const SolveReport& solve,
                                        const std::string& solve_error,
                                        const GridFunction* solution,
                                        const nlohmann::ordered_json& oracles,
                                        bool stamp) {
    const Interval iv{config.t0, config.t1};
    const GreenConstants gc = green_constants(iv);
    const GreenConstants gp = green_constants_paper(iv);
    ordered_json report;
    report["schema"] = "rocketbvp-report/1";
    report["label"] = config.label;
    report["scenario"] = scenario_to_json(config);
    report["chord"] = ordered_json{{"a", chord_shift(config).a}};
    report["green_constants"] =
        ordered_json{{"corrected", ordered_json{{"G0", gc.g0}, {"G1", gc.g1}}},
                     {"paper_literal", ordered_json{{"G0", gp.g0}, {"G1", gp.g1}}},
                     {"constants_deviate", gc.g0 != gp.g0 || gc.g1 != gp.g1},
                     {"note", "paper-literal constants (3/8 L^2, L^2) deviate from the "
                              "corrected closed forms (L^2/8, L/2); both are reported"}};
    report["certificates"] =
        ordered_json{{"corrected_rigorous", certificate_to_json(cert_rigorous)},
                     {"paper_literal", certificate_to_json(cert_literal)}};
    ordered_json js{{"converged", solve.converged},
                    {"iterations", solve.iterations},
                    {"final_residual", solve.final_residual},
                    {"delta_history", solve.delta_history}};
    if (!solve_error.empty()) js["error"] = solve_error;
    report["solve"] = js;
    report["oracles"] = oracles;
    ordered_json diag;
    if (solution != nullptr) {
        double max_z = 0.0, max_d = 0.0;
        for (double v : solution->values) max_z = std::max(max_z, std::abs(v));
        for (double d : solution->derivs) max_d = std::max(max_d, std::abs(d));
        diag["max_abs_z"] = max_z;
        diag["max_abs_zdot"] = max_d;
        const auto ratio = drag_gravity_impulse_ratio(*solution, config);
        if (ratio) {
            diag["drag_gravity_impulse_ratio"] = *ratio;
        } else {
            diag["drag_gravity_impulse_ratio"] = nullptr;
        }
    }
    report["diagnostics"] = diag;
    if (stamp) {
        const auto now = std::chrono::system_clock::now();
        report["stamp"] =
            std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    }
    return report;
}

}  // namespace rocketbvp
