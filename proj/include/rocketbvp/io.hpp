#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rocketbvp/grid_function.hpp"
#include "rocketbvp/scenario.hpp"
#include "rocketbvp/solver.hpp"

namespace rocketbvp {

/// Unreadable or malformed scenario file. For syntax errors the message is
/// line-anchored (line and column of the offending token).
class ScenarioParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads and validates a scenario file. Unknown keys are rejected at every
/// level; the optional numeric keys take the documented defaults
/// (g=9.81, rho0=1.225, H=8000, n_grid=201, tol=1e-8, max_iter=500,
/// damping=0.5).
ScenarioConfig load_scenario(const std::filesystem::path& path);
ScenarioConfig scenario_from_json(const nlohmann::json& doc);
nlohmann::ordered_json scenario_to_json(const ScenarioConfig& config);

/// Trajectory CSV with the exact header `t,z,zdot,x,v,residual`, 17
/// significant digits per field (so a re-read reproduces the grid function
/// bit for bit). x = z + y(t), v = zdot + a; residual is the nodewise ODE
/// defect, zero at the endpoints.
void write_trajectory_csv(const std::filesystem::path& path, const GridFunction& z,
                          const ScenarioConfig& config);
GridFunction read_trajectory_csv(const std::filesystem::path& path);

/// Integral over the flight of the drag deceleration along z, divided by
/// g (t1 - t0); the share of impulse spent against drag. Empty when g == 0.
std::optional<double> drag_gravity_impulse_ratio(const GridFunction& z,
                                                 const ScenarioConfig& config);

nlohmann::ordered_json certificate_to_json(const ExistenceCertificate& cert);

/// Versioned run report embedding both certificates, the solve record and
/// whatever oracle comparison the caller assembled. Deterministic: no
/// timestamp unless `stamp` is set.
nlohmann::ordered_json build_run_report(const ScenarioConfig& config,
                                        const ExistenceCertificate& cert_rigorous,
                                        const ExistenceCertificate& cert_literal,
                                        const SolveReport& solve,
                                        const std::string& solve_error,
                                        const GridFunction* solution,
                                        const nlohmann::ordered_json& oracles,
                                        bool stamp);

}  // namespace rocketbvp
