#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rocketbvp/io.hpp"
#include "rocketbvp/solver.hpp"

using namespace rocketbvp;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("rocketbvp_io_test_" + name);
}

json minimal_doc() {
    return json::parse(R"({
        "t0": 0.0, "t1": 20.0, "x0": 0.0, "x1": 2000.0,
        "A": 0.05, "C_D": 0.75,
        "mass": {"m_dry": 800.0, "propellant": 100.0, "burn_rate": 3.0,
                 "burnout_time": 30.0},
        "exhaust": {"c": -2500.0}
    })");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("missing optional keys take the documented defaults") {
    const ScenarioConfig cfg = scenario_from_json(minimal_doc());
    CHECK(cfg.g == 9.81);
    CHECK(cfg.rho0 == 1.225);
    CHECK(cfg.H == 8000.0);
    CHECK(cfg.n_grid == 201);
    CHECK(cfg.tol == 1e-8);
    CHECK(cfg.max_iter == 500);
    CHECK(cfg.damping == 0.5);
    CHECK(cfg.label.empty());
    CHECK(cfg.mass.burn_start == cfg.t0);
}

TEST_CASE("unknown keys are rejected at every level") {
    json doc = minimal_doc();
    doc["thrust_curve"] = 3;
    CHECK_THROWS_WITH_AS(scenario_from_json(doc),
                         doctest::Contains("thrust_curve"), ScenarioParseError);

    json doc2 = minimal_doc();
    doc2["mass"]["wet_mass"] = 1.0;
    CHECK_THROWS_WITH_AS(scenario_from_json(doc2), doctest::Contains("wet_mass"),
                         ScenarioParseError);

    json doc3 = minimal_doc();
    doc3["exhaust"]["isp"] = 250.0;
    CHECK_THROWS_AS(scenario_from_json(doc3), ScenarioParseError);
}

TEST_CASE("missing required keys are named") {
    json doc = minimal_doc();
    doc.erase("x1");
    CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("x1"),
                         ScenarioParseError);
}

TEST_CASE("exhaust accepts a constant or segments, never both") {
    json doc = minimal_doc();
    doc["exhaust"] = json{{"segments", json::array({json{{"t", 0.0}, {"c", -2500.0}},
                                                    json{{"t", 10.0}, {"c", -3000.0}}})}};
    const ScenarioConfig cfg = scenario_from_json(doc);
    CHECK(cfg.exhaust.segments.size() == 2);
    CHECK(cfg.exhaust.segments[1].c == -3000.0);

    json both = minimal_doc();
    both["exhaust"] = json{{"c", -2500.0}, {"segments", json::array()}};
    CHECK_THROWS_AS(scenario_from_json(both), ScenarioParseError);
}

TEST_CASE("malformed files raise line-anchored parse errors") {
    const fs::path p = temp_file("broken.json");
    std::ofstream(p) << "{\n  \"t0\": 0.0,\n  \"t1\": ,\n}\n";
    try {
        load_scenario(p);
        FAIL("expected ScenarioParseError");
    } catch (const ScenarioParseError& err) {
        CHECK(std::string(err.what()).find("line") != std::string::npos);
    }
    CHECK_THROWS_AS(load_scenario(temp_file("no_such_file.json")), ScenarioParseError);
}

TEST_CASE("scenario json round trip") {
    const ScenarioConfig cfg = scenario_from_json(minimal_doc());
    const ScenarioConfig back = scenario_from_json(scenario_to_json(cfg));
    CHECK(back.t1 == cfg.t1);
    CHECK(back.A == cfg.A);
    CHECK(back.mass.burn_rate == cfg.mass.burn_rate);
    CHECK(back.exhaust.segments.front().c == cfg.exhaust.segments.front().c);
    CHECK(back.n_grid == cfg.n_grid);
}

TEST_CASE("trajectory csv round trip is bit exact") {
    ScenarioConfig cfg = scenario_from_json(minimal_doc());
    cfg.n_grid = 33;
    GridFunction z = GridFunction::zeros(cfg.t0, cfg.t1, 33);
    for (std::size_t i = 1; i + 1 < z.size(); ++i) {
        // awkward doubles on purpose
        z.values[i] = std::sqrt(2.0 * static_cast<double>(i)) / 3.0;
        z.derivs[i] = std::cos(static_cast<double>(i)) * 1e-7;
    }
    z.derivs[0] = 1.0 / 3.0;
    z.derivs[32] = -std::atan(1.0);

    const fs::path p1 = temp_file("traj1.csv");
    const fs::path p2 = temp_file("traj2.csv");
    write_trajectory_csv(p1, z, cfg);

    const std::string text = slurp(p1);
    CHECK(text.rfind("t,z,zdot,x,v,residual\n", 0) == 0);

    const GridFunction back = read_trajectory_csv(p1);
    REQUIRE(back.size() == z.size());
    CHECK(back.t0 == z.t0);
    CHECK(back.t1 == z.t1);
    for (std::size_t i = 0; i < z.size(); ++i) {
        CHECK(back.values[i] == z.values[i]);  // bitwise
        CHECK(back.derivs[i] == z.derivs[i]);
    }
    write_trajectory_csv(p2, back, cfg);
    CHECK(slurp(p2) == text);
}

TEST_CASE("drag impulse ratio") {
    ScenarioConfig cfg = scenario_from_json(minimal_doc());
    GridFunction z = GridFunction::zeros(cfg.t0, cfg.t1, 51);

    SUBCASE("no drag means zero ratio") {
        cfg.A = 0.0;
        const auto ratio = drag_gravity_impulse_ratio(z, cfg);
        REQUIRE(ratio.has_value());
        CHECK(*ratio == 0.0);
    }
    SUBCASE("weightless scenarios have no ratio") {
        cfg.g = 0.0;
        CHECK_FALSE(drag_gravity_impulse_ratio(z, cfg).has_value());
    }
    SUBCASE("drag on gives a positive ratio") {
        const auto ratio = drag_gravity_impulse_ratio(z, cfg);
        REQUIRE(ratio.has_value());
        CHECK(*ratio > 0.0);
    }
}

TEST_CASE("run reports are deterministic unless stamped") {
    const ScenarioConfig cfg = scenario_from_json(minimal_doc());
    const ExistenceCertificate rig = certificate(cfg, CertMode::CorrectedRigorous);
    const ExistenceCertificate pap = certificate(cfg, CertMode::PaperLiteral);
    const SolveOutcome out = picard_solve(cfg);

    const auto make = [&](bool stamp) {
        return build_run_report(cfg, rig, pap, out.report, "", &out.z,
                                nlohmann::ordered_json{}, stamp);
    };
    CHECK(make(false).dump(2) == make(false).dump(2));
    CHECK_FALSE(make(false).contains("stamp"));
    CHECK(make(true).contains("stamp"));

    const auto report = make(false);
    CHECK(report.at("schema") == "rocketbvp-report/1");
    CHECK(report.at("green_constants").at("constants_deviate") == true);
    CHECK(report.at("green_constants").at("paper_literal").at("G0") !=
          report.at("green_constants").at("corrected").at("G0"));
    CHECK(report.at("certificates").at("corrected_rigorous").at("overall") == true);
}

TEST_CASE("certificate json writes null for an undefined radius") {
    ScenarioConfig cfg = scenario_from_json(minimal_doc());
    cfg.x1 = 10.0;  // a <= 1: no radius
    const ExistenceCertificate cert = certificate(cfg, CertMode::CorrectedRigorous);
    const auto j = certificate_to_json(cert);
    CHECK(j.at("radius").is_null());
    CHECK(j.at("overall") == false);
}
