#include <sstream>
#include <string>

#include "json.hpp"

#include "doctest.h"
#include "qrabi/errors.hpp"
#include "qrabi/harness.hpp"

using namespace qrabi;

TEST_CASE("config serialization round-trips exactly") {
    RunConfig c;
    c.command = Command::Dynamics;
    c.params = {.delta = 0.1 + 0.2, .g1 = 1e-17, .g2 = 0.1, .epsilon = -0.25};
    c.n_tr = 75;
    c.levels = 9;
    c.sweep = {.param = "g2", .start = 0.0, .stop = 0.45, .step = 0.015, .active = true};
    c.methods = {"exact", "adiabatic"};
    c.out_path = "series.csv";
    c.format = OutputFormat::Json;
    c.jobs = 3;
    c.t_max = 123.456789012345678;
    c.dt = 0.025;
    c.mode_index = 2;
    c.m_max = 80;
    RunConfig back = parse_config(serialize_config(c));
    CHECK(back == c);
    // serialization itself is deterministic
    CHECK(serialize_config(c) == serialize_config(back));
}

TEST_CASE("config parser accepts comments and rejects malformed lines") {
    RunConfig c = parse_config("# comment\n\ncommand = spectrum\ndelta = 1.5\n");
    CHECK(c.command == Command::Spectrum);
    CHECK(c.params.delta == 1.5);
    CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), param_error);
    CHECK_THROWS_AS(parse_config("delta = abc\n"), param_error);
    CHECK_THROWS_AS(parse_config("delta\n"), param_error);
    CHECK_THROWS_AS(parse_config("n_tr = 1.5\n"), param_error);
    CHECK_THROWS_AS(parse_config("sweep.param = phi\n"), param_error);
    CHECK_THROWS_AS(parse_config("command = fly\n"), param_error);
}

TEST_CASE("presets carry the expected commands and methods") {
    RunConfig f1 = preset_config("fig1");
    CHECK(f1.command == Command::Spectrum);
    CHECK(f1.methods == std::vector<std::string>{"fock", "adiabatic"});
    CHECK(f1.sweep.active);
    CHECK(f1.sweep.param == "g1");
    RunConfig f4 = preset_config("fig4");
    CHECK(f4.command == Command::Dynamics);
    CHECK(f4.t_max == 400.0);
    RunConfig f6 = preset_config("fig6");
    CHECK(f6.command == Command::Splitting);
    CHECK(f6.params.delta == 0.1);
    CHECK_THROWS_AS(preset_config("fig7"), param_error);
}

TEST_CASE("spectrum run emits a deterministic csv sweep") {
    RunConfig c;
    c.command = Command::Spectrum;
    c.params = {.delta = 0.5, .g1 = 0.0, .g2 = 0.1};
    c.n_tr = 20;
    c.levels = 3;
    c.sweep = {.param = "g1", .start = 0.0, .stop = 0.2, .step = 0.1, .active = true};
    c.methods = {"fock"};

    std::ostringstream out1, out2, log;
    CHECK(run(c, out1, log) == 0);
    CHECK(run(c, out2, log) == 0);
    CHECK(out1.str() == out2.str());

    std::istringstream lines(out1.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "g1,level_index,method,energy");
    int rows = 0;
    std::string row;
    while (std::getline(lines, row))
        if (!row.empty() && row[0] != '#') ++rows;
    CHECK(rows == 3 * 3);  // 3 sweep points x 3 levels
}

TEST_CASE("json output carries the run metadata") {
    RunConfig c;
    c.command = Command::Spectrum;
    c.params = {.delta = 1.0, .g1 = 0.3, .g2 = 0.05};
    c.n_tr = 20;
    c.levels = 2;
    c.format = OutputFormat::Json;
    c.methods = {"fock", "bogoliubov"};

    std::ostringstream out, log;
    REQUIRE(run(c, out, log) == 0);
    auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["metadata"]["tool"] == "qrabi");
    CHECK(doc["metadata"]["delta"] == 1.0);
    CHECK(doc["metadata"]["n_tr"] == 20);
    REQUIRE(doc["columns"].size() == 4);
    CHECK(doc["rows"].size() == 4);  // one point, two methods, two levels
}

TEST_CASE("solver failures surface as exit code 2") {
    RunConfig c;
    c.command = Command::Spectrum;
    c.params = {.delta = 0.5, .g1 = 0.1, .g2 = 0.6};
    std::ostringstream out, log;
    CHECK(run(c, out, log) == 2);
    CHECK(log.str().find("collapse") != std::string::npos);
}

TEST_CASE("unknown methods are rejected before any solve") {
    RunConfig c;
    c.command = Command::Spectrum;
    c.methods = {"fock", "variational"};
    std::ostringstream out, log;
    CHECK(run(c, out, log) == 2);
    CHECK(log.str().find("variational") != std::string::npos);
}

TEST_CASE("dynamics run pairs the closed form with the dense reference") {
    RunConfig c;
    c.command = Command::Dynamics;
    c.params = {.delta = 0.5, .g1 = 0.1, .g2 = 0.05};
    c.methods = {"rwa-exact", "rwa-analytic"};
    c.n_tr = 40;
    c.t_max = 10.0;
    c.dt = 0.5;
    std::ostringstream out, log;
    REQUIRE(run(c, out, log) == 0);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,sigma_z_exact,sigma_z_analytic");
    int rows = 0;
    std::string row;
    while (std::getline(lines, row))
        if (!row.empty() && row[0] != '#') ++rows;
    CHECK(rows == 21);
}

TEST_CASE("rabi command tabulates per-level beat frequencies") {
    RunConfig c;
    c.command = Command::Rabi;
    c.params = {.delta = 1.0, .g1 = 0.1, .g2 = 0.1};
    c.methods = {"table"};
    c.levels = 4;
    std::ostringstream out, log;
    REQUIRE(run(c, out, log) == 0);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "n,omega_1,omega_2,selection_warning");
    std::string first;
    std::getline(lines, first);
    CHECK(first.substr(0, 2) == "0,");
    CHECK(first.find("0.209419") != std::string::npos);
}

TEST_CASE("splitting command lists emission lines for both models") {
    RunConfig c;
    c.command = Command::Splitting;
    c.params = {.delta = 1.0, .g1 = 0.1, .g2 = 0.05};
    c.methods = {"rwa"};
    std::ostringstream out, log;
    REQUIRE(run(c, out, log) == 0);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "nu_R,weight,method");
    int rows = 0;
    std::string row;
    while (std::getline(lines, row))
        if (!row.empty() && row[0] != '#') ++rows;
    CHECK(rows == 3);
}

TEST_CASE("injected fault is caught by exactly the targeted check") {
    auto checks = run_validation_checks("overlap-perturb");
    int failed = 0;
    std::string failed_name;
    for (const auto& ck : checks)
        if (!ck.pass) {
            ++failed;
            failed_name = ck.name;
        }
    CHECK(failed == 1);
    CHECK(failed_name == "overlap-orthogonality");
    CHECK_THROWS_AS(run_validation_checks("no-such-fault"), param_error);
}
