// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/runner.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "disco/ansatz.hpp"
#include "disco/hubbard.hpp"
#include "disco/pool.hpp"
#include "disco/pool_tables.hpp"
#include "disco/sector_basis.hpp"

namespace {

using disco::load_config_file;
using disco::run_job;
using disco::run_scan;
using disco::write_text_atomic;
using nlohmann::json;
namespace fs = std::filesystem;

struct TempDir {
    fs::path path;

    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() /
               ("disco_runner_" + std::to_string(std::uint64_t(rd()) << 20 | rd() % (1u << 20)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    REQUIRE(bool(out));
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json dimer_config(double u, const std::string& representation) {
    return {{"system",
             {{"hubbard",
               {{"lx", 2}, {"ly", 1}, {"t", 1.0}, {"u", u}, {"representation", representation}}}}},
            {"sector", {{"n_alpha", 1}, {"n_beta", 1}}},
            {"method", "disco"},
            {"optimizer",
             {{"m_operators", 1}, {"restarts", 2}, {"max_macro_cycles", 6}, {"rng_seed", 11}}}};
}

double dimer_ground(double t, double u) {
    return 0.5 * (u - std::sqrt(u * u + 16.0 * t * t));
}

// Site-representation Hubbard dimer as FCIDUMP text: U on both sites, -t hop.
std::string dimer_fcidump(double t, double u) {
    std::ostringstream out;
    out << "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n";
    out << " " << u << " 1 1 1 1\n";
    out << " " << u << " 2 2 2 2\n";
    out << " " << -t << " 2 1 0 0\n";
    return out.str();
}

}  // namespace

TEST_CASE("config loading and key validation") {
    TempDir tmp;

    SUBCASE("files round-trip through the loader") {
        const json config = dimer_config(4.0, "orbital");
        write_file(tmp.path / "job.json", config.dump());
        CHECK(load_config_file(tmp.path / "job.json") == config);
        CHECK_THROWS_AS(load_config_file(tmp.path / "missing.json"), std::runtime_error);
        write_file(tmp.path / "broken.json", "{not json");
        CHECK_THROWS_AS(load_config_file(tmp.path / "broken.json"), std::runtime_error);
    }

    SUBCASE("unknown keys are rejected at every level") {
        json config = dimer_config(4.0, "orbital");
        config["systm"] = 1;
        CHECK_THROWS_WITH_AS(run_job(config, tmp.path), doctest::Contains("unknown key 'systm'"),
                             std::invalid_argument);

        config = dimer_config(4.0, "orbital");
        config["optimizer"]["restart"] = 3;
        CHECK_THROWS_WITH_AS(run_job(config, tmp.path), doctest::Contains("unknown key 'restart'"),
                             std::invalid_argument);

        config = dimer_config(4.0, "orbital");
        config["system"]["hubbard"]["tt"] = 2.0;
        CHECK_THROWS_WITH_AS(run_job(config, tmp.path), doctest::Contains("unknown key 'tt'"),
                             std::invalid_argument);
    }

    SUBCASE("structural requirements") {
        json config = dimer_config(4.0, "orbital");
        config.erase("sector");
        CHECK_THROWS_WITH_AS(run_job(config, tmp.path), doctest::Contains("sector"),
                             std::invalid_argument);

        config = dimer_config(4.0, "orbital");
        config["method"] = "anneal";
        CHECK_THROWS_AS(run_job(config, tmp.path), std::invalid_argument);

        config = dimer_config(4.0, "orbital");
        config["system"]["fcidump"] = "x";
        CHECK_THROWS_WITH_AS(run_job(config, tmp.path), doctest::Contains("exactly one"),
                             std::invalid_argument);

        config = dimer_config(4.0, "orbital");
        config["system"]["hubbard"]["bc_x"] = "twisted";
        CHECK_THROWS_AS(run_job(config, tmp.path), std::invalid_argument);

        config = dimer_config(4.0, "orbital");
        config["scan"] = {{"points", json::array()}};
        CHECK_THROWS_WITH_AS(run_job(config, tmp.path), doctest::Contains("scan"),
                             std::invalid_argument);

        config = dimer_config(4.0, "orbital");
        config["optimizer"]["restarts"] = 0;
        CHECK_THROWS_AS(run_job(config, tmp.path), std::invalid_argument);
    }
}

TEST_CASE("exact solve matches the closed-form dimer energy") {
    TempDir tmp;
    json config = dimer_config(4.0, "site");
    config["method"] = "fci";
    config.erase("optimizer");
    const json summary = run_job(config, tmp.path / "out");
    CHECK(summary["method"] == "fci");
    CHECK(summary["dimension"] == 4);
    CHECK(summary["energy"].get<double>() == doctest::Approx(dimer_ground(1.0, 4.0)).epsilon(1e-12));
    CHECK(summary["error_vs_reference"].get<double>() == 0.0);
    CHECK(summary["s_squared"].get<double>() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(summary["double_occupancy"].get<double>() > 0.0);
    CHECK(fs::exists(tmp.path / "out" / "summary.json"));
    CHECK(!fs::exists(tmp.path / "out" / "ansatz.txt"));
    const json reread = json::parse(read_file(tmp.path / "out" / "summary.json"));
    CHECK(reread["energy"] == summary["energy"]);
}

TEST_CASE("zero-operator search certifies at the reference energy") {
    TempDir tmp;
    json config = dimer_config(4.0, "orbital");
    config["optimizer"]["m_operators"] = 0;
    const json summary = run_job(config, tmp.path / "out");
    CHECK(summary["certified"] == true);
    CHECK(summary["m_operators"] == 0);
    // The mean-field reference lies above the exact ground state at U > 0.
    CHECK(summary["error_vs_reference"].get<double>() > 0.0);
    CHECK(fs::exists(tmp.path / "out" / "ansatz.txt"));
}

TEST_CASE("replay reproduces and can refine a stored state") {
    TempDir tmp;
    const json run_summary = run_job(dimer_config(4.0, "orbital"), tmp.path / "first");
    const double e_run = run_summary["energy"].get<double>();
    CHECK(e_run == doctest::Approx(dimer_ground(1.0, 4.0)).epsilon(1e-9));

    json replay = dimer_config(4.0, "orbital");
    replay["method"] = "replay";
    replay["replay"] = {{"ansatz", (tmp.path / "first" / "ansatz.txt").string()}};
    const json replay_summary = run_job(replay, tmp.path / "second");
    CHECK(replay_summary["energy"].get<double>() == doctest::Approx(e_run).epsilon(1e-13));
    CHECK(replay_summary["relaxed"] == false);
    CHECK(replay_summary["cnot_count"] == run_summary["cnot_count"]);

    replay["replay"]["relax"] = true;
    const json relaxed = run_job(replay, tmp.path / "third");
    CHECK(relaxed["relaxed"] == true);
    CHECK(relaxed["relax_converged"] == true);
    CHECK(relaxed["energy"].get<double>() <= e_run + 1e-12);
}

TEST_CASE("stop_error resolves against the exact reference") {
    TempDir tmp;
    json config = dimer_config(4.0, "orbital");
    config["optimizer"]["stop_error"] = 1e-6;
    const json summary = run_job(config, tmp.path / "out");
    const double err = summary["error_vs_reference"].get<double>();
    CHECK(err <= 1e-6);
    CHECK(summary["config"]["optimizer"]["stop_error"] == 1e-6);

    config["fci"] = {{"enabled", false}};
    CHECK_THROWS_WITH_AS(run_job(config, tmp.path / "bad"), doctest::Contains("stop_error"),
                         std::invalid_argument);
}

TEST_CASE("single-point scan matches the equivalent run") {
    TempDir tmp;
    json config = dimer_config(4.0, "orbital");
    const json run_summary = run_job(config, tmp.path / "single");

    config["scan"] = {{"points", {{{"label", "only"}, {"u", 4.0}}}}};
    const json scan_summary = run_scan(config, tmp.path / "scan");
    REQUIRE(scan_summary["points"].size() == 1);
    const json& row = scan_summary["points"][0];
    CHECK(row["status"] == "ok");
    CHECK(row["energy"] == run_summary["energy"]);
    CHECK(scan_summary["failed_points"] == 0);
    CHECK(scan_summary["non_parallelity_error"].get<double>() == 0.0);
    CHECK(fs::exists(tmp.path / "scan" / "only" / "summary.json"));

    const std::string csv = read_file(tmp.path / "scan" / "scan.csv");
    CHECK(csv.rfind("label,status,energy,reference_energy,error_vs_reference,", 0) == 0);
    CHECK(csv.find("\nonly,ok,") != std::string::npos);
}

TEST_CASE("interaction sweep tracks exact double occupancy") {
    TempDir tmp;
    json config = dimer_config(0.0, "site");
    config["method"] = "fci";
    config.erase("optimizer");
    config["scan"] = {{"points", json::array()}};
    for (double u : {0.0, 2.0, 4.0, 8.0})
        config["scan"]["points"].push_back({{"label", "u" + std::to_string(int(u))}, {"u", u}});

    const json result = run_scan(config, tmp.path / "sweep");
    REQUIRE(result["points"].size() == 4);
    double previous = 1.0;
    for (const json& row : result["points"]) {
        REQUIRE(row["status"] == "ok");
        CHECK(row["error_vs_reference"].get<double>() == 0.0);
        const double docc = row["double_occupancy"].get<double>();
        CHECK(docc < previous);
        previous = docc;
    }
    // u=0: every configuration equally weighted, <n_up n_dn> = 1/4 per site.
    CHECK(result["points"][0]["double_occupancy"].get<double>() ==
          doctest::Approx(0.25).epsilon(1e-10));
    CHECK(result["non_parallelity_error"].get<double>() == 0.0);
}

TEST_CASE("scan warm start chains ansatz files between points") {
    TempDir tmp;
    json config = dimer_config(0.0, "orbital");
    config["optimizer"] = {{"m_operators", 1}, {"restarts", 1}, {"max_macro_cycles", 4},
                           {"rng_seed", 3}};
    config["scan"] = {{"points",
                       {{{"label", "a"}, {"u", 2.0}}, {{"label", "b"}, {"u", 4.0}}}},
                      {"warm_start", true}};
    const json result = run_scan(config, tmp.path / "sweep");
    REQUIRE(result["failed_points"] == 0);
    const json second = json::parse(read_file(tmp.path / "sweep" / "b" / "summary.json"));
    const std::string warm = second["config"]["optimizer"]["warm_start_file"].get<std::string>();
    CHECK(warm == (tmp.path / "sweep" / "a" / "ansatz.txt").string());
    CHECK(second["energy"].get<double>() == doctest::Approx(dimer_ground(1.0, 4.0)).epsilon(1e-9));
}

TEST_CASE("warm start file sizes the operator sequence") {
    TempDir tmp;
    run_job(dimer_config(4.0, "orbital"), tmp.path / "first");

    json config = dimer_config(4.0, "orbital");
    config["optimizer"]["m_operators"] = 7;  // overridden by the stored sequence length
    config["optimizer"]["warm_start_file"] = (tmp.path / "first" / "ansatz.txt").string();
    const json summary = run_job(config, tmp.path / "second");
    CHECK(summary["m_operators"] == 1);
    CHECK(summary["config"]["optimizer"]["m_operators"] == 1);
    CHECK(summary["energy"].get<double>() == doctest::Approx(dimer_ground(1.0, 4.0)).epsilon(1e-9));

    config["optimizer"]["warm_start_file"] = (tmp.path / "nowhere.txt").string();
    CHECK_THROWS_WITH_AS(run_job(config, tmp.path / "third"), doctest::Contains("not found"),
                         std::invalid_argument);
}

TEST_CASE("fcidump systems cache the exact reference beside the file") {
    TempDir tmp;
    const fs::path dump = tmp.path / "dimer.fcidump";
    write_file(dump, dimer_fcidump(1.0, 4.0));

    json config{{"system", {{"fcidump", dump.string()}}},
                {"sector", {{"n_alpha", 1}, {"n_beta", 1}}},
                {"method", "disco"},
                {"optimizer",
                 {{"m_operators", 2}, {"restarts", 2}, {"max_macro_cycles", 6}, {"rng_seed", 5}}}};

    const json first = run_job(config, tmp.path / "a");
    CHECK(first["reference_energy"].get<double>() ==
          doctest::Approx(dimer_ground(1.0, 4.0)).epsilon(1e-10));
    CHECK(first["reference"]["method"] == "dense");
    REQUIRE(fs::exists(tmp.path / "dimer.fcidump.fcicache.json"));

    const json second = run_job(config, tmp.path / "b");
    CHECK(second["reference"]["source"] == "cache");
    CHECK(second["reference_energy"] == first["reference_energy"]);

    SUBCASE("a different sector ignores the cache") {
        json shifted = config;
        shifted["sector"] = {{"n_alpha", 2}, {"n_beta", 0}};
        shifted["optimizer"]["m_operators"] = 0;
        const json other = run_job(shifted, tmp.path / "c");
        CHECK(other["reference"].contains("method"));
    }

    SUBCASE("corrupt caches are ignored") {
        write_file(tmp.path / "dimer.fcidump.fcicache.json", "garbage");
        const json redo = run_job(config, tmp.path / "d");
        CHECK(redo["reference"]["method"] == "dense");
    }

    SUBCASE("changed integrals invalidate by content hash") {
        write_file(dump, dimer_fcidump(1.0, 8.0));
        json weaker = config;
        weaker["optimizer"]["m_operators"] = 0;
        const json redo = run_job(weaker, tmp.path / "e");
        CHECK(redo["reference"]["method"] == "dense");
        CHECK(redo["reference_energy"].get<double>() ==
              doctest::Approx(dimer_ground(1.0, 8.0)).epsilon(1e-10));
    }
}

TEST_CASE("scan records point failures and continues") {
    TempDir tmp;
    const fs::path good = tmp.path / "good.fcidump";
    write_file(good, dimer_fcidump(1.0, 2.0));

    json config{{"system", {{"fcidump", good.string()}}},
                {"sector", {{"n_alpha", 1}, {"n_beta", 1}}},
                {"method", "fci"},
                {"scan",
                 {{"points",
                   {{{"label", "ok"}, {"fcidump", good.string()}},
                    {{"label", "gone"}, {"fcidump", (tmp.path / "gone.fcidump").string()}}}}}}};
    const json result = run_scan(config, tmp.path / "scan");
    CHECK(result["failed_points"] == 1);
    CHECK(result["points"][0]["status"] == "ok");
    CHECK(result["points"][1]["status"] == "failed");
    CHECK(result["points"][1].contains("error_message"));
    const std::string csv = read_file(tmp.path / "scan" / "scan.csv");
    CHECK(csv.find("gone,failed,") != std::string::npos);

    SUBCASE("duplicate labels are rejected up front") {
        config["scan"]["points"][1]["label"] = "ok";
        CHECK_THROWS_WITH_AS(run_scan(config, tmp.path / "dup"),
                             doctest::Contains("duplicate label"), std::invalid_argument);
    }
}

TEST_CASE("atomic text writes replace files completely") {
    TempDir tmp;
    const fs::path target = tmp.path / "data.txt";
    write_text_atomic(target, "first\n");
    CHECK(read_file(target) == "first\n");
    write_text_atomic(target, "second version\n");
    CHECK(read_file(target) == "second version\n");
    CHECK(!fs::exists(tmp.path / "data.txt.tmp"));
}
