#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eclab/reports.hpp"

using namespace eclab;

TEST_CASE("builtin machines resolve and duplicate") {
    TuringMachine tm = reports::resolve_machine("parity", 3, true);
    CHECK(tm.duplicated);
    CHECK(tm.tape_length == 3);
    CHECK_THROWS(reports::resolve_machine("/nonexistent/machine.tm", 0, false));
}

TEST_CASE("compile report is byte-identical across runs") {
    TuringMachine tm = reports::resolve_machine("sweep", 3, true);
    auto a = reports::compile_report(tm);
    auto b = reports::compile_report(tm);
    CHECK(a.json == b.json);
    CHECK(a.csv == b.csv);
    CHECK(a.csv.rfind("type,length,count\n", 0) == 0);  // golden header
}

TEST_CASE("spectrum report: stable columns, deterministic") {
    TuringMachine tm = reports::resolve_machine("sweep", 3, true);
    auto a = reports::spectrum_report(tm, 1e-9);
    auto b = reports::spectrum_report(tm, 1e-9);
    CHECK(a.json == b.json);
    CHECK(a.csv == b.csv);
    CHECK(a.csv.rfind("class,length,index,momentum,energy\n", 0) == 0);
    CHECK(a.exit_code == 0);
}

TEST_CASE("collapse report with fixed seed is reproducible") {
    auto a = reports::collapse_report(16, "4a5a", 2000, 42);
    auto b = reports::collapse_report(16, "4a5a", 2000, 42);
    CHECK(a.json == b.json);
    CHECK(a.csv == b.csv);
    CHECK(a.csv.rfind("position,probability,mc_mean,mc_stderr\n", 0) == 0);
    CHECK(a.json.find("\"bound_satisfied\": true") != std::string::npos);
}

TEST_CASE("pspace report golden columns and determinism") {
    TuringMachine tm = reports::resolve_machine("parity", 0, false);
    auto a = reports::pspace_report(tm, 3, "11", 5, 7);
    auto b = reports::pspace_report(tm, 3, "11", 5, 7);
    CHECK(a.json == b.json);
    CHECK(a.csv.rfind("trial,accept,queries,default_path\n", 0) == 0);
}

TEST_CASE("gapstats report") {
    auto a = reports::gapstats_report(4, 1.0, 20, 5);
    auto b = reports::gapstats_report(4, 1.0, 20, 5);
    CHECK(a.json == b.json);
    CHECK(a.csv.rfind("seed_index,min_gap\n", 0) == 0);
}

TEST_CASE("verify report exit code encodes the verdict") {
    auto t = reports::verify_report("exact", 3, 1, 11);
    CHECK(t.exit_code == 0);
    auto p = reports::verify_report("refusing", 3, 1, 11);
    CHECK(p.exit_code == 3);
    CHECK(p.csv.rfind("run,result,successes,rounds\n", 0) == 0);
    CHECK_THROWS(reports::verify_report("bogus", 3, 1, 11));
}

#include "eclab/fixtures.hpp"
#include "eclab/machine_file.hpp"

TEST_CASE("bundled machine files match the builtin fixtures") {
    struct Row {
        const char* path;
        TuringMachine builtin;
    };
    const Row rows[] = {{ECLAB_SOURCE_DIR "/machines/sweep.tm", fixtures::sweep()},
                        {ECLAB_SOURCE_DIR "/machines/parity.tm", fixtures::parity()},
                        {ECLAB_SOURCE_DIR "/machines/qbf1.tm", fixtures::qbf1()}};
    for (const auto& r : rows) {
        TuringMachine parsed = load_machine(r.path);
        CHECK(parsed.rules == r.builtin.rules);
        CHECK(parsed.state_names == r.builtin.state_names);
        CHECK(parsed.symbol_names == r.builtin.symbol_names);
        CHECK(parsed.tape_length == r.builtin.tape_length);
    }
}
