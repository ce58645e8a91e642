#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "eclab/reports.hpp"

namespace {

std::string default_out_dir() {
    const char* env = std::getenv("ECLAB_OUT");
    return env ? env : ".";
}

void write_artifact(const eclab::reports::Artifact& a, const std::string& prefix) {
    std::filesystem::path p(prefix);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream(prefix + ".json") << a.json;
    std::ofstream(prefix + ".csv") << a.csv;
    std::cout << a.summary << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"experiment runner for machine-compiled chain Hamiltonians and "
                 "energy-conserving random-unitary protocols"};
    app.require_subcommand(1);

    std::string machine = "sweep", out_prefix, input_bits = "11", cls = "4a5a";
    std::string oracle_kind = "exact", backend = "echaar", matrix_prefix;
    bool dup = false;
    int tape = 0, length = 64, trials = 200, runs = 1, n = 8;
    int m1 = 8, m2 = 6, m3 = 6, offsets = 10000, adaptive_trials = 200, queries = 3;
    int seeds = 500;
    double beta = 1.0, tol = 1e-9;
    std::int64_t mc_samples = 0;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "random seed (bitwise reproducible)");
        sub->add_option("--out-prefix", out_prefix, "output path prefix for .json/.csv");
    };

    auto* c_compile = app.add_subcommand("compile-report", "graph and matrix summary");
    c_compile->add_option("--machine", machine, "machine file or builtin (sweep/parity/qbf1)");
    c_compile->add_option("--tape", tape, "tape length override");
    c_compile->add_flag("--duplicate", dup, "duplicate the machine first");
    c_compile->add_option("--export-matrix", matrix_prefix,
                          "also write <prefix>.mtx and <prefix>.basis.json");
    add_common(c_compile);

    auto* c_spec = app.add_subcommand("spectrum", "per-class spectra and degeneracy audit");
    c_spec->add_option("--machine", machine);
    c_spec->add_option("--tape", tape);
    c_spec->add_flag("--duplicate", dup);
    c_spec->add_option("--tol", tol, "degeneracy tolerance");
    add_common(c_spec);

    auto* c_col = app.add_subcommand("collapse", "measurement distribution and the 1/12 bound");
    c_col->add_option("--T", length, "path length (even)");
    c_col->add_option("--class", cls, "4a5a or 4r5r");
    c_col->add_option("--mc-samples", mc_samples, "random-phase Monte-Carlo samples");
    add_common(c_col);

    auto* c_ps = app.add_subcommand("pspace", "measurement-protocol trials on one input");
    c_ps->add_option("--machine", machine);
    c_ps->add_option("--tape", tape);
    c_ps->add_option("--input", input_bits, "input bit string");
    c_ps->add_option("--trials", trials);
    add_common(c_ps);

    auto* c_gap = app.add_subcommand("gapstats", "minimum-gap statistics of the ensemble");
    c_gap->add_option("--n", n, "qubits");
    c_gap->add_option("--beta", beta, "gap exponent");
    c_gap->add_option("--seeds", seeds, "number of sampled Hamiltonians");
    add_common(c_gap);

    auto* c_ch = app.add_subcommand("channel", "phase-estimation channel checks");
    c_ch->add_option("--n", n, "system qubits");
    c_ch->add_option("--m1", m1);
    c_ch->add_option("--m2", m2);
    c_ch->add_option("--m3", m3);
    c_ch->add_option("--offsets", offsets, "boundary-test offset samples");
    c_ch->add_option("--adaptive-trials", adaptive_trials);
    c_ch->add_option("--queries", queries, "adaptive adversary queries");
    add_common(c_ch);

    auto* c_ver = app.add_subcommand("verify", "oracle verifier; exit 0 = True, 3 = Pseudo");
    c_ver->add_option("--oracle", oracle_kind, "exact, random or refusing");
    c_ver->add_option("--n", n, "size parameter");
    c_ver->add_option("--runs", runs);
    add_common(c_ver);

    auto* c_dis = app.add_subcommand("distinguish", "universal distinguisher on the evaluator "
                                                    "machine; exit 0 = HaarRandom");
    c_dis->add_option("--backend", backend, "echaar or identity");
    c_dis->add_option("--n", n, "instance size cap (<= 3)");
    add_common(c_dis);

    CLI11_PARSE(app, argc, argv);

    try {
        eclab::reports::Artifact art;
        std::string name;
        if (*c_compile) {
            art = eclab::reports::compile_report(
                eclab::reports::resolve_machine(machine, tape, dup), matrix_prefix);
            name = "compile-report";
        } else if (*c_spec) {
            art = eclab::reports::spectrum_report(
                eclab::reports::resolve_machine(machine, tape, dup), tol);
            name = "spectrum";
        } else if (*c_col) {
            art = eclab::reports::collapse_report(length, cls, mc_samples, seed);
            name = "collapse";
        } else if (*c_ps) {
            auto tm = eclab::reports::resolve_machine(machine, 0, false);
            int L = tape > 0 ? tape : int(input_bits.size()) + 1;
            art = eclab::reports::pspace_report(tm, L, input_bits, trials, seed);
            name = "pspace";
        } else if (*c_gap) {
            art = eclab::reports::gapstats_report(n, beta, seeds, seed);
            name = "gapstats";
        } else if (*c_ch) {
            art = eclab::reports::channel_report(n, m1, m2, m3, offsets, adaptive_trials,
                                                 queries, seed);
            name = "channel";
        } else if (*c_ver) {
            art = eclab::reports::verify_report(oracle_kind, n, runs, seed);
            name = "verify";
        } else if (*c_dis) {
            if (!c_dis->count("--n")) n = 3;  // micro pipeline default
            art = eclab::reports::distinguish_report(backend == "echaar" ? "echaar" : backend,
                                                     n, seed);
            name = "distinguish";
        }
        if (out_prefix.empty()) out_prefix = default_out_dir() + "/" + name;
        write_artifact(art, out_prefix);
        return art.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
