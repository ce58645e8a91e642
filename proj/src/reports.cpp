#include "eclab/reports.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "eclab/collapse.hpp"
#include "eclab/cpru.hpp"
#include "eclab/ecru.hpp"
#include "eclab/fixtures.hpp"
#include "eclab/machine_file.hpp"
#include "eclab/qpe_channel.hpp"
#include "eclab/verify.hpp"

namespace eclab::reports {

using json = nlohmann::ordered_json;

namespace {

std::vector<int> parse_bits(const TuringMachine& tm, const std::string& bits) {
    std::vector<int> out;
    for (char c : bits) {
        if (c == '0') out.push_back(1);
        else if (c == '1') out.push_back(2);
        else throw std::invalid_argument("input must be a 0/1 string");
    }
    (void)tm;
    return out;
}

}  // namespace

TuringMachine resolve_machine(const std::string& spec, int tape_length, bool duplicated) {
    TuringMachine tm;
    if (spec == "sweep") tm = fixtures::sweep();
    else if (spec == "parity") tm = fixtures::parity();
    else if (spec == "qbf1") tm = fixtures::qbf1();
    else tm = load_machine(spec);
    if (tape_length > 0) tm.tape_length = tape_length;
    if (duplicated) tm = duplicate(tm);
    return tm;
}

Artifact compile_report(const TuringMachine& tm, const std::string& matrix_prefix) {
    ConfigGraph g = build_graph(tm);
    SparseHamiltonian h = compile(tm);
    SparseHamiltonian hc = tm.duplicated ? computation_hamiltonian(h, tm) : h;

    std::map<std::string, int> type_counts;
    for (const auto& c : g.components) type_counts[component_type_name(c.type)]++;

    json j;
    j["machine"] = {{"states", tm.num_states()},
                    {"symbols", tm.num_symbols()},
                    {"rules", tm.rules.size()},
                    {"tape_length", tm.tape_length},
                    {"duplicated", tm.duplicated}};
    j["graph"] = {{"nodes", g.num_nodes()}, {"components", g.components.size()}};
    for (const auto& [k, v] : type_counts) j["graph"]["types"][k] = v;
    j["graph"]["groups"] = json::parse(graph_summary_json(g))["groups"];
    j["hamiltonian"] = {{"dim", hc.dim},
                        {"one_state_dim", hc.one_state_dim},
                        {"nonzeros", hc.nnz()},
                        {"penalties", hc.penalties_applied}};
    j["translation_invariant"] = translation_invariant(hc);

    std::ostringstream csv;
    csv << "type,length,count\n";
    std::map<std::pair<std::string, int>, int> rows;
    for (const auto& c : g.components) rows[{component_type_name(c.type), c.length()}]++;
    for (const auto& [key, cnt] : rows)
        csv << key.first << ',' << key.second << ',' << cnt << '\n';

    if (!matrix_prefix.empty()) {
        std::ofstream(matrix_prefix + ".mtx") << matrix_coo_text(hc);
        std::ofstream(matrix_prefix + ".basis.json") << basis_labels_json(hc);
        j["matrix_export"] = matrix_prefix;
    }

    Artifact a;
    a.summary = "compile-report: " + std::to_string(g.num_nodes()) + " nodes, " +
                std::to_string(g.components.size()) + " components, dim " +
                std::to_string(hc.dim);
    a.json = j.dump(2) + "\n";
    a.csv = csv.str();
    return a;
}

Artifact spectrum_report(const TuringMachine& tm, double tol) {
    ConfigGraph g = build_graph(tm);
    SparseHamiltonian h = compile(tm);
    SparseHamiltonian hc = tm.duplicated ? computation_hamiltonian(h, tm) : h;
    verify_component_blocks(g, hc);
    auto blocks = all_blocks(g, hc);
    DegeneracyReport audit = degeneracy_audit(blocks, tol);

    json j;
    j["tolerance"] = tol;
    j["blocks"] = json::array();
    std::map<std::pair<std::string, int>, int> seen;
    for (const auto& b : blocks) {
        if (b.cls == "vacuum") continue;
        // one representative per (class, length); duplicates share spectra
        auto key = std::make_pair(b.cls, b.length);
        if (seen.count(key)) {
            seen[key]++;
            continue;
        }
        seen[key] = 1;
        json jb;
        jb["class"] = b.cls;
        jb["length"] = b.length;
        jb["momenta"] = b.momenta;
        jb["energies"] = b.energies;
        j["blocks"].push_back(jb);
    }
    json mult = json::array();
    for (const auto& [key, cnt] : seen)
        mult.push_back({{"class", key.first}, {"length", key.second}, {"count", cnt}});
    j["multiplicities"] = mult;
    j["audit"] = {{"forbidden_matches", audit.forbidden.size()},
                  {"allowed_matches", audit.allowed},
                  {"min_rational_distance", audit.min_rational_distance},
                  {"rational_grid_max_q", audit.rational_grid_max_q}};

    std::ostringstream csv;
    csv << "class,length,index,momentum,energy\n";
    csv.precision(17);
    for (const auto& [key, cnt] : seen) {
        for (const auto& b : blocks) {
            if (b.cls != key.first || b.length != key.second) continue;
            for (int t = 0; t < b.length; ++t)
                csv << b.cls << ',' << b.length << ',' << t + 1 << ',' << b.momenta[t] << ','
                    << b.energies[t] << '\n';
            break;
        }
    }

    Artifact a;
    a.summary = "spectrum: " + std::to_string(blocks.size()) + " blocks, forbidden matches " +
                std::to_string(audit.forbidden.size()) + ", min rational distance " +
                std::to_string(audit.min_rational_distance);
    a.exit_code = audit.ok() ? 0 : 2;
    a.json = j.dump(2) + "\n";
    a.csv = csv.str();
    return a;
}

Artifact collapse_report(int length, const std::string& cls, std::int64_t mc_samples,
                         std::uint64_t seed) {
    double v_sink = cls == "4r5r" ? -0.75 : -0.5;
    SpectralBlock b = solve_hopping(length, -1.0, v_sink);
    auto dist = collapse_distribution(b);
    double second = second_half_probability(dist);

    json j;
    j["length"] = length;
    j["class"] = b.cls;
    j["second_half_probability"] = second;
    j["bound_1_12"] = 1.0 / 12.0;
    j["bound_satisfied"] = second >= 1.0 / 12.0;
    j["distribution"] = dist;
    std::ostringstream csv;
    csv << "position,probability,mc_mean,mc_stderr\n";
    csv.precision(17);
    if (mc_samples > 0) {
        auto mc = monte_carlo_collapse(b, mc_samples, seed);
        j["mc_samples"] = mc_samples;
        j["mc_second_half_mean"] = mc.second_half_mean;
        j["mc_second_half_stderr"] = mc.second_half_stderr;
        j["mc_within_4_sigma"] =
            std::abs(mc.second_half_mean - second) <= 4 * mc.second_half_stderr + 1e-12;
        for (int t = 0; t < length; ++t)
            csv << t + 1 << ',' << dist[t] << ',' << mc.mean[t] << ',' << mc.stderr_[t] << '\n';
    } else {
        for (int t = 0; t < length; ++t) csv << t + 1 << ',' << dist[t] << ",,\n";
    }

    Artifact a;
    std::ostringstream s;
    s.precision(6);
    s << "collapse: length " << length << " class " << b.cls << " P(second half) = " << second
      << (second >= 1.0 / 12.0 ? " (>= 1/12)" : " (< 1/12)");
    a.summary = s.str();
    a.json = j.dump(2) + "\n";
    a.csv = csv.str();
    return a;
}

Artifact pspace_report(const TuringMachine& plain, int tape_length, const std::string& input_bits,
                       int trials, std::uint64_t seed) {
    PspaceInstance inst = PspaceInstance::build(plain, tape_length);
    std::vector<int> input = parse_bits(inst.dup, input_bits);

    json runs = json::array();
    int accepts = 0, defaults = 0;
    for (int t = 0; t < trials; ++t) {
        SolveResult r = inst.solve(input, derive_seed(seed, t));
        accepts += r.accept;
        defaults += r.default_path;
        json qjson = json::array();
        for (const auto& o : r.transcript)
            qjson.push_back({{"node", o.node},
                             {"state", inst.dup.state_names[o.config.state]},
                             {"qa", o.contains_qa},
                             {"qr", o.contains_qr}});
        runs.push_back({{"trial", t}, {"accept", r.accept}, {"queries", r.queries},
                        {"default_path", r.default_path}, {"outcomes", qjson}});
    }
    json j;
    j["machine_states"] = inst.dup.num_states();
    j["tape_length"] = tape_length;
    j["input"] = input_bits;
    j["trials"] = trials;
    j["accepts"] = accepts;
    j["default_path_hits"] = defaults;
    j["failure_envelope_11_12_pow_15"] = std::pow(11.0 / 12.0, 15);
    j["transcript"] = runs;

    std::ostringstream csv;
    csv << "trial,accept,queries,default_path\n";
    for (int t = 0; t < trials; ++t) {
        const auto& r = runs[t];
        csv << t << ',' << int(r["accept"].get<bool>()) << ',' << r["queries"].get<int>() << ','
            << int(r["default_path"].get<bool>()) << '\n';
    }

    Artifact a;
    a.summary = "pspace: input " + input_bits + " accepted " + std::to_string(accepts) + "/" +
                std::to_string(trials) + " (default-path " + std::to_string(defaults) + ")";
    a.json = j.dump(2) + "\n";
    a.csv = csv.str();
    return a;
}

Artifact gapstats_report(int n, double beta, int seeds, std::uint64_t seed) {
    Dyadic R, delta;
    int terms = n;  // the chain set {Z_1, Z_i Z_{i+1}} has n terms
    gap_scaling(n, beta, terms, R, delta);
    auto spec = zz_chain_spec(n, R, delta);
    double threshold = std::pow(2.0, -beta * n);
    GapStats st = gap_statistics(spec, seeds, threshold, seed);

    json j;
    j["n"] = n;
    j["beta"] = beta;
    j["terms"] = terms;
    j["delta"] = delta.to_double();
    j["R"] = R.to_double();
    j["threshold"] = threshold;
    j["seeds"] = seeds;
    j["hits"] = st.hits;
    j["min_observed_gap"] = st.min_observed;

    std::ostringstream csv;
    csv << "seed_index,min_gap\n";
    csv.precision(17);
    for (int s = 0; s < seeds; ++s) csv << s << ',' << st.min_gaps[s] << '\n';

    Artifact a;
    std::ostringstream s;
    s.precision(6);
    s << "gapstats: n=" << n << " beta=" << beta << " hits " << st.hits << "/" << seeds
      << " below " << threshold << ", min gap " << st.min_observed;
    a.summary = s.str();
    a.json = j.dump(2) + "\n";
    a.csv = csv.str();
    a.exit_code = st.hits == 0 ? 0 : 2;
    return a;
}

Artifact channel_report(int n, int m1, int m2, int m3, int offsets, int adaptive_trials,
                        int queries, std::uint64_t seed) {
    Dyadic R, delta;
    gap_scaling(n, 1.0, 2 * n - 1, R, delta);
    SampledCommutingHamiltonian h = sample_hamiltonian(zz_chain_spec(n, R, delta),
                                                       derive_seed(seed, 1));
    QpeRegisters regs{n, m1, m2, m3};
    QpeChannel ch = QpeChannel::for_hamiltonian(h, regs);

    // ancilla-return fidelity per eigenstate under the keyed binary phases
    auto table = ch.binary_phase_table(derive_seed(seed, 2));
    Rng rng(derive_seed(seed, 3));
    double min_fid = 1.0;
    json fids = json::array();
    for (int z = 0; z < (1 << n); ++z) {
        std::uint64_t S =
            std::uniform_int_distribution<std::uint64_t>(0, ch.offset_space() - 1)(rng);
        double f = std::abs(ch.eigenstate_return_amplitude(z, table, S));
        fids.push_back(f);
        min_fid = std::min(min_fid, f);
    }
    double fid_bound = 1.0 - std::pow(2.0, -m3 / 2.0 + 3 + n);

    BoundaryStats bs = offset_boundary_test(ch, offsets, derive_seed(seed, 4));

    // adaptive arms: exact channel with truly random coarse phases vs the
    // ideal random-phase ensemble acting on the system alone
    StateChannel arm_u = [&](std::vector<Cplx>& st, Rng& r) {
        auto tbl = ch.random_phase_table(r);
        std::uint64_t S =
            std::uniform_int_distribution<std::uint64_t>(0, ch.offset_space() - 1)(r);
        ch.apply(st, tbl, S);
    };
    StateChannel arm_v = [&](std::vector<Cplx>& st, Rng& r) {
        for (int z = 0; z < (1 << n); ++z)
            st[z] *= std::polar(1.0, 2 * std::numbers::pi * uniform01(r));
    };
    std::vector<Eigen::MatrixXcd> inter;
    Rng irng(derive_seed(seed, 5));
    for (int i = 0; i <= queries; ++i) inter.push_back(haar_unitary(1 << n, irng));
    AdaptiveResult ad = adaptive_distinguish(arm_u, regs.ancilla(), arm_v, 0, n, inter,
                                             adaptive_trials, derive_seed(seed, 6));
    double secure_bound = queries * std::pow(2.0, -(m3 / 2.0 + 1 + n)) +
                          std::pow(2.0, -(m2 - n - 3));

    json j;
    j["registers"] = {{"n", n}, {"m1", m1}, {"m2", m2}, {"m3", m3}};
    j["normalized_min_gap"] = [&] {
        double g = 1e300;
        auto lam = ch.lambda();
        std::vector<double> s(lam);
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i + 1 < s.size(); ++i) g = std::min(g, s[i + 1] - s[i]);
        return g;
    }();
    j["asymptotic_register_inequalities_hold"] =
        (m1 > n) && (m2 > n + 2) && (m3 > 2 * n) && (m1 > m3);
    j["ancilla_return"] = {{"fidelities", fids},
                           {"min", min_fid},
                           {"bound", fid_bound},
                           {"bound_satisfied", min_fid >= fid_bound}};
    j["boundary"] = {{"trials", bs.trials},
                     {"norm_threshold", bs.norm_threshold},
                     {"bound", bs.bound},
                     {"max_hit_rate", bs.max_hit_rate},
                     {"hit_rates", bs.hit_rate}};
    j["adaptive"] = {{"queries", queries},
                     {"trials", ad.trials},
                     {"trace_distance", ad.trace_distance},
                     {"bound", secure_bound},
                     {"bound_satisfied", ad.trace_distance <= secure_bound}};
    json inj = json::array();
    Rng srng(derive_seed(seed, 7));
    bool injective_all = true;
    for (int s = 0; s < 64; ++s) {
        std::uint64_t S =
            std::uniform_int_distribution<std::uint64_t>(0, ch.offset_space() - 1)(srng);
        bool ok = ch.coarse_injective(S);
        injective_all = injective_all && ok;
    }
    j["coarse_injective_on_64_offsets"] = injective_all;

    std::ostringstream csv;
    csv << "eigenstate,ancilla_return_fidelity,boundary_hit_rate\n";
    csv.precision(17);
    for (int z = 0; z < (1 << n); ++z)
        csv << z << ',' << fids[z].get<double>() << ',' << bs.hit_rate[z] << '\n';

    Artifact a;
    std::ostringstream s;
    s.precision(6);
    s << "channel: min fidelity " << min_fid << ", max boundary hit rate " << bs.max_hit_rate
      << " (bound " << bs.bound << "), adaptive distance " << ad.trace_distance << " (bound "
      << secure_bound << ")";
    a.summary = s.str();
    a.json = j.dump(2) + "\n";
    a.csv = csv.str();
    return a;
}

Artifact verify_report(const std::string& oracle_kind, int n, int runs, std::uint64_t seed) {
    ToyOwfFamily owf{derive_seed(seed, 0xF00D), 2};
    int trues = 0;
    json all = json::array();
    VerifierResult last;
    for (int r = 0; r < runs; ++r) {
        std::unique_ptr<TqbfOracle> oracle;
        if (oracle_kind == "exact") oracle = std::make_unique<ExactTqbfOracle>();
        else if (oracle_kind == "random")
            oracle = std::make_unique<RandomOracle>(derive_seed(seed, 100 + r));
        else if (oracle_kind == "refusing") oracle = std::make_unique<RefusingOracle>();
        else throw std::invalid_argument("oracle must be exact, random or refusing");
        last = verify_oracle(*oracle, n, owf, derive_seed(seed, r));
        trues += last.is_true;
        all.push_back({{"run", r},
                       {"result", last.is_true ? "True" : "Pseudo"},
                       {"successes", last.successes},
                       {"rounds", last.rounds},
                       {"oracle_queries", oracle->query_count()}});
    }
    json j;
    j["oracle"] = oracle_kind;
    j["n"] = n;
    j["runs"] = all;
    j["true_count"] = trues;

    std::ostringstream csv;
    csv << "run,result,successes,rounds\n";
    for (const auto& r : all)
        csv << r["run"].get<int>() << ',' << r["result"].get<std::string>() << ','
            << r["successes"].get<int>() << ',' << r["rounds"].get<int>() << '\n';

    Artifact a;
    bool overall_true = 2 * trues >= runs;
    a.summary = "verify: oracle " + oracle_kind + " -> " +
                (overall_true ? "True" : "Pseudo") + " (" + std::to_string(trues) + "/" +
                std::to_string(runs) + " runs True)";
    a.exit_code = overall_true ? 0 : 3;
    a.json = j.dump(2) + "\n";
    a.csv = csv.str();
    return a;
}

Artifact distinguish_report(const std::string& backend, int n, std::uint64_t seed) {
    PspaceInstance inst = PspaceInstance::build(fixtures::qbf1(5), 5);
    ToyOwfFamily owf{derive_seed(seed, 0xF00D), 2};
    auto b = backend == "identity" ? MachineBackedOracle::Backend::IdentityStub
                                   : MachineBackedOracle::Backend::EcHaar;
    UniversalResult r = universal_distinguish(inst, b, n, owf, seed);

    json j;
    j["backend"] = backend;
    j["n"] = n;
    j["verdict"] = r.verdict == UnitaryVerdict::HaarRandom ? "HaarRandom" : "Pseudorandom";
    j["unitary_queries"] = r.unitary_queries;
    j["verifier_successes"] = r.verifier.successes;
    j["verifier_rounds"] = r.verifier.rounds;

    std::ostringstream csv;
    csv << "round,n_prime,success,queries\n";
    for (std::size_t i = 0; i < r.verifier.transcript.size(); ++i) {
        const auto& t = r.verifier.transcript[i];
        csv << i << ',' << t.n_prime << ',' << int(t.success) << ',' << t.queries << '\n';
    }

    Artifact a;
    a.summary = "distinguish: backend " + backend + " -> " +
                (r.verdict == UnitaryVerdict::HaarRandom ? "HaarRandom" : "Pseudorandom") +
                " after " + std::to_string(r.unitary_queries) + " unitary queries";
    a.exit_code = r.verdict == UnitaryVerdict::HaarRandom ? 0 : 3;
    a.json = j.dump(2) + "\n";
    a.csv = csv.str();
    return a;
}

}  // namespace eclab::reports
