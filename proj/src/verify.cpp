#include "eclab/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace eclab {

bool ExactTqbfOracle::answer(const QbfFormula& f) {
    std::string key = f.serialize();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool v = tqbf_eval(f);
    memo_.emplace(std::move(key), v);
    return v;
}

bool AmplifiedOracle::answer(const QbfFormula& f) {
    int yes = 0;
    const int total = 6 * k_;
    for (int i = 0; i < total; ++i)
        if (base_.query(f)) ++yes;
    if (2 * yes == total) return uniform01(rng_) < 0.5;
    return 2 * yes > total;
}

MachineBackedOracle::MachineBackedOracle(const PspaceInstance& inst, Backend backend,
                                         std::uint64_t seed)
    : inst_(inst), backend_(backend), rng_(seed) {}

bool MachineBackedOracle::machine_query(int quant_or, int t0, int t1) {
    // machine input bits: [q, t0, t1] with symbols '0' = 1, '1' = 2
    std::vector<int> input = {quant_or ? 2 : 1, t0 ? 2 : 1, t1 ? 2 : 1};
    std::uint64_t seed = rng_();
    SolveResult r = backend_ == Backend::EcHaar ? inst_.solve(input, seed)
                                                : inst_.solve_with_identity(input, seed);
    unitary_queries_ += r.queries;
    return r.accept;
}

bool MachineBackedOracle::answer(const QbfFormula& f) {
    const int k = int(f.prefix.size());
    if (k < 1 || k > 3)
        throw std::length_error("machine-backed oracle handles 1..3 quantified variables; got " +
                                std::to_string(k));
    // Tabulate the matrix over the quantified variables by brute force.
    std::vector<int> table(std::size_t(1) << k, 0);
    for (std::uint64_t a = 0; a < table.size(); ++a) {
        bool ok = true;
        for (const auto& cl : f.clauses) {
            bool sat = false;
            for (int l : cl.lits) {
                int v = std::abs(l);
                int pos = -1;
                for (int i = 0; i < k; ++i)
                    if (f.prefix[i].second == v) pos = i;
                if (pos < 0) throw std::invalid_argument("matrix uses unquantified variable");
                int val = int((a >> (k - 1 - pos)) & 1);  // prefix position 0 = msb
                if ((l > 0) == (val == 1)) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        table[a] = ok ? 1 : 0;
    }
    // Fold the table by one machine run per quantifier, leaves first.
    std::function<int(int, std::uint64_t)> fold = [&](int depth, std::uint64_t base) -> int {
        int q_or = f.prefix[depth].first == Quant::Exists ? 1 : 0;
        int t0, t1;
        if (depth == k - 1) {
            t0 = table[base];
            t1 = table[base | 1];
        } else {
            int shift = k - 1 - depth;
            t0 = fold(depth + 1, base);
            t1 = fold(depth + 1, base | (std::uint64_t(1) << shift));
        }
        return machine_query(q_or, t0, t1) ? 1 : 0;
    };
    return fold(0, 0) == 1;
}

InversionResult invert_with_oracle(const BoolCircuit& circuit, std::uint64_t y,
                                   TqbfOracle& oracle, EncodeMode mode) {
    InversionResult res;
    std::int64_t before = oracle.query_count();
    const int n = circuit.n_inputs;

    QbfFormula phi = inversion_formula(circuit, y, {}, mode);
    if (!oracle.query(phi)) {
        res.found = false;
        res.queries = oracle.query_count() - before;
        return res;
    }
    std::vector<int> bits;
    for (int i = 0; i < n; ++i) {
        bits.push_back(0);
        QbfFormula phi_i = inversion_formula(circuit, y, bits, mode);
        if (!oracle.query(phi_i)) bits.back() = 1;
    }
    res.found = true;
    res.preimage = 0;
    for (int i = 0; i < n; ++i) res.preimage |= std::uint64_t(bits[i]) << i;
    res.queries = oracle.query_count() - before;
    return res;
}

VerifierResult verify_oracle(TqbfOracle& oracle, int n, const ToyOwfFamily& owf,
                             std::uint64_t seed, int amplify_k, EncodeMode mode) {
    if (n < 2) throw std::invalid_argument("verifier needs n >= 2");
    if (amplify_k < 0) amplify_k = 2 * n;
    VerifierResult out;
    out.rounds = int(std::ceil(100.0 * std::log(double(n))));

    Rng rng(seed);
    AmplifiedOracle amplified(oracle, amplify_k, derive_seed(seed, 0xA11));
    for (int r = 0; r < out.rounds; ++r) {
        VerifierRound round;
        round.n_prime = 1 + int(std::uniform_int_distribution<int>(0, n - 1)(rng));
        BoolCircuit c = owf.circuit(round.n_prime);
        round.x = std::uniform_int_distribution<std::uint64_t>(
            0, (std::uint64_t(1) << round.n_prime) - 1)(rng);
        round.y = c.eval(round.x);
        std::int64_t before = oracle.query_count();
        InversionResult inv = invert_with_oracle(c, round.y, amplified, mode);
        round.queries = oracle.query_count() - before;
        round.success = inv.found && c.eval(inv.preimage) == round.y;
        if (round.success) ++out.successes;
        out.transcript.push_back(round);
    }
    out.is_true = 3 * out.successes >= 2 * out.rounds;
    return out;
}

UniversalResult universal_distinguish(const PspaceInstance& inst,
                                      MachineBackedOracle::Backend backend, int n,
                                      const ToyOwfFamily& owf, std::uint64_t seed) {
    if (n > 3) throw std::invalid_argument("micro pipeline handles n <= 3");
    UniversalResult out;
    MachineBackedOracle oracle(inst, backend, derive_seed(seed, 0xEC));
    out.verifier = verify_oracle(oracle, n, owf, seed, /*amplify_k=*/2 * n,
                                 EncodeMode::TruthTable);
    out.unitary_queries = oracle.unitary_queries();
    out.verdict =
        out.verifier.is_true ? UnitaryVerdict::HaarRandom : UnitaryVerdict::Pseudorandom;
    return out;
}

std::string verifier_transcript_json(const VerifierResult& r) {
    std::ostringstream out;
    out << "{\n  \"result\": \"" << (r.is_true ? "True" : "Pseudo") << "\",\n  \"rounds\": "
        << r.rounds << ",\n  \"successes\": " << r.successes << ",\n  \"transcript\": [\n";
    for (std::size_t i = 0; i < r.transcript.size(); ++i) {
        const auto& t = r.transcript[i];
        out << "    {\"n\": " << t.n_prime << ", \"x\": " << t.x << ", \"y\": " << t.y
            << ", \"queries\": " << t.queries << ", \"success\": " << (t.success ? 1 : 0) << "}"
            << (i + 1 < r.transcript.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
    return out.str();
}

}  // namespace eclab
