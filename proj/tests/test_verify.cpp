#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "eclab/fixtures.hpp"
#include "eclab/verify.hpp"
#include "oracles.hpp"

using namespace eclab;

namespace {

QbfFormula three_var_formula() {
    // forall x1 exists x2 forall x3 [(x1 v !x2) & (x2 v x3)]; despite its
    // looks this one is FALSE: x1=0 forces !x2 and x2 together once x3=0.
    QbfFormula f;
    f.num_vars = 3;
    f.prefix = {{Quant::ForAll, 1}, {Quant::Exists, 2}, {Quant::ForAll, 3}};
    f.clauses = {{{1, -2}}, {{2, 3}}};
    return f;
}

QbfFormula matching_formula() {
    // forall x1 exists x2 [(x1 v !x2) & (!x1 v x2)]: true via x2 = x1
    QbfFormula f;
    f.num_vars = 2;
    f.prefix = {{Quant::ForAll, 1}, {Quant::Exists, 2}};
    f.clauses = {{{1, -2}}, {{-1, 2}}};
    return f;
}

QbfFormula random_formula(Rng& rng, int vars, int clauses) {
    QbfFormula f;
    f.num_vars = vars;
    for (int v = 1; v <= vars; ++v)
        f.prefix.push_back({uniform01(rng) < 0.5 ? Quant::Exists : Quant::ForAll, v});
    for (int c = 0; c < clauses; ++c) {
        Clause cl;
        std::set<int> used;
        int width = 1 + int(uniform01(rng) * 3);
        for (int l = 0; l < width; ++l) {
            int v = 1 + int(uniform01(rng) * vars);
            if (used.count(v)) continue;
            used.insert(v);
            cl.lits.push_back(uniform01(rng) < 0.5 ? v : -v);
        }
        f.clauses.push_back(cl);
    }
    return f;
}

}  // namespace

TEST_CASE("closed formulas evaluate correctly") {
    CHECK(tqbf_eval(three_var_formula()) == oracle::brute_force_tqbf(three_var_formula()));
    CHECK(!tqbf_eval(three_var_formula()));
    CHECK(tqbf_eval(matching_formula()));
    QbfFormula contra;
    contra.num_vars = 1;
    contra.prefix = {{Quant::Exists, 1}};
    contra.clauses = {{{1}}, {{-1}}};
    CHECK(!tqbf_eval(contra));
}

TEST_CASE("solver agrees with the truth-table oracle on 500 random instances") {
    Rng rng(1);
    for (int i = 0; i < 500; ++i) {
        QbfFormula f = random_formula(rng, 8, 12);
        CHECK(tqbf_eval(f) == oracle::brute_force_tqbf(f));
    }
}

TEST_CASE("toy owf circuit evaluates consistently with its wires") {
    BoolCircuit c = toy_owf_circuit(6, 0xBEEF);
    for (std::uint64_t x = 0; x < 64; ++x) {
        auto w = c.eval_wires(x);
        std::uint64_t y = c.eval(x);
        for (int i = 0; i < 6; ++i) CHECK(((y >> i) & 1) == std::uint64_t(w[c.outputs[i]]));
    }
}

TEST_CASE("tseitin encoding matches direct circuit evaluation") {
    BoolCircuit c = toy_owf_circuit(5, 0x1234);
    ExactTqbfOracle oracle;
    for (std::uint64_t x = 0; x < 32; ++x) {
        std::uint64_t y = c.eval(x);
        QbfFormula f = inversion_formula(c, y, {}, EncodeMode::Tseitin);
        CHECK(oracle.query(f));  // y is in range by construction
    }
    // and a y outside the range is unsatisfiable
    std::set<std::uint64_t> range;
    for (std::uint64_t x = 0; x < 32; ++x) range.insert(c.eval(x));
    for (std::uint64_t y = 0; y < 32; ++y) {
        if (range.count(y)) continue;
        QbfFormula f = inversion_formula(c, y, {}, EncodeMode::Tseitin);
        CHECK(!oracle.query(f));
        break;
    }
}

TEST_CASE("identity inversion takes exactly n+1 queries") {
    BoolCircuit ident;
    ident.n_inputs = 4;
    for (int i = 0; i < 4; ++i) ident.outputs.push_back(i);
    ExactTqbfOracle oracle;
    InversionResult r = invert_with_oracle(ident, 0b0110, oracle);
    CHECK(r.found);
    CHECK(r.preimage == 0b0110);
    CHECK(r.queries == 5);
}

TEST_CASE("out-of-range target fails after one query") {
    BoolCircuit c;
    c.n_inputs = 3;
    c.gates.push_back({BoolCircuit::Op::Const, 0, 0, false});  // output always 0
    c.outputs = {3, 0, 1};  // first output bit constant zero
    ExactTqbfOracle oracle;
    InversionResult r = invert_with_oracle(c, 0b001, oracle);  // needs output bit0 = 1
    CHECK(!r.found);
    CHECK(r.queries == 1);
}

TEST_CASE("toy owf inversion on all in-range targets, 9 queries each") {
    BoolCircuit c = toy_owf_circuit(8, 0xFEED);
    ExactTqbfOracle oracle;
    int done = 0;
    for (std::uint64_t x = 0; x < 256 && done < 40; x += 7, ++done) {
        std::uint64_t y = c.eval(x);
        InversionResult r = invert_with_oracle(c, y, oracle);
        REQUIRE(r.found);
        CHECK(c.eval(r.preimage) == y);
        CHECK(r.queries == 9);
    }
}

TEST_CASE("amplified oracle: deterministic base answers unchanged, 6k counted") {
    ExactTqbfOracle base;
    AmplifiedOracle amp(base, 5, 1);
    QbfFormula f = matching_formula();
    std::int64_t before = base.query_count();
    CHECK(amp.query(f) == true);
    CHECK(base.query_count() - before == 30);
}

TEST_CASE("always-wrong base gives always-wrong amplified") {
    NoisyOracle wrong(0.0, 3);
    AmplifiedOracle amp(wrong, 3, 4);
    QbfFormula f = matching_formula();
    CHECK(amp.query(f) == false);
}

TEST_CASE("amplified error at k=5 stays below 2^-5 (exact binomial + MC)") {
    // exact tail: majority of 30 answers at per-answer success 2/3, ties by
    // a fair coin: P(wrong) = P(X <= 14) + P(X == 15)/2
    auto binom_pmf = [](int n, int k, double p) {
        double logc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        return std::exp(logc + k * std::log(p) + (n - k) * std::log1p(-p));
    };
    double tail = 0;
    for (int k = 0; k <= 14; ++k) tail += binom_pmf(30, k, 2.0 / 3.0);
    double p_wrong = tail + 0.5 * binom_pmf(30, 15, 2.0 / 3.0);
    CHECK(p_wrong <= std::pow(2.0, -5.0));

    NoisyOracle noisy(2.0 / 3.0, 11);
    AmplifiedOracle amp(noisy, 5, 12);
    QbfFormula f = matching_formula();
    const bool truth = true;
    int wrong = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t)
        if (amp.query(f) != truth) ++wrong;
    double emp = double(wrong) / trials;
    double se = std::sqrt(p_wrong * (1 - p_wrong) / trials);
    CHECK(std::abs(emp - p_wrong) < 4 * se + 1e-3);
    CHECK(emp <= std::pow(2.0, -5.0) + 3 * se);
}

TEST_CASE("verifier: exact oracle -> True, random -> Pseudo, refusing -> Pseudo") {
    ToyOwfFamily owf{0xABCD, 2};
    int true_count = 0, pseudo_rand = 0, pseudo_refuse = 0;
    const int runs = 10;
    for (int r = 0; r < runs; ++r) {
        ExactTqbfOracle exact;
        VerifierResult v = verify_oracle(exact, 6, owf, derive_seed(50, r));
        true_count += v.is_true;
        CHECK(v.rounds == int(std::ceil(100.0 * std::log(6.0))));

        RandomOracle rnd(derive_seed(51, r));
        VerifierResult vr = verify_oracle(rnd, 6, owf, derive_seed(52, r));
        pseudo_rand += !vr.is_true;

        RefusingOracle refuse;
        VerifierResult vf = verify_oracle(refuse, 6, owf, derive_seed(53, r));
        pseudo_refuse += !vf.is_true;
        CHECK(vf.successes == 0);
    }
    CHECK(true_count == runs);
    CHECK(pseudo_rand == runs);
    CHECK(pseudo_refuse == runs);
}

TEST_CASE("monotonicity: larger k never hurts a 2/3-correct oracle") {
    ToyOwfFamily owf{0x77, 2};
    std::vector<int> ks{1, 3, 6};
    std::vector<double> rates;
    for (int k : ks) {
        int ok = 0;
        const int runs = 60;
        for (int r = 0; r < runs; ++r) {
            NoisyOracle noisy(2.0 / 3.0, derive_seed(90 + k, r));
            VerifierResult v = verify_oracle(noisy, 4, owf, derive_seed(70, r), k);
            ok += v.is_true;
        }
        rates.push_back(double(ok) / runs);
    }
    CHECK(rates[0] <= rates[1] + 0.05);
    CHECK(rates[1] <= rates[2] + 0.05);
    CHECK(rates[2] > 0.9);
}

TEST_CASE("machine-backed oracle answers single-quantifier formulas") {
    PspaceInstance inst = PspaceInstance::build(fixtures::qbf1(5), 5);
    MachineBackedOracle oracle(inst, MachineBackedOracle::Backend::EcHaar, 1);
    // exists x [x] is true; forall x [x] is false
    QbfFormula f;
    f.num_vars = 1;
    f.prefix = {{Quant::Exists, 1}};
    f.clauses = {{{1}}};
    CHECK(oracle.query(f));
    f.prefix = {{Quant::ForAll, 1}};
    CHECK(!oracle.query(f));
    CHECK(oracle.unitary_queries() > 0);
}

TEST_CASE("machine-backed oracle folds 3-variable formulas correctly") {
    PspaceInstance inst = PspaceInstance::build(fixtures::qbf1(5), 5);
    MachineBackedOracle oracle(inst, MachineBackedOracle::Backend::EcHaar, 2);
    QbfFormula f = three_var_formula();
    bool expect = oracle::brute_force_tqbf(f);
    int agree = 0;
    for (int t = 0; t < 10; ++t) agree += oracle.query(f) == expect;
    CHECK(agree >= 9);
    Rng rng(44);
    for (int i = 0; i < 15; ++i) {
        QbfFormula g = random_formula(rng, 3, 4);
        bool want = oracle::brute_force_tqbf(g);
        CHECK(oracle.query(g) == want);
    }
}

TEST_CASE("universal distinguisher: exact sampler Haar, identity stub Pseudo") {
    PspaceInstance inst = PspaceInstance::build(fixtures::qbf1(5), 5);
    ToyOwfFamily owf{0x5151, 2};
    UniversalResult haar =
        universal_distinguish(inst, MachineBackedOracle::Backend::EcHaar, 3, owf, 31);
    CHECK(haar.verdict == UnitaryVerdict::HaarRandom);
    UniversalResult stub =
        universal_distinguish(inst, MachineBackedOracle::Backend::IdentityStub, 3, owf, 32);
    CHECK(stub.verdict == UnitaryVerdict::Pseudorandom);
    // query accounting: <= 15 * (2^n'-1) * (n'+1) * 6k * T with n'<=3, k=6
    std::int64_t T = haar.verifier.rounds;
    CHECK(haar.unitary_queries <= 15LL * 7 * 4 * 36 * T);
    CHECK(haar.unitary_queries > 0);
}

TEST_CASE("transcript json") {
    ExactTqbfOracle exact;
    ToyOwfFamily owf{0x9, 2};
    VerifierResult v = verify_oracle(exact, 2, owf, 77);
    std::string s = verifier_transcript_json(v);
    CHECK(s.find("\"result\": \"True\"") != std::string::npos);
    CHECK(s.find("\"rounds\"") != std::string::npos);
}
