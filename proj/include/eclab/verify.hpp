#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "eclab/boolcircuit.hpp"
#include "eclab/ecru.hpp"
#include "eclab/qbf.hpp"
#include "eclab/rng.hpp"

namespace eclab {

enum class OracleKind { ExactTqbf, EcruBacked, CircuitBacked, Adversarial };

/// Black-box access to a purported TQBF solver, with a per-call query
/// counter.
class TqbfOracle {
  public:
    virtual ~TqbfOracle() = default;
    bool query(const QbfFormula& f) {
        ++queries_;
        return answer(f);
    }
    std::int64_t query_count() const { return queries_; }
    virtual OracleKind kind() const = 0;

  protected:
    virtual bool answer(const QbfFormula& f) = 0;
    std::int64_t queries_ = 0;
};

/// Deterministic exact solver; repeated identical queries are memoized
/// (the counter still advances).
class ExactTqbfOracle : public TqbfOracle {
  public:
    OracleKind kind() const override { return OracleKind::ExactTqbf; }

  protected:
    bool answer(const QbfFormula& f) override;

  private:
    std::unordered_map<std::string, bool> memo_;
};

/// Always answers False; stands in for a solver that cannot invert.
class RefusingOracle : public TqbfOracle {
  public:
    OracleKind kind() const override { return OracleKind::CircuitBacked; }

  protected:
    bool answer(const QbfFormula&) override { return false; }
};

/// Uniformly random answers.
class RandomOracle : public TqbfOracle {
  public:
    explicit RandomOracle(std::uint64_t seed) : rng_(seed) {}
    OracleKind kind() const override { return OracleKind::Adversarial; }

  protected:
    bool answer(const QbfFormula&) override { return uniform01(rng_) < 0.5; }

  private:
    Rng rng_;
};

/// Correct with the given probability, independently per query.
class NoisyOracle : public TqbfOracle {
  public:
    NoisyOracle(double p_correct, std::uint64_t seed) : p_(p_correct), rng_(seed) {}
    OracleKind kind() const override { return OracleKind::Adversarial; }

  protected:
    bool answer(const QbfFormula& f) override {
        bool truth = exact_.query(f);
        return uniform01(rng_) < p_ ? truth : !truth;
    }

  private:
    double p_;
    Rng rng_;
    ExactTqbfOracle exact_;
};

/// Majority vote over 6k base queries; ties are broken by a fair coin.
class AmplifiedOracle : public TqbfOracle {
  public:
    AmplifiedOracle(TqbfOracle& base, int k, std::uint64_t seed)
        : base_(base), k_(k), rng_(seed) {}
    OracleKind kind() const override { return base_.kind(); }

  protected:
    bool answer(const QbfFormula& f) override;

  private:
    TqbfOracle& base_;
    int k_;
    Rng rng_;
};

/// Solves small formulas by driving the duplicated one-quantifier
/// evaluator machine through the measurement protocol. Formulas with up
/// to three quantified variables are folded into a tree of single-
/// quantifier machine runs; the matrix is tabulated by brute force first
/// (2^k entries).
class MachineBackedOracle : public TqbfOracle {
  public:
    enum class Backend { EcHaar, IdentityStub };
    MachineBackedOracle(const PspaceInstance& inst, Backend backend, std::uint64_t seed);
    OracleKind kind() const override { return OracleKind::EcruBacked; }
    std::int64_t unitary_queries() const { return unitary_queries_; }

  protected:
    bool answer(const QbfFormula& f) override;

  private:
    bool machine_query(int quant_or, int t0, int t1);
    const PspaceInstance& inst_;
    Backend backend_;
    Rng rng_;
    std::int64_t unitary_queries_ = 0;
};

struct InversionResult {
    bool found = false;
    std::uint64_t preimage = 0;
    std::int64_t queries = 0;  // oracle calls made by this invocation
};

/// Bit-fixing inversion: one satisfiability query, then one query per
/// input bit; n+1 queries total on the success path.
InversionResult invert_with_oracle(const BoolCircuit& circuit, std::uint64_t y,
                                   TqbfOracle& oracle, EncodeMode mode = EncodeMode::Tseitin);

/// Keyed family of toy one-way functions, one circuit per input width.
struct ToyOwfFamily {
    std::uint64_t key = 0;
    int rounds = 2;
    BoolCircuit circuit(int n_bits) const { return toy_owf_circuit(n_bits, key, rounds); }
};

struct VerifierRound {
    int n_prime = 0;
    std::uint64_t x = 0, y = 0;
    bool success = false;
    std::int64_t queries = 0;
};

struct VerifierResult {
    bool is_true = false;  // True vs Pseudo
    int rounds = 0;        // T = ceil(100 ln n)
    int successes = 0;
    std::vector<VerifierRound> transcript;
};

/// The oracle verifier: T = ceil(100 ln n) rounds of sampling a fresh
/// instance, inverting through the amplified oracle (k = 2n by default)
/// and counting successes; True iff successes >= 2T/3.
VerifierResult verify_oracle(TqbfOracle& oracle, int n, const ToyOwfFamily& owf,
                             std::uint64_t seed, int amplify_k = -1,
                             EncodeMode mode = EncodeMode::Tseitin);

enum class UnitaryVerdict { HaarRandom, Pseudorandom };

struct UniversalResult {
    UnitaryVerdict verdict = UnitaryVerdict::Pseudorandom;
    VerifierResult verifier;
    std::int64_t unitary_queries = 0;
};

/// End-to-end distinguisher: wraps the unitary ensemble as a TQBF oracle
/// via the evaluator machine, then runs the verifier on a micro family
/// (input widths 1..n, n <= 3, truth-table formulas).
UniversalResult universal_distinguish(const PspaceInstance& inst,
                                      MachineBackedOracle::Backend backend, int n,
                                      const ToyOwfFamily& owf, std::uint64_t seed);

std::string verifier_transcript_json(const VerifierResult& r);

}  // namespace eclab
