#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eclab/boolcircuit.hpp"

namespace eclab {

enum class Quant { Exists, ForAll };

/// Clause literals: +v for variable v, -v for its negation; variables are
/// 1-based.
struct Clause {
    std::vector<int> lits;
};

/// Fully quantified Boolean formula in prenex normal form with a CNF
/// matrix. Every variable is quantified exactly once.
struct QbfFormula {
    std::vector<std::pair<Quant, int>> prefix;
    std::vector<Clause> clauses;
    int num_vars = 0;

    void validate() const;
    std::string serialize() const;  // canonical text, used for memoization
};

/// Recursive quantifier elimination with unit propagation; throws above 24
/// variables.
bool tqbf_eval(const QbfFormula& f);

enum class EncodeMode {
    Tseitin,     // one auxiliary existential per gate
    TruthTable,  // CNF of forbidden assignments over just the inputs
};

/// Formula  exists x_{k+1}..x_n : C(x) = y  with x_1..x_k pinned to the
/// given bits (still quantified, fixed by unit clauses).
QbfFormula inversion_formula(const BoolCircuit& c, std::uint64_t y,
                             const std::vector<int>& fixed_bits, EncodeMode mode);

}  // namespace eclab
