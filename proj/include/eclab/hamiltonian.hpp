#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eclab/confgraph.hpp"
#include "eclab/dyadic.hpp"
#include "eclab/rtm.hpp"

namespace eclab {

/// Which part of the qudit chain product space a matrix is assembled over.
/// Computational = exactly-one-state-site sector plus the zero-state-site
/// sector; FullSpace = the entire product space (tiny lengths only).
enum class BasisMode { Computational, FullSpace };

/// Real symmetric sparse operator over the chain basis. All values are
/// quarter-integers, stored exactly (value = quarters/4).
struct SparseHamiltonian {
    BasisMode mode = BasisMode::Computational;
    TuringMachine tm;
    BasisMap basis;            // valid in Computational mode
    std::int64_t dim = 0;
    std::int64_t one_state_dim = 0;  // Computational: vacuum block starts here
    bool penalties_applied = false;

    std::vector<std::int64_t> diag_quarters;
    struct Entry {
        std::int64_t row, col;      // row < col
        std::int64_t quarters;
    };
    std::vector<Entry> offdiag;  // sorted by (row, col)

    double value(std::int64_t r, std::int64_t c) const;
    Dyadic value_exact(std::int64_t r, std::int64_t c) const;
    void apply(const double* x, double* y) const;  // y = H x
    std::int64_t nnz() const { return dim + 2 * std::int64_t(offdiag.size()); }
};

struct CompileOptions {
    BasisMode mode = BasisMode::Computational;
    std::int64_t dim_cap = 20'000'000;
};

/// Assembles the chain Hamiltonian of a machine: the sum over all cyclic
/// translations of (|out>+|in>)(<out|+<in|) for every local rule pattern.
SparseHamiltonian compile(const TuringMachine& tm, const CompileOptions& opts = {});

/// Adds the on-site penalties: 10 per state site, plus 1/2 on the accept
/// halting state and 1/4 on the reject halting state. Requires a
/// duplicated machine.
SparseHamiltonian computation_hamiltonian(const SparseHamiltonian& h, const TuringMachine& tm);

/// Tridiagonal restriction of the penalized Hamiltonian to one component.
struct EffectiveHopping {
    int length = 0;
    Dyadic v_source;     // boundary offset relative to the bulk diagonal
    Dyadic v_sink;
    int bulk_diag = 12;  // 2 hopping penalty + 10 state penalty
    std::string cls;     // "23", "4a5a", "4r5r", "loop"
};

/// Extracts boundary offsets and class, and asserts the restriction of
/// h_comp to the component equals the tridiagonal form entry by entry.
EffectiveHopping effective_hopping(const ConfigGraph& graph, const SparseHamiltonian& h_comp,
                                   const Component& comp);

/// Checks every off-diagonal entry stays inside one component (the matrix
/// maps each component's span into itself). Throws on violation.
void verify_component_blocks(const ConfigGraph& graph, const SparseHamiltonian& h);

/// Checks entry-for-entry invariance under the cyclic site shift.
bool translation_invariant(const SparseHamiltonian& h);

/// Coordinate-list text plus a basis-label sidecar (JSON).
std::string matrix_coo_text(const SparseHamiltonian& h);
std::string basis_labels_json(const SparseHamiltonian& h, std::int64_t max_rows = 1 << 20);

}  // namespace eclab
