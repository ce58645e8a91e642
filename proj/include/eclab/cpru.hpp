#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "eclab/dyadic.hpp"
#include "eclab/rng.hpp"

namespace eclab {

/// A local observable diagonal in the computational basis, given by its
/// 2^|support| diagonal entries.
struct DiagonalTemplate {
    std::string name;
    std::vector<Dyadic> diag;
    int width() const;
};

struct CommutingTerm {
    int template_id = 0;
    std::vector<int> support;  // qubit indices, least-significant first
};

/// Ensemble of commuting Hamiltonians H = sum_i J_i h_i with digitized
/// Gaussian couplings. Terms must commute, cover every qubit, and form a
/// complete set: the tuple of term eigenvalues must distinguish all 2^n
/// computational basis states.
struct CommutingEnsembleSpec {
    int qubits = 0;
    std::vector<DiagonalTemplate> templates;
    std::vector<CommutingTerm> terms;
    Dyadic R;      // saturation bound
    Dyadic delta;  // grid step; R/delta must be an odd integer

    void validate() const;  // throws on any violated invariant
    std::int64_t grid_steps() const;  // R/delta
};

/// Rounds to the grid {-R, ..., -delta, 0, delta, ..., R}: half-open bins
/// ((k-1/2)delta, (k+1/2)delta] with saturation at the ends.
Dyadic digitize_gaussian(double sample, const Dyadic& R, const Dyadic& delta);

struct SampledCommutingHamiltonian {
    CommutingEnsembleSpec spec;
    std::vector<Dyadic> couplings;

    Dyadic eigenvalue(std::uint64_t z) const;
    Dyadic term_quantum_number(int term, std::uint64_t z) const;
    std::vector<double> spectrum() const;  // all 2^n eigenvalues, basis order
    double min_gap() const;
    Eigen::MatrixXcd to_dense() const;
};

SampledCommutingHamiltonian sample_hamiltonian(const CommutingEnsembleSpec& spec,
                                               std::uint64_t seed);

/// Complete single-site set {Z_1,...,Z_n}.
CommutingEnsembleSpec z_fields_spec(int n, const Dyadic& R, const Dyadic& delta);

/// One-dimensional complete set {Z_1, Z_1 Z_2, Z_2 Z_3, ..., Z_{n-1} Z_n}.
CommutingEnsembleSpec zz_chain_spec(int n, const Dyadic& R, const Dyadic& delta);

/// Digitization grid for a target gap exponent: delta =
/// 2^-ceil(log2(2^(beta*n) * M)) and R ~ 4 with R/delta odd.
void gap_scaling(int n, double beta, int num_terms, Dyadic& R, Dyadic& delta);

struct GapStats {
    int seeds = 0;
    double threshold = 0;
    int hits = 0;           // seeds with min gap <= threshold
    double min_observed = 0;
    std::vector<double> min_gaps;
};

GapStats gap_statistics(const CommutingEnsembleSpec& spec, int seeds, double threshold,
                        std::uint64_t seed0, bool parallel = true);

}  // namespace eclab
