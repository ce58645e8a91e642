#pragma once

#include <complex>
#include <string>
#include <vector>

#include "eclab/confgraph.hpp"
#include "eclab/hamiltonian.hpp"

namespace eclab {

/// Exact eigensystem of one invariant component: momenta k_t in (0,pi)
/// (or 2*pi*t/T for loops), energies bulk + 2cos(k), and for path classes
/// the closed-form eigenvectors  psi_n ~ sin(k(n-1/2))  with squared norm
/// C_k = 2T - sin(2Tk)/sin(k).
struct SpectralBlock {
    int length = 0;
    std::string cls;  // "23", "4a5a", "4r5r", "loop", "vacuum"
    double bulk_diag = 12.0;
    bool loop = false;
    std::vector<double> momenta;
    std::vector<double> energies;
    std::vector<double> norms;  // path classes only
    int component_id = -1;

    /// Unnormalized eigenvector entry 2*sin(k_t*(n-1/2)), n = 1..length.
    double eigvec_raw(int t, int n) const;
    /// Normalized entry (divided by sqrt(norms[t])).
    double eigvec(int t, int n) const;
};

/// Boundary potentials are offsets from the bulk diagonal. The classes in
/// use are (-1,-1) = "23" (closed form k = t*pi/T), (-1,-1/2) = "4a5a",
/// (-1,-3/4) = "4r5r". Other potentials fall back to a sign-change scan.
SpectralBlock solve_hopping(int T, double v_source, double v_sink, double bulk_diag = 12.0);

SpectralBlock loop_spectrum(int T, double bulk_diag = 12.0);

/// Block for one graph component of the penalized Hamiltonian.
SpectralBlock component_block(const ConfigGraph& graph, const SparseHamiltonian& h_comp,
                              int component_id);

/// Blocks for every component (parallel over components), plus one vacuum
/// block when the matrix carries a zero-state sector.
std::vector<SpectralBlock> all_blocks(const ConfigGraph& graph, const SparseHamiltonian& h_comp,
                                      bool parallel = true);

struct EnergyMatch {
    double energy_a = 0, energy_b = 0;
    int block_a = -1, block_b = -1;
    std::string cls_a, cls_b;
    int len_a = 0, len_b = 0;
};

struct DegeneracyReport {
    // Matches between {4a5a} or {4r5r} and any other class, and matches
    // within those classes across different path lengths. Must be empty.
    std::vector<EnergyMatch> forbidden;
    // Same-class same-length coincidences (expected and harmless).
    std::int64_t allowed = 0;
    // Closest approach of 4a5a/4r5r energies to the rational-cosine grid
    // 12 + 2cos(pi p/q), q <= max_denominator.
    double min_rational_distance = 0;
    int rational_grid_max_q = 64;
    bool ok() const { return forbidden.empty(); }
};

DegeneracyReport degeneracy_audit(const std::vector<SpectralBlock>& blocks, double tol = 1e-9,
                                  int rational_max_q = 64);

struct RootCheckReport {
    std::vector<std::complex<double>> roots_a, roots_b;
    double min_distance = 0;
    double max_abs_deviation_from_unit_circle = 0;
};

/// Roots of 2^m x^{2N} + (2^{m+1}-1)(x^{2N-1}+...+x) + 2^m for two (m,N)
/// pairs, with their minimum pairwise distance.
RootCheckReport polynomial_root_check(int m1, int N1, int m2, int N2);

/// Distance of the roots of the (m,N) polynomial to the 2N-th roots of unity.
double root_distance_to_roots_of_unity(int m, int N);

/// C_k(M) = M - sin(M k)/sin(k); the squared-norm building block.
double ck(double k, int M);

struct BoundScan {
    int T0 = -1;             // smallest T0 with both bound families holding above it
    std::vector<int> failures;  // lengths violating either bound
};

/// Scans T = 1..maxT for both boundary classes ("4a5a" and "4r5r"):
/// C_{k_t}(T)/C_{k_t}(2T) <= 5/6 for interior t, and the edge bounds
/// C_{k}(T)/C_k(2T)^2 <= 1/96 for t = 1 and t = T.
BoundScan scan_norm_ratio_bounds(int maxT);

std::string spectral_report_json(const std::vector<SpectralBlock>& blocks,
                                 const DegeneracyReport& audit);

}  // namespace eclab
