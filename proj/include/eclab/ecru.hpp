#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "eclab/collapse.hpp"
#include "eclab/confgraph.hpp"
#include "eclab/hamiltonian.hpp"
#include "eclab/rng.hpp"
#include "eclab/spectral.hpp"

namespace eclab {

/// Haar-distributed unitary via QR of a complex Gaussian matrix with the
/// R-diagonal phase correction.
Eigen::MatrixXcd haar_unitary(int dim, Rng& rng);

/// One sampled energy-conserving unitary, stored blockwise in the
/// eigenbasis: independent U(1) phases on non-degenerate levels and Haar
/// blocks on degenerate clusters.
struct BlockRandomUnitary {
    struct Block {
        std::vector<int> levels;  // indices into the eigenvalue list
        std::complex<double> phase{1.0, 0.0};  // used when levels.size() == 1
        Eigen::MatrixXcd haar;                 // used when levels.size() > 1
    };
    std::vector<Block> blocks;
    std::uint64_t seed = 0;
};

/// Groups eigenvalues into degenerate clusters at tolerance tol and draws
/// one unitary. Throws when a chain of near-tol gaps makes the clustering
/// ambiguous (cluster diameter above 2*tol).
BlockRandomUnitary sample_ec_haar(const std::vector<double>& eigenvalues, double tol,
                                  std::uint64_t seed);

/// Expands a sample into a dense matrix given the eigenvector columns.
Eigen::MatrixXcd block_unitary_matrix(const BlockRandomUnitary& u,
                                      const Eigen::MatrixXcd& eigvecs);

/// Outcome of one local-basis measurement of U|psi_source>.
struct MeasurementOutcome {
    std::int64_t node = -1;
    Configuration config;
    bool contains_qa = false;
    bool contains_qr = false;
};

/// A sampler for "apply a fresh unitary to the source state, then measure
/// in the local basis".
class CollapseOracle {
  public:
    virtual ~CollapseOracle() = default;
    virtual MeasurementOutcome sample(Rng& rng) = 0;
    std::int64_t queries() const { return queries_; }

  protected:
    std::int64_t queries_ = 0;
};

/// Degenerate-cluster index over all spectral blocks of one machine,
/// built once and shared by every oracle instance.
struct LevelClusters {
    double tol = 1e-9;
    std::vector<std::vector<int>> cluster_of;                    // [block][level] -> cluster
    std::vector<std::vector<std::pair<int, int>>> members;       // cluster -> (block, level)
    static LevelClusters build(const std::vector<SpectralBlock>& blocks, double tol);
};

/// Exact energy-conserving Haar sampler restricted to the invariant family
/// of the source component: the component itself plus every component
/// sharing a degenerate eigenvalue with it. Haar blocks applied to a
/// one-hot coefficient vector reduce to uniform unit vectors, which keeps
/// each query at O(family size).
class EcHaarOracle : public CollapseOracle {
  public:
    EcHaarOracle(const ConfigGraph& graph, const std::vector<SpectralBlock>& blocks,
                 const Configuration& source, double tol = 1e-9);
    EcHaarOracle(const ConfigGraph& graph, const std::vector<SpectralBlock>& blocks,
                 const LevelClusters& clusters, const Configuration& source);
    MeasurementOutcome sample(Rng& rng) override;

    /// Exact ensemble-averaged measurement distribution over the family
    /// support (independent of sampling).
    std::vector<double> exact_distribution() const;
    const std::vector<std::int64_t>& support() const { return support_; }
    int family_size() const { return int(member_blocks_.size()); }

  private:
    const ConfigGraph& graph_;
    const std::vector<SpectralBlock>& blocks_;
    std::int64_t source_node_;
    int source_block_;
    // cluster c: member blocks and their eigen-level index for this energy
    struct Cluster {
        double coeff;  // <level | psi_source> on the source block
        std::vector<std::pair<int, int>> members;  // (block id, level idx)
    };
    std::vector<Cluster> clusters_;
    std::vector<int> member_blocks_;
    std::vector<int> block_offset_;                 // support offset per member block
    std::vector<std::int64_t> support_;            // node ids, grouped by member block
    std::vector<std::pair<int, int>> support_ref_;  // (block id, position)
    mutable std::vector<std::complex<double>> amp_;
};

/// Ignores the ensemble and returns the source state itself.
class IdentityOracle : public CollapseOracle {
  public:
    IdentityOracle(const ConfigGraph& graph, const Configuration& source);
    MeasurementOutcome sample(Rng& rng) override;

  private:
    MeasurementOutcome out_;
};

struct SolveResult {
    bool accept = false;
    int queries = 0;
    bool default_path = false;  // loop exhausted without seeing q^a or q^r
    std::vector<MeasurementOutcome> transcript;  // one entry per query
};

/// The measurement protocol: up to 15 fresh queries, Accept on the first
/// accept-flavored outcome, Reject on the first reject-flavored one,
/// Accept by default after the loop.
SolveResult pspace_protocol(CollapseOracle& oracle, Rng& rng, int max_queries = 15);

/// Cached machinery for solving inputs of one machine at one tape length.
struct PspaceInstance {
    TuringMachine dup;
    ConfigGraph graph;
    SparseHamiltonian h_comp;
    std::vector<SpectralBlock> blocks;
    LevelClusters clusters;
    double tol = 1e-9;

    /// plain reversible machine -> duplicate, compile, classify, solve.
    static PspaceInstance build(const TuringMachine& plain, int tape_length);
    SolveResult solve(const std::vector<int>& input, std::uint64_t seed) const;
    SolveResult solve_with_identity(const std::vector<int>& input, std::uint64_t seed) const;
};

enum class EnsembleVerdict { HaarLike, EnergyConserving };

struct EnergyDistinguishReport {
    EnsembleVerdict verdict = EnsembleVerdict::HaarLike;
    double e_haar = 0;       // Tr(H)/dim
    double e_psi = 0;        // <psi|H|psi>
    double mean_deviation = 0;
    double threshold = 0;    // midpoint |e_psi - e_haar| / 2
    int trials = 0;
};

using UnitarySampler = std::function<Eigen::MatrixXcd(Rng&)>;

/// Estimates E_U = mean |<psi|U^dag H U|psi> - E_haar| and thresholds at
/// the midpoint. Throws when the separation is too small for the trial
/// budget to give the requested confidence.
EnergyDistinguishReport energy_distinguisher(const Eigen::MatrixXcd& H,
                                             const Eigen::VectorXcd& psi,
                                             const UnitarySampler& sampler, int trials,
                                             std::uint64_t seed, double sigmas = 5.0);

/// Exhaustive search over six-state (Pauli-frame) product states for the
/// largest energy deviation from Tr(H)/2^n.
Eigen::VectorXcd best_product_state(const Eigen::MatrixXcd& H, int qubits);

}  // namespace eclab
