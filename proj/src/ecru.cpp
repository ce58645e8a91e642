#include "eclab/ecru.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace eclab {

Eigen::MatrixXcd haar_unitary(int dim, Rng& rng) {
    Eigen::MatrixXcd A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) A(i, j) = std::complex<double>(gaussian(rng), gaussian(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
    Eigen::MatrixXcd Q = qr.householderQ();
    Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        std::complex<double> d = R(j, j);
        std::complex<double> ph = (std::abs(d) > 0) ? d / std::abs(d) : 1.0;
        Q.col(j) *= ph;
    }
    return Q;
}

BlockRandomUnitary sample_ec_haar(const std::vector<double>& eigenvalues, double tol,
                                  std::uint64_t seed) {
    const int n = int(eigenvalues.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return eigenvalues[a] < eigenvalues[b]; });

    BlockRandomUnitary u;
    u.seed = seed;
    Rng rng(seed);
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && eigenvalues[order[j + 1]] - eigenvalues[order[j]] <= tol) ++j;
        double diameter = eigenvalues[order[j]] - eigenvalues[order[i]];
        if (diameter > 2 * tol) {
            std::ostringstream msg;
            msg << "degeneracy clustering ambiguous: gaps";
            for (int k = i; k < j; ++k)
                msg << ' ' << (eigenvalues[order[k + 1]] - eigenvalues[order[k]]);
            msg << " chain across tolerance " << tol;
            throw std::runtime_error(msg.str());
        }
        BlockRandomUnitary::Block blk;
        for (int k = i; k <= j; ++k) blk.levels.push_back(order[k]);
        if (blk.levels.size() == 1)
            blk.phase = std::polar(1.0, 2 * std::numbers::pi * uniform01(rng));
        else
            blk.haar = haar_unitary(int(blk.levels.size()), rng);
        u.blocks.push_back(std::move(blk));
        i = j + 1;
    }
    return u;
}

Eigen::MatrixXcd block_unitary_matrix(const BlockRandomUnitary& u,
                                      const Eigen::MatrixXcd& eigvecs) {
    const int d = int(eigvecs.rows());
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& blk : u.blocks) {
        if (blk.levels.size() == 1) {
            B(blk.levels[0], blk.levels[0]) = blk.phase;
        } else {
            for (std::size_t a = 0; a < blk.levels.size(); ++a)
                for (std::size_t b = 0; b < blk.levels.size(); ++b)
                    B(blk.levels[a], blk.levels[b]) = blk.haar(int(a), int(b));
        }
    }
    return eigvecs * B * eigvecs.adjoint();
}

LevelClusters LevelClusters::build(const std::vector<SpectralBlock>& blocks, double tol) {
    LevelClusters out;
    out.tol = tol;
    struct Lv {
        double e;
        int block, idx;
    };
    std::vector<Lv> levels;
    out.cluster_of.resize(blocks.size());
    for (int bi = 0; bi < int(blocks.size()); ++bi) {
        out.cluster_of[bi].assign(blocks[bi].energies.size(), -1);
        if (blocks[bi].component_id < 0) continue;  // vacuum
        for (int k = 0; k < int(blocks[bi].energies.size()); ++k)
            levels.push_back({blocks[bi].energies[k], bi, k});
    }
    std::sort(levels.begin(), levels.end(), [](const Lv& a, const Lv& b) { return a.e < b.e; });
    std::size_t i = 0;
    while (i < levels.size()) {
        std::size_t j = i;
        while (j + 1 < levels.size() && levels[j + 1].e - levels[j].e <= tol) ++j;
        if (levels[j].e - levels[i].e > 2 * tol)
            throw std::runtime_error("degeneracy clustering ambiguous near energy " +
                                     std::to_string(levels[i].e));
        int cid = int(out.members.size());
        out.members.emplace_back();
        for (std::size_t k = i; k <= j; ++k) {
            out.members[cid].push_back({levels[k].block, levels[k].idx});
            out.cluster_of[levels[k].block][levels[k].idx] = cid;
        }
        i = j + 1;
    }
    return out;
}

EcHaarOracle::EcHaarOracle(const ConfigGraph& graph, const std::vector<SpectralBlock>& blocks,
                           const Configuration& source, double tol)
    : EcHaarOracle(graph, blocks, LevelClusters::build(blocks, tol), source) {}

EcHaarOracle::EcHaarOracle(const ConfigGraph& graph, const std::vector<SpectralBlock>& blocks,
                           const LevelClusters& lc, const Configuration& source)
    : graph_(graph), blocks_(blocks) {
    source_node_ = graph_.basis.index_of(source);
    source_block_ = graph_.node_component[source_node_];
    if (graph_.node_position[source_node_] != 0)
        throw std::invalid_argument("source configuration is not the source of its path");
    int src_bi = -1;
    for (int bi = 0; bi < int(blocks_.size()); ++bi)
        if (blocks_[bi].component_id == source_block_) src_bi = bi;
    if (src_bi < 0) throw std::invalid_argument("no spectral block for the source component");
    const SpectralBlock* src = &blocks_[src_bi];

    std::vector<char> member_seen(blocks_.size(), 0);
    for (int k = 0; k < int(src->energies.size()); ++k) {
        int cid = lc.cluster_of[src_bi][k];
        Cluster c;
        c.coeff = src->eigvec(k, 1);
        for (const auto& [bi, idx] : lc.members[cid]) {
            const auto& b = blocks_[bi];
            if (b.loop || b.cls == "vacuum")
                throw std::runtime_error(
                    "source component shares energy with a loop or vacuum level; "
                    "run the degeneracy audit");
            c.members.push_back({bi, idx});
            if (!member_seen[bi]) {
                member_seen[bi] = 1;
                member_blocks_.push_back(bi);
            }
        }
        clusters_.push_back(std::move(c));
    }
    std::sort(member_blocks_.begin(), member_blocks_.end());

    block_offset_.assign(blocks_.size(), -1);
    for (int bi : member_blocks_) {
        block_offset_[bi] = int(support_.size());
        const auto& comp = graph_.components[blocks_[bi].component_id];
        for (int t = 0; t < comp.length(); ++t) {
            support_.push_back(comp.nodes[t]);
            support_ref_.push_back({bi, t});
        }
    }
    amp_.resize(support_.size());
}

MeasurementOutcome EcHaarOracle::sample(Rng& rng) {
    ++queries_;
    std::fill(amp_.begin(), amp_.end(), std::complex<double>(0, 0));

    std::vector<std::complex<double>> w;
    for (const auto& c : clusters_) {
        const int mu = int(c.members.size());
        w.resize(mu);
        if (mu == 1) {
            w[0] = std::polar(1.0, 2 * std::numbers::pi * uniform01(rng));
        } else {
            // One column of a Haar unitary is a uniform unit vector.
            double nrm2 = 0;
            for (int m = 0; m < mu; ++m) {
                w[m] = std::complex<double>(gaussian(rng), gaussian(rng));
                nrm2 += std::norm(w[m]);
            }
            double inv = 1.0 / std::sqrt(nrm2);
            for (int m = 0; m < mu; ++m) w[m] *= inv;
        }
        for (int m = 0; m < mu; ++m) {
            auto [bi, idx] = c.members[m];
            const auto& b = blocks_[bi];
            std::complex<double> amp0 = c.coeff * w[m];
            int base = block_offset_[bi];
            for (int t = 1; t <= b.length; ++t) amp_[base + t - 1] += amp0 * b.eigvec(idx, t);
        }
    }

    double total = 0;
    for (const auto& a : amp_) total += std::norm(a);
    if (std::abs(total - 1.0) > 1e-9)
        throw std::runtime_error("collapse probabilities sum to " + std::to_string(total));

    double r = uniform01(rng) * total;
    std::size_t pick = support_.size() - 1;
    double acc = 0;
    for (std::size_t s = 0; s < support_.size(); ++s) {
        acc += std::norm(amp_[s]);
        if (r <= acc) {
            pick = s;
            break;
        }
    }

    MeasurementOutcome out;
    out.node = support_[pick];
    out.config = graph_.basis.config_at(graph_.tm, out.node);
    auto fl = graph_.tm.state_flavor(out.config.state);
    out.contains_qa = fl == StateFlavor::Accept;
    out.contains_qr = fl == StateFlavor::Reject;
    return out;
}

std::vector<double> EcHaarOracle::exact_distribution() const {
    std::vector<double> dist(support_.size(), 0.0);
    for (const auto& c : clusters_) {
        const double mu = double(c.members.size());
        for (const auto& [bi, idx] : c.members) {
            const auto& b = blocks_[bi];
            int base = block_offset_[bi];
            for (int t = 1; t <= b.length; ++t) {
                double v = b.eigvec(idx, t);
                dist[base + t - 1] += (c.coeff * c.coeff) * v * v / mu;
            }
        }
    }
    return dist;
}

IdentityOracle::IdentityOracle(const ConfigGraph& graph, const Configuration& source) {
    out_.node = graph.basis.index_of(source);
    out_.config = source;
    auto fl = graph.tm.state_flavor(source.state);
    out_.contains_qa = fl == StateFlavor::Accept;
    out_.contains_qr = fl == StateFlavor::Reject;
}

MeasurementOutcome IdentityOracle::sample(Rng&) {
    ++queries_;
    return out_;
}

SolveResult pspace_protocol(CollapseOracle& oracle, Rng& rng, int max_queries) {
    SolveResult res;
    for (int t = 1; t <= max_queries; ++t) {
        MeasurementOutcome o = oracle.sample(rng);
        ++res.queries;
        res.transcript.push_back(o);
        if (o.contains_qa) {
            res.accept = true;
            return res;
        }
        if (o.contains_qr) {
            res.accept = false;
            return res;
        }
    }
    res.accept = true;  // default branch after loop exhaustion
    res.default_path = true;
    return res;
}

PspaceInstance PspaceInstance::build(const TuringMachine& plain, int tape_length) {
    PspaceInstance inst;
    TuringMachine at_len = plain.with_tape_length(tape_length);
    inst.dup = plain.duplicated ? at_len : duplicate(at_len);
    inst.graph = build_graph(inst.dup);
    SparseHamiltonian h = compile(inst.dup);
    inst.h_comp = computation_hamiltonian(h, inst.dup);
    inst.blocks = all_blocks(inst.graph, inst.h_comp);
    inst.clusters = LevelClusters::build(inst.blocks, inst.tol);
    return inst;
}

SolveResult PspaceInstance::solve(const std::vector<int>& input, std::uint64_t seed) const {
    Configuration c1 = input_configuration(dup, input);
    if (clusters.members.empty()) {
        EcHaarOracle oracle(graph, blocks, c1, tol);
        Rng rng(seed);
        return pspace_protocol(oracle, rng);
    }
    EcHaarOracle oracle(graph, blocks, clusters, c1);
    Rng rng(seed);
    return pspace_protocol(oracle, rng);
}

SolveResult PspaceInstance::solve_with_identity(const std::vector<int>& input,
                                                std::uint64_t seed) const {
    Configuration c1 = input_configuration(dup, input);
    IdentityOracle oracle(graph, c1);
    Rng rng(seed);
    return pspace_protocol(oracle, rng);
}

EnergyDistinguishReport energy_distinguisher(const Eigen::MatrixXcd& H,
                                             const Eigen::VectorXcd& psi,
                                             const UnitarySampler& sampler, int trials,
                                             std::uint64_t seed, double sigmas) {
    const int d = int(H.rows());
    EnergyDistinguishReport rep;
    rep.trials = trials;
    rep.e_haar = H.trace().real() / d;
    rep.e_psi = (psi.adjoint() * H * psi)(0).real();
    rep.threshold = std::abs(rep.e_psi - rep.e_haar) / 2;

    // Haar-arm fluctuation scale; the separation must beat it at the
    // requested number of sigmas for this trial budget.
    Eigen::MatrixXcd C = H - rep.e_haar * Eigen::MatrixXcd::Identity(d, d);
    double sigma_haar = std::sqrt(C.squaredNorm() / double(d) / double(d + 1));
    if (rep.threshold < sigmas * sigma_haar / std::sqrt(double(trials)))
        throw std::runtime_error(
            "energy distinguisher: separation too small for the trial budget");

    Rng rng(seed);
    double acc = 0;
    for (int t = 0; t < trials; ++t) {
        Eigen::MatrixXcd U = sampler(rng);
        Eigen::VectorXcd v = U * psi;
        double e = (v.adjoint() * H * v)(0).real();
        acc += std::abs(e - rep.e_haar);
    }
    rep.mean_deviation = acc / trials;
    rep.verdict = rep.mean_deviation < rep.threshold ? EnsembleVerdict::HaarLike
                                                     : EnsembleVerdict::EnergyConserving;
    return rep;
}

Eigen::VectorXcd best_product_state(const Eigen::MatrixXcd& H, int qubits) {
    const int d = 1 << qubits;
    if (H.rows() != d) throw std::invalid_argument("dimension mismatch");
    using C = std::complex<double>;
    const double s = 1.0 / std::sqrt(2.0);
    const C frames[6][2] = {
        {C(1, 0), C(0, 0)}, {C(0, 0), C(1, 0)},          // Z basis
        {C(s, 0), C(s, 0)}, {C(s, 0), C(-s, 0)},         // X basis
        {C(s, 0), C(0, s)}, {C(s, 0), C(0, -s)},         // Y basis
    };
    double e_haar = H.trace().real() / d;
    double best = -1;
    Eigen::VectorXcd best_psi;
    std::vector<int> choice(qubits, 0);
    Eigen::VectorXcd psi(d);
    std::int64_t combos = 1;
    for (int q = 0; q < qubits; ++q) combos *= 6;
    for (std::int64_t c = 0; c < combos; ++c) {
        std::int64_t t = c;
        for (int q = 0; q < qubits; ++q) {
            choice[q] = int(t % 6);
            t /= 6;
        }
        for (int z = 0; z < d; ++z) {
            C a(1, 0);
            for (int q = 0; q < qubits; ++q) a *= frames[choice[q]][(z >> q) & 1];
            psi(z) = a;
        }
        double e = (psi.adjoint() * H * psi)(0).real();
        if (std::abs(e - e_haar) > best) {
            best = std::abs(e - e_haar);
            best_psi = psi;
        }
    }
    return best_psi;
}

}  // namespace eclab
