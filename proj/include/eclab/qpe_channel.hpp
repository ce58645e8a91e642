#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "eclab/cpru.hpp"
#include "eclab/rng.hpp"

namespace eclab {

using Cplx = std::complex<double>;

struct QpeRegisters {
    int n = 0, m1 = 0, m2 = 0, m3 = 0;
    int ancilla() const { return m1 + m2 + m3; }
    int total() const { return n + ancilla(); }
};

/// Phase-estimation channel for a Hamiltonian diagonal in the product
/// basis: U = O_qpe^dag O_S^dag O_f O_S O_qpe with O_qpe the phase
/// estimation of e^{2 pi i H~}, O_S the fine-register offset and O_f a
/// phase applied to the coarse bits.
class QpeChannel {
  public:
    /// lambda[z] in [0,1): normalized eigenphases, one per basis state.
    QpeChannel(std::vector<double> lambda, QpeRegisters regs);

    /// Normalizes H to eigenphases in [0,1) with a power-of-two scale, so
    /// the phases stay exact dyadics. Throws when the register budget is
    /// exceeded or the spectrum is flat.
    static QpeChannel for_hamiltonian(const SampledCommutingHamiltonian& h, QpeRegisters regs,
                                      int qubit_cap = 24);

    const QpeRegisters& regs() const { return regs_; }
    const std::vector<double>& lambda() const { return lambda_; }

    /// Full-state pipeline; state has 2^(n+m) amplitudes, z-major.
    void apply(std::vector<Cplx>& state, const std::vector<Cplx>& coarse_phase,
               std::uint64_t S) const;

    /// Phase table for the keyed pseudorandom bit function, entries
    /// (-1)^{g(x)}.
    std::vector<Cplx> binary_phase_table(std::uint64_t key) const;
    /// Uniformly random phases e^{i f(x)} per coarse value.
    std::vector<Cplx> random_phase_table(Rng& rng) const;

    /// Coarse value of the shifted phase estimate for eigenstate z.
    std::uint64_t coarse_value(int z, std::uint64_t S) const;
    /// True iff all 2^n coarse values are distinct for this offset.
    bool coarse_injective(std::uint64_t S) const;

    /// Ancilla register state O_qpe acting on |z>|0>, 2^m amplitudes.
    std::vector<Cplx> qpe_ancilla(int z) const;

    /// Amplitude <z,0| U |z,0> for eigenstate input; |.| is the ancilla
    /// return fidelity, arg(.) the acquired phase.
    Cplx eigenstate_return_amplitude(int z, const std::vector<Cplx>& coarse_phase,
                                     std::uint64_t S) const;

    std::uint64_t offset_space() const { return std::uint64_t(1) << (regs_.m2 + regs_.m3); }

  private:
    std::vector<double> lambda_;
    QpeRegisters regs_;
    std::uint64_t m_dim_ = 0;  // 2^(m1+m2+m3)

    void apply_qpe(Cplx* anc, int z, bool inverse) const;
};

struct BoundaryStats {
    int trials = 0;
    double norm_threshold = 0;   // 2^{-m3/2}
    double bound = 0;            // 2^{-(m2-2)}
    std::vector<double> hit_rate;  // per eigenstate
    double max_hit_rate = 0;
};

/// Samples random offsets and measures the weight near coarse-bin
/// boundaries (band half-width 2^{-(m1+m2)}) of O_S O_qpe |z>|0>.
BoundaryStats offset_boundary_test(const QpeChannel& ch, int trials, std::uint64_t seed);

using StateChannel = std::function<void(std::vector<Cplx>&, Rng&)>;

struct AdaptiveResult {
    double trace_distance = 0;
    int trials = 0;
};

/// Monte-Carlo estimate of the trace distance between the system-reduced
/// ensemble-averaged outputs of two adversary pipelines
/// A_{t+1} (channel A_t) ... (channel A_1) |0>.
AdaptiveResult adaptive_distinguish(const StateChannel& channel_a, int ancilla_a,
                                    const StateChannel& channel_b, int ancilla_b,
                                    int system_qubits,
                                    const std::vector<Eigen::MatrixXcd>& interleavers,
                                    int trials, std::uint64_t seed);

/// Applies a system unitary to a z-major state with 2^anc ancilla columns.
void apply_system_unitary(std::vector<Cplx>& state, const Eigen::MatrixXcd& U, int anc_qubits);

Eigen::MatrixXcd reduced_system_density(const std::vector<Cplx>& state, int system_qubits,
                                        int anc_qubits);

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace eclab
