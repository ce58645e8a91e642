#include "eclab/qpe_channel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eclab/sha256.hpp"

namespace eclab {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

/// In-place radix-2 FFT. sign = -1: X[y] = sum_x v[x] e^{-2pi i xy/N}.
void fft(Cplx* v, std::size_t n, int sign) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * kTwoPi / double(len);
        Cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                Cplx a = v[i + j], b = v[i + j + len / 2] * w;
                v[i + j] = a + b;
                v[i + j + len / 2] = a - b;
                w *= wlen;
            }
        }
    }
}

/// Normalized Walsh-Hadamard transform (H tensor m).
void wht(Cplx* v, std::size_t n) {
    for (std::size_t len = 1; len < n; len <<= 1)
        for (std::size_t i = 0; i < n; i += 2 * len)
            for (std::size_t j = i; j < i + len; ++j) {
                Cplx a = v[j], b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
    double s = 1.0 / std::sqrt(double(n));
    for (std::size_t i = 0; i < n; ++i) v[i] *= s;
}

void rotate_by(std::vector<Cplx>& tmp, Cplx* v, std::size_t n, std::uint64_t shift) {
    // new[(x + shift) mod n] = old[x]
    tmp.resize(n);
    for (std::size_t x = 0; x < n; ++x) tmp[(x + shift) & (n - 1)] = v[x];
    std::copy(tmp.begin(), tmp.end(), v);
}

}  // namespace

QpeChannel::QpeChannel(std::vector<double> lambda, QpeRegisters regs)
    : lambda_(std::move(lambda)), regs_(regs) {
    if (int(lambda_.size()) != (1 << regs_.n))
        throw std::invalid_argument("lambda table must have 2^n entries");
    for (double l : lambda_)
        if (l < 0 || l >= 1) throw std::invalid_argument("eigenphases must lie in [0,1)");
    m_dim_ = std::uint64_t(1) << regs_.ancilla();
}

QpeChannel QpeChannel::for_hamiltonian(const SampledCommutingHamiltonian& h, QpeRegisters regs,
                                       int qubit_cap) {
    if (regs.total() > qubit_cap)
        throw std::length_error("register budget exceeded: " + std::to_string(regs.total()) +
                                " qubits");
    if (regs.n != h.spec.qubits) throw std::invalid_argument("system size mismatch");
    std::vector<double> spec = h.spectrum();
    double lo = *std::min_element(spec.begin(), spec.end());
    double hi = *std::max_element(spec.begin(), spec.end());
    if (hi - lo <= 0) throw std::invalid_argument("flat spectrum cannot be normalized to [0,1)");
    double scale = std::ldexp(1.0, int(std::ceil(std::log2(hi - lo))) + 1);
    std::vector<double> lam(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) lam[i] = (spec[i] - lo) / scale;
    return QpeChannel(std::move(lam), regs);
}

void QpeChannel::apply_qpe(Cplx* anc, int z, bool inverse) const {
    const std::size_t M = m_dim_;
    const double lam = lambda_[z];
    if (!inverse) {
        wht(anc, M);
        for (std::size_t x = 0; x < M; ++x) {
            double ang = kTwoPi * lam * double(x);
            anc[x] *= Cplx(std::cos(ang), std::sin(ang));
        }
        fft(anc, M, -1);
        double s = 1.0 / std::sqrt(double(M));
        for (std::size_t x = 0; x < M; ++x) anc[x] *= s;
    } else {
        fft(anc, M, +1);
        double s = 1.0 / std::sqrt(double(M));
        for (std::size_t x = 0; x < M; ++x) anc[x] *= s;
        for (std::size_t x = 0; x < M; ++x) {
            double ang = -kTwoPi * lam * double(x);
            anc[x] *= Cplx(std::cos(ang), std::sin(ang));
        }
        wht(anc, M);
    }
}

void QpeChannel::apply(std::vector<Cplx>& state, const std::vector<Cplx>& coarse_phase,
                       std::uint64_t S) const {
    const std::size_t M = m_dim_;
    const int nz = 1 << regs_.n;
    if (state.size() != M * std::size_t(nz))
        throw std::invalid_argument("state size mismatch");
    if (int(coarse_phase.size()) != (1 << regs_.m1))
        throw std::invalid_argument("coarse phase table size mismatch");
    if (S >= offset_space()) throw std::invalid_argument("offset outside fine registers");
    const int fine_bits = regs_.m2 + regs_.m3;
    std::vector<Cplx> tmp;
    for (int z = 0; z < nz; ++z) {
        Cplx* anc = state.data() + std::size_t(z) * M;
        apply_qpe(anc, z, false);
        rotate_by(tmp, anc, M, S);
        for (std::size_t x = 0; x < M; ++x) anc[x] *= coarse_phase[x >> fine_bits];
        rotate_by(tmp, anc, M, (M - S) & (M - 1));
        apply_qpe(anc, z, true);
    }
}

std::vector<Cplx> QpeChannel::binary_phase_table(std::uint64_t key) const {
    std::vector<Cplx> t(std::size_t(1) << regs_.m1);
    for (std::size_t x = 0; x < t.size(); ++x)
        t[x] = keyed_hash_bit(key, x) ? Cplx(-1, 0) : Cplx(1, 0);
    return t;
}

std::vector<Cplx> QpeChannel::random_phase_table(Rng& rng) const {
    std::vector<Cplx> t(std::size_t(1) << regs_.m1);
    for (auto& v : t) v = std::polar(1.0, kTwoPi * uniform01(rng));
    return t;
}

std::uint64_t QpeChannel::coarse_value(int z, std::uint64_t S) const {
    const int fine_bits = regs_.m2 + regs_.m3;
    double pos = lambda_[z] * double(m_dim_) + double(S);
    std::uint64_t idx = std::uint64_t(std::floor(pos / double(std::uint64_t(1) << fine_bits)));
    return idx & ((std::uint64_t(1) << regs_.m1) - 1);
}

bool QpeChannel::coarse_injective(std::uint64_t S) const {
    std::vector<std::uint64_t> vals;
    for (int z = 0; z < (1 << regs_.n); ++z) vals.push_back(coarse_value(z, S));
    std::sort(vals.begin(), vals.end());
    return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
}

std::vector<Cplx> QpeChannel::qpe_ancilla(int z) const {
    std::vector<Cplx> anc(m_dim_, Cplx(0, 0));
    anc[0] = 1.0;
    apply_qpe(anc.data(), z, false);
    return anc;
}

Cplx QpeChannel::eigenstate_return_amplitude(int z, const std::vector<Cplx>& coarse_phase,
                                             std::uint64_t S) const {
    const std::size_t M = m_dim_;
    const int fine_bits = regs_.m2 + regs_.m3;
    std::vector<Cplx> anc = qpe_ancilla(z);
    std::vector<Cplx> tmp;
    rotate_by(tmp, anc.data(), M, S);
    for (std::size_t x = 0; x < M; ++x) anc[x] *= coarse_phase[x >> fine_bits];
    rotate_by(tmp, anc.data(), M, (M - S) & (M - 1));
    apply_qpe(anc.data(), z, true);
    return anc[0];
}

BoundaryStats offset_boundary_test(const QpeChannel& ch, int trials, std::uint64_t seed) {
    const auto& r = ch.regs();
    const std::uint64_t M = std::uint64_t(1) << r.ancilla();
    const std::uint64_t band = std::uint64_t(1) << r.m3;  // half-width 2^{-(m1+m2)} in index units
    const std::uint64_t coarse_step = std::uint64_t(1) << (r.m2 + r.m3);

    BoundaryStats st;
    st.trials = trials;
    st.norm_threshold = std::ldexp(1.0, 0) / std::pow(2.0, r.m3 / 2.0);
    st.bound = std::ldexp(1.0, -(r.m2 - 2));
    st.hit_rate.assign(std::size_t(1) << r.n, 0.0);

    Rng rng(seed);
    std::vector<std::uint64_t> offsets(trials);
    for (auto& S : offsets)
        S = std::uniform_int_distribution<std::uint64_t>(0, ch.offset_space() - 1)(rng);

    for (int z = 0; z < (1 << r.n); ++z) {
        std::vector<Cplx> u = ch.qpe_ancilla(z);
        std::vector<double> prefix(M + 1, 0.0);
        for (std::uint64_t x = 0; x < M; ++x) prefix[x + 1] = prefix[x] + std::norm(u[x]);
        auto range_sum = [&](std::uint64_t a, std::uint64_t b) {  // [a, b) mod M
            a &= (M - 1);
            b &= (M - 1);
            if (a <= b) return prefix[b] - prefix[a];
            return (prefix[M] - prefix[a]) + prefix[b];
        };
        int hits = 0;
        for (std::uint64_t S : offsets) {
            // Weight of indices y with wrapped |(y) - (B - S)| < band for
            // some coarse boundary B.
            double w = 0;
            for (std::uint64_t g = 0; g < (std::uint64_t(1) << r.m1); ++g) {
                std::uint64_t center = (g * coarse_step + M - S) & (M - 1);
                w += range_sum(center + M - band + 1, center + band);
            }
            if (std::sqrt(w) > st.norm_threshold) ++hits;
        }
        st.hit_rate[z] = double(hits) / trials;
        st.max_hit_rate = std::max(st.max_hit_rate, st.hit_rate[z]);
    }
    return st;
}

void apply_system_unitary(std::vector<Cplx>& state, const Eigen::MatrixXcd& U, int anc_qubits) {
    const int nz = int(U.rows());
    const std::size_t M = std::size_t(1) << anc_qubits;
    Eigen::VectorXcd v(nz), w(nz);
    for (std::size_t x = 0; x < M; ++x) {
        for (int z = 0; z < nz; ++z) v(z) = state[std::size_t(z) * M + x];
        w = U * v;
        for (int z = 0; z < nz; ++z) state[std::size_t(z) * M + x] = w(z);
    }
}

Eigen::MatrixXcd reduced_system_density(const std::vector<Cplx>& state, int system_qubits,
                                        int anc_qubits) {
    const int nz = 1 << system_qubits;
    const std::size_t M = std::size_t(1) << anc_qubits;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(nz, nz);
    for (int a = 0; a < nz; ++a)
        for (int b = 0; b <= a; ++b) {
            Cplx acc(0, 0);
            const Cplx* va = state.data() + std::size_t(a) * M;
            const Cplx* vb = state.data() + std::size_t(b) * M;
            for (std::size_t x = 0; x < M; ++x) acc += va[x] * std::conj(vb[x]);
            rho(a, b) = acc;
            rho(b, a) = std::conj(acc);
        }
    return rho;
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd d = a - b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

AdaptiveResult adaptive_distinguish(const StateChannel& channel_a, int ancilla_a,
                                    const StateChannel& channel_b, int ancilla_b,
                                    int system_qubits,
                                    const std::vector<Eigen::MatrixXcd>& interleavers,
                                    int trials, std::uint64_t seed) {
    const int nz = 1 << system_qubits;
    for (const auto& A : interleavers)
        if (A.rows() != nz || A.cols() != nz)
            throw std::invalid_argument("interleaver register mismatch");
    if (interleavers.size() < 2)
        throw std::invalid_argument("need at least A_1 and A_{t+1}");
    const int t = int(interleavers.size()) - 1;

    auto run_arm = [&](const StateChannel& ch, int anc, std::uint64_t arm_seed) {
        // one slot per trial, summed in a fixed order afterwards, so the
        // result does not depend on the thread count
        std::vector<Eigen::MatrixXcd> slot(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int trial = 0; trial < trials; ++trial) {
            Rng rng(derive_seed(arm_seed, trial));
            std::vector<Cplx> state(std::size_t(nz) << anc, Cplx(0, 0));
            state[0] = 1.0;
            for (int i = 0; i < t; ++i) {
                apply_system_unitary(state, interleavers[i], anc);
                ch(state, rng);
            }
            apply_system_unitary(state, interleavers[t], anc);
            slot[trial] = reduced_system_density(state, system_qubits, anc);
        }
        Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(nz, nz);
        for (int trial = 0; trial < trials; ++trial) avg += slot[trial];
        return Eigen::MatrixXcd(avg / double(trials));
    };

    AdaptiveResult res;
    res.trials = trials;
    Eigen::MatrixXcd rho_a = run_arm(channel_a, ancilla_a, derive_seed(seed, 0x61));
    Eigen::MatrixXcd rho_b = run_arm(channel_b, ancilla_b, derive_seed(seed, 0x62));
    res.trace_distance = trace_distance(rho_a, rho_b);
    return res;
}

}  // namespace eclab
