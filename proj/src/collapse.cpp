#include "eclab/collapse.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "eclab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eclab {

namespace {

void require_path_block(const SpectralBlock& b) {
    if (b.loop || b.cls == "vacuum")
        throw std::invalid_argument("collapse distribution needs a path-class block");
    if (b.length % 2 != 0)
        throw std::invalid_argument("collapse distribution needs an even-length path");
}

}  // namespace

std::vector<double> collapse_distribution(const SpectralBlock& block) {
    require_path_block(block);
    const int T = block.length;
    std::vector<double> dist(T, 0.0);
    for (int k = 0; k < T; ++k) {
        double w1 = block.eigvec_raw(k, 1);
        double c = block.norms[k];
        double src = w1 * w1 / c;
        for (int t = 1; t <= T; ++t) {
            double wt = block.eigvec_raw(k, t);
            dist[t - 1] += (wt * wt / c) * src;
        }
    }
    return dist;
}

double second_half_probability(const std::vector<double>& dist) {
    double p = 0;
    for (std::size_t t = dist.size() / 2; t < dist.size(); ++t) p += dist[t];
    return p;
}

double second_half_probability_exact(const SpectralBlock& block) {
    require_path_block(block);
    const int T = block.length;
    double first = 0;
    for (int k = 0; k < T; ++k) {
        double w1 = block.eigvec_raw(k, 1);
        double cT = ck(block.momenta[k], T);
        first += cT * (w1 * w1) / (block.norms[k] * block.norms[k]);
    }
    return 1.0 - first;
}

namespace {

struct Accum {
    std::vector<double> sum, sumsq;
    double ssum = 0, ssumsq = 0;  // per-sample second-half aggregate
    explicit Accum(int T) : sum(T, 0.0), sumsq(T, 0.0) {}
    void merge(const Accum& o) {
        for (std::size_t t = 0; t < sum.size(); ++t) {
            sum[t] += o.sum[t];
            sumsq[t] += o.sumsq[t];
        }
        ssum += o.ssum;
        ssumsq += o.ssumsq;
    }
};

void run_samples(const SpectralBlock& block, const std::vector<double>& phi, std::int64_t lo,
                 std::int64_t hi, std::int64_t step, std::uint64_t seed, Accum& acc) {
    const int T = block.length;
    std::vector<std::complex<double>> amp(T), phase(T);
    for (std::int64_t s = lo; s < hi; s += step) {
        Rng rng(derive_seed(seed, std::uint64_t(s)));
        for (int k = 0; k < T; ++k)
            phase[k] = std::polar(1.0, 2 * std::numbers::pi * uniform01(rng));
        for (int t = 0; t < T; ++t) amp[t] = 0;
        for (int k = 0; k < T; ++k) {
            std::complex<double> w = phase[k] * phi[std::size_t(k) * T + 0];
            const double* col = &phi[std::size_t(k) * T];
            for (int t = 0; t < T; ++t) amp[t] += w * col[t];
        }
        double sh = 0;
        for (int t = 0; t < T; ++t) {
            double p = std::norm(amp[t]);
            acc.sum[t] += p;
            acc.sumsq[t] += p * p;
            if (t >= T / 2) sh += p;
        }
        acc.ssum += sh;
        acc.ssumsq += sh * sh;
    }
}

MonteCarloCollapse mc_collapse(const SpectralBlock& block, std::int64_t samples,
                               std::uint64_t seed, bool parallel) {
    require_path_block(block);
    const int T = block.length;
    std::vector<double> phi(std::size_t(T) * T);
    for (int k = 0; k < T; ++k)
        for (int t = 1; t <= T; ++t) phi[std::size_t(k) * T + (t - 1)] = block.eigvec(k, t);

    Accum total(T);
#ifdef _OPENMP
    if (parallel) {
        // fixed chunks merged in order: results do not depend on the
        // schedule or the thread count
        const std::int64_t chunk = 1024;
        const std::int64_t nchunks = (samples + chunk - 1) / chunk;
        std::vector<Accum> partial(nchunks, Accum(T));
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < nchunks; ++c)
            run_samples(block, phi, c * chunk, std::min(samples, (c + 1) * chunk), 1, seed,
                        partial[c]);
        for (std::int64_t c = 0; c < nchunks; ++c) total.merge(partial[c]);
    } else {
        run_samples(block, phi, 0, samples, 1, seed, total);
    }
#else
    (void)parallel;
    run_samples(block, phi, 0, samples, 1, seed, total);
#endif

    MonteCarloCollapse out;
    out.samples = samples;
    out.mean.resize(T);
    out.stderr_.resize(T);
    for (int t = 0; t < T; ++t) {
        double m = total.sum[t] / double(samples);
        double var = total.sumsq[t] / double(samples) - m * m;
        out.mean[t] = m;
        out.stderr_[t] = std::sqrt(std::max(var, 0.0) / double(samples));
    }
    double m2 = total.ssum / double(samples);
    double v2 = total.ssumsq / double(samples) - m2 * m2;
    out.second_half_mean = m2;
    out.second_half_stderr = std::sqrt(std::max(v2, 0.0) / double(samples));
    return out;
}

}  // namespace

MonteCarloCollapse monte_carlo_collapse(const SpectralBlock& block, std::int64_t samples,
                                        std::uint64_t seed, bool parallel) {
    return mc_collapse(block, samples, seed, parallel);
}

MonteCarloCollapse monte_carlo_collapse_serial(const SpectralBlock& block, std::int64_t samples,
                                               std::uint64_t seed) {
    return mc_collapse(block, samples, seed, false);
}

}  // namespace eclab
