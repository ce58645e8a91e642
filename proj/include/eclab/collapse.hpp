#pragma once

#include <cstdint>
#include <vector>

#include "eclab/spectral.hpp"

namespace eclab {

/// Ensemble-averaged measurement distribution over chain positions when
/// the source state evolves under a random-phase unitary of the block:
/// P(t) = sum_k |<t|k>|^2 |<1|k>|^2. Requires a path-class block of even
/// length.
std::vector<double> collapse_distribution(const SpectralBlock& block);

double second_half_probability(const std::vector<double>& dist);

/// Exact second-half probability straight from the norm ratios
/// 1 - sum_t C_{k_t}(T) |<1|k_t>|^2 / C_{k_t}(2T); equal to summing
/// collapse_distribution over the second half, but O(T).
double second_half_probability_exact(const SpectralBlock& block);

struct MonteCarloCollapse {
    std::vector<double> mean;    // averaged |amplitude|^2 per position
    std::vector<double> stderr_; // Monte-Carlo standard error per position
    double second_half_mean = 0;
    double second_half_stderr = 0;
    std::int64_t samples = 0;
};

/// Samples explicit random phases and averages the resulting measurement
/// distribution; the independent check of collapse_distribution.
MonteCarloCollapse monte_carlo_collapse(const SpectralBlock& block, std::int64_t samples,
                                        std::uint64_t seed, bool parallel = true);

/// Serial reference used to validate the parallel kernel (identical
/// per-sample seeding, identical results).
MonteCarloCollapse monte_carlo_collapse_serial(const SpectralBlock& block, std::int64_t samples,
                                               std::uint64_t seed);

}  // namespace eclab
