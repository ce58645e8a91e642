#pragma once

#include <cstdint>
#include <random>

namespace eclab {

/// Derives independent child seeds from a master seed, so parallel trials
/// stay reproducible regardless of thread count.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

double uniform01(Rng& rng);
double gaussian(Rng& rng);

}  // namespace eclab
