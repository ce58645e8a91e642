#include "eclab/rng.hpp"

namespace eclab {

// splitmix64 finalizer; standard construction for seed derivation.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double gaussian(Rng& rng) {
    return std::normal_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace eclab
