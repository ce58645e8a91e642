#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eclab {

/// Exact dyadic rational m * 2^e with m odd (or zero). All Hamiltonian
/// coefficients and digitized couplings are of this form, so sums and
/// products stay exact and convert to double without rounding.
struct Dyadic {
    std::int64_t mant = 0;
    std::int32_t exp = 0;

    Dyadic() = default;
    Dyadic(std::int64_t m, std::int32_t e) : mant(m), exp(e) { normalize(); }
    static Dyadic from_int(std::int64_t v) { return Dyadic(v, 0); }

    void normalize() {
        if (mant == 0) { exp = 0; return; }
        while ((mant & 1) == 0) { mant >>= 1; ++exp; }
    }

    bool is_zero() const { return mant == 0; }
    double to_double() const;

    Dyadic operator-() const { return Dyadic(-mant, exp); }
    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
    Dyadic operator*(const Dyadic& o) const;
    bool operator==(const Dyadic& o) const { return mant == o.mant && exp == o.exp; }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const;
    bool operator<=(const Dyadic& o) const { return *this < o || *this == o; }

    std::string str() const;
};

}  // namespace eclab
