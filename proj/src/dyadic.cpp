#include "eclab/dyadic.hpp"

#include <cmath>

namespace eclab {

double Dyadic::to_double() const {
    return std::ldexp(static_cast<double>(mant), exp);
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    if (mant == 0) return o;
    if (o.mant == 0) return *this;
    std::int32_t e = std::min(exp, o.exp);
    std::int32_t sa = exp - e, sb = o.exp - e;
    if (sa > 62 || sb > 62) throw std::overflow_error("dyadic add: exponent spread too large");
    return Dyadic((mant << sa) + (o.mant << sb), e);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
    return Dyadic(mant * o.mant, exp + o.exp);
}

bool Dyadic::operator<(const Dyadic& o) const {
    Dyadic d = o - *this;
    return d.mant > 0;
}

std::string Dyadic::str() const {
    if (exp >= 0) return std::to_string(mant << exp);
    return std::to_string(mant) + "/2^" + std::to_string(-exp);
}

}  // namespace eclab
