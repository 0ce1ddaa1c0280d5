#include "llev/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace llev {

std::optional<BigInt> cappedPow(const BigInt& base, const BigInt& exp) {
    if (base == 0) return exp == 0 ? BigInt(1) : BigInt(0);
    if (base == 1 || exp == 0) return BigInt(1);
    // bits(base^exp) >= exp * (msb(base)) + 1
    std::size_t msb = boost::multiprecision::msb(base);
    if (exp > capBits) return std::nullopt;
    unsigned e = exp.convert_to<unsigned>();
    if (static_cast<std::size_t>(e) * msb > capBits) return std::nullopt;
    BigInt r = boost::multiprecision::pow(base, e);
    if (boost::multiprecision::msb(r) > capBits) return std::nullopt;
    return r;
}

std::optional<BigInt> tower(unsigned k, const BigInt& s) {
    std::optional<BigInt> v = s;
    for (unsigned i = 0; i < k; ++i) {
        v = cappedPow(2, *v);
        if (!v) return v;
    }
    return v;
}

namespace {
std::optional<BigInt> times(long a, const std::optional<BigInt>& b) {
    if (!b) return b;
    return BigInt(a) * *b;
}
}

std::optional<BigInt> elemBound(long l, long s) { return times(l + 1, tower(static_cast<unsigned>(2 * l), s)); }

std::optional<BigInt> polyBound(long l, long s, long r) {
    auto e = cappedPow(BigInt(r + 2), BigInt(l));
    if (!e) return std::nullopt;
    return times(l + 1, cappedPow(BigInt(s), *e));
}

std::optional<BigInt> sizeBoom(long s) { return tower(2, s); }

std::optional<BigInt> sizeBound(long s, long r) { return cappedPow(BigInt(s), BigInt(r + 2)); }

}
