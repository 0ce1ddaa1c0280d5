#pragma once

#include <optional>

#include "llev/metrics.hpp"

namespace llev {

// Values above 2^capBits are reported as nullopt (treated as +infinity).
constexpr unsigned capBits = 1u << 16;

std::optional<BigInt> cappedPow(const BigInt& base, const BigInt& exp);
// 2_k^s: k-fold iterated exponential of s
std::optional<BigInt> tower(unsigned k, const BigInt& s);

std::optional<BigInt> elemBound(long level, long size);
std::optional<BigInt> polyBound(long level, long size, long relDepth);
std::optional<BigInt> sizeBoom(long size);
std::optional<BigInt> sizeBound(long size, long relDepth);

inline bool within(const BigInt& x, const std::optional<BigInt>& bound) { return !bound || x <= *bound; }

}
