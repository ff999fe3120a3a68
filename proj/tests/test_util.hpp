#pragma once

#include <random>

#include "sincpi/bigreal.hpp"

namespace sincpi::test {

constexpr std::uint64_t kSeed = 20160228;

/// 10^-digits as a BigReal.
inline BigReal tol(int digits) { return BigReal(BigInt(1), digits); }

/// Random decimal in [-bound, bound] with `decimals` fractional digits.
inline BigReal random_decimal(std::mt19937_64& rng, long long bound, int decimals) {
    long long scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    std::uniform_int_distribution<long long> dist(-bound * scale, bound * scale);
    return BigReal(BigInt(dist(rng)), decimals);
}

} // namespace sincpi::test
