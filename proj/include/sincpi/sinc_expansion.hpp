#pragma once

#include <cstdint>
#include <stdexcept>

#include "sincpi/bigreal.hpp"
#include "sincpi/elementary.hpp"
#include "sincpi/oracles.hpp"
#include "sincpi/precision.hpp"

namespace sincpi {

/// The x-range on which the incomplete cosine expansion of order L tracks
/// sinc: |x| <= half_width, with the expansion repeating with the stated
/// period.
struct ValidityWindow {
    BigReal half_width;  // pi * L
    BigReal period;      // 4 * pi * L
};

/// sinc(x) = sin(x)/x, with the removable singularity filled by 1.
inline BigReal sinc(const BigReal& x, const PrecisionContext& ctx) {
    const int w = ctx.work();
    if (x.is_zero()) return BigReal(pow10(w), w);
    PrecisionContext inner{ctx.out_digits, ctx.guard_digits + 5};
    return div_at(sin(x, inner), x, w);
}

/// Truncated Vieta product: prod_{m=1..M} cos(x / 2^m).
inline BigReal vieta_product(std::int64_t M, const BigReal& x, const PrecisionContext& ctx) {
    if (M < 1) throw std::domain_error("vieta_product: M must be >= 1");
    const int w = ctx.work();
    const int ext = w + 10;
    PrecisionContext inner{ext, 0};
    BigReal prod(pow10(ext), ext);
    for (std::int64_t m = 1; m <= M; ++m) {
        BigReal arg = div_at(x, BigReal(BigInt(1) << m, 0), ext);
        prod = BigReal::mul(prod, cos(arg, inner), ext);
    }
    return prod.rescale(w);
}

/// Cosine-sum form of the truncated Vieta product:
///   (1/2^(M-1)) * sum_{m=1..2^(M-1)} cos(((2m-1)/2^M) x).
inline BigReal product_to_sum_rhs(std::int64_t M, const BigReal& x, const PrecisionContext& ctx) {
    if (M < 1) throw std::domain_error("product_to_sum_rhs: M must be >= 1");
    const int w = ctx.work();
    const int ext = w + 10;
    PrecisionContext inner{ext, 0};
    const std::int64_t terms = std::int64_t(1) << (M - 1);
    const BigReal denom(BigInt(1) << M, 0);
    BigReal sum(BigInt(0), ext);
    for (std::int64_t m = 1; m <= terms; ++m) {
        BigReal arg = div_at(BigReal((2 * m - 1) * x.scaled(), x.scale()), denom, ext);
        sum = sum + cos(arg, inner);
    }
    return div_at(sum, BigReal(terms), w);
}

/// Incomplete cosine expansion of sinc:
///   (1/L) * sum_{l=1..L} cos(((l - 1/2)/L) x).
/// The validity window is advisory; out-of-window x is evaluated as-is
/// (callers integrating against a damping kernel rely on that).
inline BigReal incomplete_cosine(std::int64_t L, const BigReal& x, const PrecisionContext& ctx) {
    if (L < 1) throw std::domain_error("incomplete_cosine: L must be >= 1");
    const int w = ctx.work();
    const int ext = w + 10;
    PrecisionContext inner{ext, 0};
    const BigReal two_L(2 * L);
    BigReal sum(BigInt(0), ext);
    for (std::int64_t l = 1; l <= L; ++l) {
        BigReal arg = div_at(BigReal((2 * l - 1) * x.scaled(), x.scale()), two_L, ext);
        sum = sum + cos(arg, inner);
    }
    return div_at(sum, BigReal(L), w);
}

/// Window half-width pi*L and period 4*pi*L at working precision.
inline ValidityWindow validity_window(std::int64_t L, const PrecisionContext& ctx) {
    if (L < 1) throw std::domain_error("validity_window: L must be >= 1");
    const int w = ctx.work();
    BigReal pi = pi_value(w + 5);
    BigReal half = BigReal(pi.scaled() * L, pi.scale()).rescale(w);
    BigReal period(half.scaled() * 4, half.scale());  // exactly 4x the half-width
    return ValidityWindow{half, period};
}

} // namespace sincpi
