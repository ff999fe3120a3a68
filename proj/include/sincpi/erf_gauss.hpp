#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sincpi/bigreal.hpp"
#include "sincpi/elementary.hpp"
#include "sincpi/oracles.hpp"
#include "sincpi/precision.hpp"

namespace sincpi {

/// One row of the erf approximation profile (figure data).
struct ErfProfileRecord {
    BigReal x;
    BigReal erf_ref;
    BigReal erf_approx;
    BigReal abs_error;
    bool criterion_satisfied = false;
};

/// Gaussian expansion of erf:
///   erf(x) ~ (2x / (sqrt(pi) L)) * sum_{l=1..L} exp(-(l-1/2)^2 x^2 / L^2).
inline BigReal erf_gauss_series(std::int64_t L, const BigReal& x, const PrecisionContext& ctx) {
    if (L < 1) throw std::domain_error("erf_gauss_series: L must be >= 1");
    const int w = ctx.work();
    if (x.is_zero()) return BigReal(BigInt(0), w);
    const int ext = w + 10;
    PrecisionContext inner{ext, 0};
    BigReal ax = x.abs();
    BigReal x2 = BigReal::mul(ax, ax, ext);
    const BigReal L2(BigInt(L) * L, 0);
    BigReal sum(BigInt(0), ext);
    for (std::int64_t l = 1; l <= L; ++l) {
        // (l - 1/2)^2 = (2l-1)^2 / 4
        BigInt num = BigInt(2 * l - 1) * (2 * l - 1);
        BigReal arg = div_at(BigReal(x2.scaled() * num, x2.scale()),
                             BigReal(BigInt(4) * L * L, 0), ext);
        sum = sum + exp_neg(arg, inner);
    }
    BigReal sqrt_pi = sqrt_at(pi_value(ext), ext);
    BigReal prefactor = div_at(BigReal(x.scaled() * 2, x.scale()),
                               BigReal(sqrt_pi.scaled() * L, sqrt_pi.scale()), ext);
    return BigReal::mul(prefactor, sum, ext).rescale(w);
}

/// Validity criterion pi*L >= 12x for the expansion's periodicity to be
/// damped away by the Gaussian kernel.
inline bool criterion_ok(std::int64_t L, const BigReal& x, const PrecisionContext& ctx) {
    const int w = ctx.work();
    BigReal pi = pi_value(w + 5);
    BigReal lhs(pi.scaled() * L, pi.scale());
    BigReal rhs(x.scaled() * 12, x.scale());
    return lhs >= rhs;
}

/// Smallest L satisfying the criterion over |x| <= x_max: ceil(12 x_max / pi).
inline std::int64_t min_L_for_range(const BigReal& x_max, const PrecisionContext& ctx) {
    if (x_max.signum() <= 0) throw std::domain_error("min_L_for_range: x_max must be > 0");
    const int w = ctx.work();
    BigReal pi = pi_value(w + 5);
    // ceil(12 x_max / pi) in exact integer arithmetic
    BigInt num = x_max.scaled() * 12 * pow10(pi.scale());
    BigInt den = pi.scaled() * pow10(x_max.scale());
    BigInt q = num / den;
    if (q * den < num) ++q;
    if (q < 1) q = 1;
    return q.convert_to<std::int64_t>();
}

/// Full-range piecewise extension: the Gaussian series on [-6, 6],
/// sign(x) * 1 outside (erf is within 10^-15 of +-1 there).
inline BigReal erf_piecewise(std::int64_t L, const BigReal& x, const PrecisionContext& ctx) {
    if (L < 1) throw std::domain_error("erf_piecewise: L must be >= 1");
    const int w = ctx.work();
    BigReal six(6);
    if (x.abs() <= six) return erf_gauss_series(L, x, ctx);
    BigInt one = pow10(w);
    return BigReal(x.signum() < 0 ? -one : one, w);
}

/// Uniform grid of steps+1 profile records over [x_min, x_max].
inline std::vector<ErfProfileRecord> erf_profile(std::int64_t L, const BigReal& x_min,
                                                 const BigReal& x_max, std::int64_t steps,
                                                 const PrecisionContext& ctx) {
    if (steps < 2) throw std::domain_error("erf_profile: steps must be >= 2");
    if (!(x_min < x_max)) throw std::domain_error("erf_profile: x_min must be < x_max");
    const int w = ctx.work();
    std::vector<ErfProfileRecord> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    BigReal span = x_max - x_min;
    for (std::int64_t i = 0; i <= steps; ++i) {
        BigReal x = x_min + div_at(BigReal(span.scaled() * i, span.scale()),
                                   BigReal(steps), w);
        ErfProfileRecord rec;
        rec.x = x.rescale(w);
        BigReal ax = x.abs();
        rec.erf_ref = (ax <= BigReal(8)) ? reference_erf(x, ctx)
                                         : BigReal((x.signum() < 0 ? -1 : 1) * pow10(w), w);
        rec.erf_approx = erf_gauss_series(L, x, ctx);
        rec.abs_error = (rec.erf_ref - rec.erf_approx).abs().rescale(w);
        rec.criterion_satisfied = criterion_ok(L, x, ctx);
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace sincpi
