#pragma once

#include <cmath>
#include <stdexcept>

#include "sincpi/bigreal.hpp"
#include "sincpi/elementary.hpp"
#include "sincpi/precision.hpp"

namespace sincpi {

/// Reference pi, digit-prefix semantics: the first `digits` significant
/// digits of pi (the leading 3 counts as a digit, matching the digit
/// counting convention used everywhere in this project). Computed by
/// Machin's formula and cross-checked against pi/4 = atan(1/2) + atan(1/3).
inline BigReal reference_pi(int digits) {
    if (digits < 1) throw std::domain_error("reference_pi: digits must be >= 1");
    BigReal pi = detail::pi_at(digits + 10);
    return pi.truncate(digits - 1);
}

/// pi rounded half-away at an explicit number of decimal places; the
/// variant used as an operand inside other computations.
inline BigReal pi_value(int decimal_places) {
    return detail::pi_at(decimal_places);
}

/// Reference erf via the Maclaurin series
///   erf(x) = (2/sqrt(pi)) * sum (-1)^n x^(2n+1) / (n! (2n+1)).
/// Alternating-series truncation; extra working digits absorb the
/// cancellation, which peaks near x^2 * log10(e) digits.
inline BigReal reference_erf(const BigReal& x, const PrecisionContext& ctx) {
    BigReal eight(8);
    if (x.abs() > eight) throw std::domain_error("reference_erf: |x| > 8 out of domain");
    const int w = ctx.work();
    if (x.is_zero()) return BigReal(BigInt(0), w);
    double ax = x.approx();
    const int cancel = static_cast<int>(ax * ax * 0.4342944819) + 2;
    const int ext = w + cancel + 10;

    BigReal x2 = BigReal::mul(x, x, ext);
    BigReal u = x.rescale(ext);  // x^(2n+1)/n!
    BigReal sum = div_at(u, BigReal(1), ext);
    for (std::int64_t n = 1;; ++n) {
        u = BigReal::mul(u, x2, ext);
        u = div_at(u, BigReal(n), ext);
        if (boost::multiprecision::abs(u.scaled()) <= 1) break;
        BigReal term = div_at(u, BigReal(2 * n + 1), ext);
        if (n % 2 == 0) sum = sum + term; else sum = sum - term;
    }
    BigReal sqrt_pi = sqrt_at(detail::pi_at(ext), ext);
    BigReal factor = div_at(BigReal(2), sqrt_pi, ext);
    return BigReal::mul(sum, factor, ext).rescale(w);
}

} // namespace sincpi
