#pragma once

#include <cmath>
#include <stdexcept>

namespace sincpi {

/// Working-precision policy: every operation rounds its result to
/// work_digits decimal places after the point; the final answer is
/// reported at out_digits.
struct PrecisionContext {
    int out_digits  = 40;
    int guard_digits = 10;

    int work() const { return out_digits + guard_digits; }

    /// Guard policy: 10 + ceil(log10(scale_hint)) + ceil(log10(term_hint)),
    /// never below 10. scale_hint is the dominant parameter magnitude
    /// (e.g. the expansion order L), term_hint the number of summation
    /// terms actually evaluated.
    static PrecisionContext make(int out_digits,
                                 unsigned long long scale_hint = 1,
                                 unsigned long long term_hint = 1) {
        if (out_digits < 1)
            throw std::domain_error("PrecisionContext: out_digits must be >= 1");
        auto ceil_log10 = [](unsigned long long v) {
            int d = 0;
            unsigned long long p = 1;
            while (p < v) {
                p *= 10;
                ++d;
                if (d > 19) break;
            }
            return d;
        };
        PrecisionContext ctx;
        ctx.out_digits = out_digits;
        ctx.guard_digits = 10 + ceil_log10(scale_hint) + ceil_log10(term_hint);
        if (ctx.guard_digits < 10) ctx.guard_digits = 10;
        return ctx;
    }
};

} // namespace sincpi
