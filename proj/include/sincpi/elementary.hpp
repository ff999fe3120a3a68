#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>

#include "sincpi/bigreal.hpp"
#include "sincpi/precision.hpp"

namespace sincpi {

/// Quotient rounded half-away-from-zero at an explicit scale; error <= 0.5 ulp.
inline BigReal div_at(const BigReal& a, const BigReal& b, int scale) {
    if (b.is_zero()) throw std::domain_error("div: division by zero");
    int e = scale + b.scale() - a.scale();
    BigInt num = a.scaled();
    BigInt den = b.scaled();
    if (e >= 0) num *= pow10(e); else den *= pow10(-e);
    const bool neg = (num < 0) != (den < 0);
    BigInt n = boost::multiprecision::abs(num);
    BigInt d = boost::multiprecision::abs(den);
    BigInt q = (2 * n + d) / (2 * d);
    if (neg) q = -q;
    return BigReal(std::move(q), scale);
}

inline BigReal div(const BigReal& a, const BigReal& b, const PrecisionContext& ctx) {
    return div_at(a, b, ctx.work());
}

inline BigReal add(const BigReal& a, const BigReal& b) { return a + b; }
inline BigReal sub(const BigReal& a, const BigReal& b) { return a - b; }

inline BigReal mul(const BigReal& a, const BigReal& b, const PrecisionContext& ctx) {
    return BigReal::mul(a, b, ctx.work());
}

/// Square root by integer Newton iteration on the scaled value, rounded to
/// nearest; |result - sqrt(a)| <= 1 ulp at the given scale.
inline BigReal sqrt_at(const BigReal& a, int scale) {
    if (a.signum() < 0) throw std::domain_error("sqrt: negative argument");
    if (a.is_zero()) return BigReal(BigInt(0), scale);
    int e = 2 * scale - a.scale();
    BigInt n;
    if (e >= 0) {
        n = a.scaled() * pow10(e);
    } else {
        BigInt p = pow10(-e);
        n = (a.scaled() + p / 2) / p;
    }
    BigInt r = boost::multiprecision::sqrt(n);  // floor sqrt
    if (n - r * r > r) ++r;                     // nearest
    return BigReal(std::move(r), scale);
}

inline BigReal sqrt(const BigReal& a, const PrecisionContext& ctx) {
    return sqrt_at(a, ctx.work());
}

namespace detail {

/// arctan(1/n) at an explicit scale via the alternating Taylor series with
/// exact integer denominators; truncation below 1 ulp.
inline BigReal atan_recip_at(std::int64_t n, int scale) {
    if (n < 1) throw std::domain_error("atan_reciprocal: n must be >= 1");
    if (n == 1) {
        // the series converges too slowly at n = 1; use
        // arctan(1) = arctan(1/2) + arctan(1/3)
        BigReal a2 = atan_recip_at(2, scale + 5);
        BigReal a3 = atan_recip_at(3, scale + 5);
        return BigReal(a2.scaled() + a3.scaled(), scale + 5).rescale(scale);
    }
    const int ext = scale + 10;
    const BigInt unit = pow10(ext);
    const BigInt n2 = BigInt(n) * n;
    BigInt npow = n;  // n^(2k+1)
    BigInt sum = 0;
    for (std::int64_t k = 0;; ++k) {
        BigInt den = BigInt(2 * k + 1) * npow;
        BigInt term = (2 * unit + den) / (2 * den);
        if (term == 0) break;
        if (k % 2 == 0) sum += term; else sum -= term;
        npow *= n2;
    }
    return BigReal(std::move(sum), ext).rescale(scale);
}

/// pi at an explicit scale: Machin's formula, cross-checked against the
/// independent identity pi/4 = arctan(1/2) + arctan(1/3). Memoized;
/// the cache is safe for concurrent use and order-independent.
inline BigReal pi_at(int scale) {
    static std::mutex cache_mutex;
    static std::map<int, BigInt> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(scale);
        if (it != cache.end()) return BigReal(it->second, scale);
    }
    const int ext = scale + 10;
    BigReal a5   = atan_recip_at(5, ext);
    BigReal a239 = atan_recip_at(239, ext);
    BigReal a2   = atan_recip_at(2, ext);
    BigReal a3   = atan_recip_at(3, ext);
    BigReal machin(a5.scaled() * 16 - a239.scaled() * 4, ext);
    BigReal second((a2.scaled() + a3.scaled()) * 4, ext);
    BigInt diff = boost::multiprecision::abs(machin.scaled() - second.scaled());
    if (diff > 20)  // 2 ulp at scale `ext` would be 2; allow series slack
        throw std::logic_error("pi_at: Machin cross-check failed");
    BigReal result = machin.rescale(scale);
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(scale, result.scaled());
    return result;
}

/// e^t for |t| <= 1, summed at a fixed scale.
inline BigReal exp_taylor_unit(const BigReal& t, int scale) {
    BigReal one(pow10(scale), scale);
    BigReal term = one;
    BigReal sum = one;
    for (std::int64_t n = 1;; ++n) {
        term = BigReal::mul(term, t, scale);
        term = div_at(term, BigReal(n), scale);
        if (boost::multiprecision::abs(term.scaled()) <= 1) break;
        sum = sum + term;
    }
    return sum;
}

/// e^a for any sign, squaring-based reduction: a/2^k <= 1 in magnitude.
inline BigReal exp_at(const BigReal& a, int scale) {
    if (a.is_zero()) return BigReal(pow10(scale), scale);
    double av = std::fabs(a.approx());
    int k = 0;
    while (std::ldexp(1.0, k) < av) ++k;
    // relative error doubles per squaring; widen accordingly
    int headroom = (a.signum() > 0) ? static_cast<int>(av * 0.4342944819) + 2 : 0;
    const int ext = scale + k + headroom + 10;
    BigReal t = div_at(a, BigReal(BigInt(1) << k, 0), ext);
    BigReal r = exp_taylor_unit(t, ext);
    for (int i = 0; i < k; ++i) r = BigReal::mul(r, r, ext);
    return r.rescale(scale);
}

/// Reduce x modulo 2*pi into [-pi-eps, pi+eps], exactly up to the rounding
/// of the pi value used.
inline BigReal reduce_mod_2pi(const BigReal& x, int scale) {
    double ax = std::fabs(x.approx());
    int int_digits = (ax < 1.0) ? 1 : static_cast<int>(std::log10(ax)) + 2;
    const int pscale = scale + int_digits + 10;
    BigReal pi = pi_at(pscale);
    BigReal two_pi(pi.scaled() * 2, pscale);
    BigReal q = div_at(x, two_pi, 0);  // nearest integer multiple
    BigReal r = x - exact_mul(q, two_pi);
    return r.rescale(scale);
}

} // namespace detail

/// e^(-a) for a >= 0; Taylor with squaring reduction; error <= 2 ulp.
/// Result clamped into (0, 1].
inline BigReal exp_neg(const BigReal& a, const PrecisionContext& ctx) {
    if (a.signum() < 0) throw std::domain_error("exp_neg: argument must be >= 0");
    const int w = ctx.work();
    BigReal r = detail::exp_at(-a, w);
    BigReal one(pow10(w), w);
    if (r > one) r = one;
    return r;
}

/// sin with argument reduction modulo 2*pi; error <= 2 ulp at work scale.
inline BigReal sin(const BigReal& x, const PrecisionContext& ctx) {
    const int w = ctx.work();
    const int ext = w + 10;
    BigReal r = detail::reduce_mod_2pi(x, ext);
    BigReal r2 = BigReal::mul(r, r, ext);
    BigReal term = r.rescale(ext);
    BigReal sum = term;
    for (std::int64_t n = 1;; ++n) {
        term = BigReal::mul(term, r2, ext);
        term = div_at(term, BigReal((2 * n) * (2 * n + 1)), ext);
        term = -term;
        if (boost::multiprecision::abs(term.scaled()) <= 1) break;
        sum = sum + term;
    }
    return sum.rescale(w);
}

/// cos with argument reduction modulo 2*pi; error <= 2 ulp at work scale.
inline BigReal cos(const BigReal& x, const PrecisionContext& ctx) {
    const int w = ctx.work();
    const int ext = w + 10;
    BigReal r = detail::reduce_mod_2pi(x, ext);
    BigReal r2 = BigReal::mul(r, r, ext);
    BigReal term(pow10(ext), ext);
    BigReal sum = term;
    for (std::int64_t n = 1;; ++n) {
        term = BigReal::mul(term, r2, ext);
        term = div_at(term, BigReal((2 * n - 1) * (2 * n)), ext);
        term = -term;
        if (boost::multiprecision::abs(term.scaled()) <= 1) break;
        sum = sum + term;
    }
    return sum.rescale(w);
}

/// arctan(1/n) for integer n >= 1; alternating series with exact integer
/// denominators, truncation below 1 ulp of the working scale.
inline BigReal atan_reciprocal(std::int64_t n, const PrecisionContext& ctx) {
    return detail::atan_recip_at(n, ctx.work());
}

} // namespace sincpi
