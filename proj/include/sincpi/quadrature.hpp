#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "sincpi/bigreal.hpp"
#include "sincpi/elementary.hpp"
#include "sincpi/oracles.hpp"
#include "sincpi/precision.hpp"
#include "sincpi/sinc_expansion.hpp"

namespace sincpi {

struct QuadratureSpec {
    BigReal a;
    BigReal b;
    int target_digits = 16;
    int max_refinement = 10;
};

/// Thrown when refinement levels stop improving before the target is met.
/// Carries the best estimate so callers can still inspect it.
class AccuracyFailure : public std::runtime_error {
public:
    AccuracyFailure(std::string msg, BigReal best, int achieved)
        : std::runtime_error(std::move(msg)),
          best_estimate(std::move(best)),
          achieved_digits(achieved) {}
    BigReal best_estimate;
    int achieved_digits;
};

struct QuadratureResult {
    BigReal value;
    int agreed_digits = 0;  // digits on which the last two levels agree
    int levels = 0;
};

namespace detail {

struct TanhSinhNode {
    BigReal abscissa_offset;  // s * tanh((pi/2) sinh(t)), t >= 0
    BigReal weight;           // s * (pi/2) cosh(t) / cosh^2((pi/2) sinh(t))
};

inline TanhSinhNode tanh_sinh_node(const BigReal& t, const BigReal& half_length,
                                   const BigReal& pi_half, int ext) {
    BigReal et = exp_at(t, ext);
    BigReal inv_et = div_at(BigReal(pow10(ext), ext), et, ext);
    BigReal cosh_t = div_at(et + inv_et, BigReal(2), ext);
    BigReal sinh_t = div_at(et - inv_et, BigReal(2), ext);
    BigReal u = BigReal::mul(pi_half, sinh_t, ext);  // u >= 0 for t >= 0
    BigReal e2u = exp_at(BigReal(u.scaled() * (-2), u.scale()), ext);  // e^(-2u)
    BigReal one(pow10(ext), ext);
    BigReal denom = one + e2u;
    BigReal tanh_u = div_at(one - e2u, denom, ext);
    // sech^2(u) = 4 e^(-2u) / (1 + e^(-2u))^2
    BigReal sech2 = div_at(BigReal(e2u.scaled() * 4, e2u.scale()),
                           BigReal::mul(denom, denom, ext), ext);
    TanhSinhNode node;
    node.abscissa_offset = BigReal::mul(half_length, tanh_u, ext);
    node.weight = BigReal::mul(BigReal::mul(half_length, pi_half, ext),
                               BigReal::mul(cosh_t, sech2, ext), ext);
    return node;
}

} // namespace detail

/// Tanh-sinh (double-exponential) quadrature over [a, b]. Levels are
/// refined until two successive estimates agree to target_digits; node
/// summation order is fixed (ascending index, minus side then plus side)
/// so results are deterministic.
///
/// F is callable as f(const BigReal& x, const PrecisionContext& ctx).
template <typename F>
QuadratureResult integrate_full(F&& f, const QuadratureSpec& spec, const PrecisionContext& ctx) {
    if (!(spec.a < spec.b)) throw std::domain_error("integrate: requires a < b");
    const int w = ctx.work();
    const int ext = std::max(w, spec.target_digits + 10) + 10;
    PrecisionContext inner{ext, 0};

    BigReal center = div_at(spec.a + spec.b, BigReal(2), ext);
    BigReal half_length = div_at(spec.b - spec.a, BigReal(2), ext);
    BigReal pi_half = div_at(pi_value(ext + 5), BigReal(2), ext);

    const BigReal cutoff(BigInt(1), std::min(ext - 2, spec.target_digits + 8));
    const BigReal target_tol(BigInt(1), std::min(ext - 2, spec.target_digits));

    // contribution of one node pair at offset +-d with weight wgt
    auto pair_sum = [&](const BigReal& d, const BigReal& wgt) {
        BigReal lo = (center - d).rescale(ext);
        BigReal hi = (center + d).rescale(ext);
        return BigReal::mul(wgt, f(lo, inner) + f(hi, inner), ext);
    };

    // level 0: h = 1, nodes at integer t
    BigReal h(1);
    BigReal sum(BigInt(0), ext);
    {
        auto n0 = detail::tanh_sinh_node(BigReal(0), half_length, pi_half, ext);
        sum = BigReal::mul(n0.weight, f(center, inner), ext);
        for (std::int64_t j = 1;; ++j) {
            auto n = detail::tanh_sinh_node(BigReal(j), half_length, pi_half, ext);
            if (n.weight < cutoff) break;
            sum = sum + pair_sum(n.abscissa_offset, n.weight);
        }
    }
    BigReal estimate = sum;  // h = 1
    int agreed = 0;

    for (int level = 1; level <= spec.max_refinement; ++level) {
        // step h/2: previous nodes keep their values, add odd multiples
        BigInt denom = BigInt(1) << level;
        BigReal odd_sum(BigInt(0), ext);
        for (std::int64_t j = 1;; j += 2) {
            BigReal t = div_at(BigReal(j), BigReal(denom, 0), ext);
            auto n = detail::tanh_sinh_node(t, half_length, pi_half, ext);
            if (n.weight < cutoff) break;
            odd_sum = odd_sum + pair_sum(n.abscissa_offset, n.weight);
        }
        sum = sum + odd_sum;
        BigReal new_estimate = div_at(sum, BigReal(denom, 0), ext);
        BigReal diff = (new_estimate - estimate).abs();
        estimate = new_estimate;
        if (diff.is_zero()) {
            agreed = ext;
        } else {
            // digits of agreement = -log10(diff)
            agreed = diff.scale() - static_cast<int>(diff.scaled().str().size());
        }
        if (diff <= target_tol) {
            return QuadratureResult{estimate.rescale(w), agreed, level};
        }
    }
    throw AccuracyFailure("integrate: did not reach target agreement within max_refinement",
                          estimate.rescale(w), agreed);
}

template <typename F>
BigReal integrate(F&& f, const QuadratureSpec& spec, const PrecisionContext& ctx) {
    return integrate_full(std::forward<F>(f), spec, ctx).value;
}

/// Discrepancy of the sinc-integral representation of erf:
///   | (2x/pi) * Int_0^12 e^(-t^2/4) sinc(x t) dt  -  reference erf(x) |.
/// The upper limit 12 leaves a tail below e^(-36).
inline BigReal verify_erf_integral(const BigReal& x, const PrecisionContext& ctx) {
    if (x.signum() <= 0 || x > BigReal(6))
        throw std::domain_error("verify_erf_integral: requires 0 < x <= 6");
    const int w = ctx.work();
    QuadratureSpec spec{BigReal(0), BigReal(12), ctx.out_digits, 10};
    auto integrand = [&x](const BigReal& t, const PrecisionContext& ictx) {
        int e = ictx.work();
        BigReal t2_over_4 = div_at(BigReal::mul(t, t, e), BigReal(4), e);
        BigReal xt = exact_mul(x, t).rescale(e);
        return BigReal::mul(exp_neg(t2_over_4, ictx), sinc(xt, ictx), e);
    };
    BigReal integral = integrate(integrand, spec, ctx);
    BigReal two_x_over_pi = div_at(BigReal(x.scaled() * 2, x.scale()), pi_value(w + 5), w);
    BigReal result = BigReal::mul(two_x_over_pi, integral, w);
    return (result - reference_erf(x, ctx)).abs().rescale(w);
}

/// Discrepancy of the integral identity sqrt(pi) = 4 Int_0^inf e^(-t^2) erf(t) dt,
/// truncated at `upper` (default 6, tail below 10^-16).
inline BigReal verify_sqrtpi_identity(const PrecisionContext& ctx, const BigReal& upper = BigReal(6)) {
    const int w = ctx.work();
    QuadratureSpec spec{BigReal(0), upper, ctx.out_digits, 10};
    auto integrand = [](const BigReal& t, const PrecisionContext& ictx) {
        int e = ictx.work();
        return BigReal::mul(exp_neg(BigReal::mul(t, t, e), ictx),
                            reference_erf(t, ictx), e);
    };
    BigReal integral = integrate(integrand, spec, ctx);
    BigReal result = BigReal(integral.scaled() * 4, integral.scale()).rescale(w);
    BigReal sqrt_pi = sqrt_at(pi_value(w + 5), w);
    return (result - sqrt_pi).abs().rescale(w);
}

/// Rigorous tail bound: Int_T^inf e^(-t^2/s^2) dt <= s^2 e^(-T^2/s^2) / (2T).
inline BigReal damping_tail_bound(const BigReal& T, const BigReal& scale,
                                  const PrecisionContext& ctx) {
    if (T.signum() <= 0 || scale.signum() <= 0)
        throw std::domain_error("damping_tail_bound: T and scale must be > 0");
    const int w = ctx.work();
    BigReal ratio2 = div_at(BigReal::mul(T, T, w + 10),
                            BigReal::mul(scale, scale, w + 10), w + 10);
    PrecisionContext inner{w + 10, 0};
    BigReal gauss = exp_neg(ratio2, inner);
    BigReal num = BigReal::mul(BigReal::mul(scale, scale, w + 10), gauss, w + 10);
    return div_at(num, BigReal(T.scaled() * 2, T.scale()), w);
}

} // namespace sincpi
