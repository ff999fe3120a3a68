#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sincpi/bigreal.hpp"
#include "sincpi/elementary.hpp"
#include "sincpi/oracles.hpp"
#include "sincpi/precision.hpp"

namespace sincpi {

enum class SeriesKind { Eq15, Eq16 };
enum class EvalMethod { Direct, Accelerated };

inline const char* to_string(SeriesKind k) { return k == SeriesKind::Eq15 ? "eq15" : "eq16"; }
inline const char* to_string(EvalMethod m) { return m == EvalMethod::Direct ? "direct" : "accelerated"; }

struct PiResult {
    SeriesKind kind = SeriesKind::Eq15;
    std::uint64_t L = 1;
    EvalMethod method = EvalMethod::Direct;
    BigReal value;
    BigReal error_bound;  // method-reported, see each evaluator
    PrecisionContext ctx;
};

/// Direct summation refused: term count exceeds the desk-scale cap.
class ResourceRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested digits unreachable; carries the digit count that is.
class AccuracyRefusal : public std::runtime_error {
public:
    AccuracyRefusal(std::string msg, int achievable)
        : std::runtime_error(std::move(msg)), achievable_digits(achievable) {}
    int achievable_digits;
};

constexpr std::uint64_t kDirectTermCap = 2'000'000'000ULL;

/// Even-index Bernoulli numbers B_2..B_2k as exact rationals, from the
/// defining recurrence sum_{j=0..m} C(m+1, j) B_j = 0. The recurrence also
/// produces the odd-index entries; they are checked to vanish rather than
/// assumed to.
struct BernoulliTable {
    std::vector<Rational> even;  // even[k-1] = B_{2k}

    const Rational& b2k(int k) const { return even.at(static_cast<std::size_t>(k) - 1); }
};

inline BernoulliTable bernoulli_even(int upto_2k) {
    if (upto_2k < 2 || upto_2k % 2 != 0)
        throw std::domain_error("bernoulli_even: needs a positive even bound");
    std::vector<Rational> b(static_cast<std::size_t>(upto_2k) + 1);
    b[0] = 1;
    for (int m = 1; m <= upto_2k; ++m) {
        // B_m = -1/(m+1) * sum_{j=0..m-1} C(m+1, j) B_j
        Rational acc = 0;
        BigInt binom = 1;  // C(m+1, j), built incrementally
        for (int j = 0; j < m; ++j) {
            acc += Rational(binom) * b[static_cast<std::size_t>(j)];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b[static_cast<std::size_t>(m)] = -acc / (m + 1);
        if (m >= 3 && m % 2 == 1 && b[static_cast<std::size_t>(m)] != 0)
            throw std::logic_error("bernoulli_even: odd-index entry did not vanish");
    }
    BernoulliTable table;
    for (int k = 2; k <= upto_2k; k += 2)
        table.even.push_back(b[static_cast<std::size_t>(k)]);
    if (table.even[0] != Rational(1, 6))
        throw std::logic_error("bernoulli_even: B_2 != 1/6");
    if (upto_2k >= 4 && table.even[1] != Rational(-1, 30))
        throw std::logic_error("bernoulli_even: B_4 != -1/30");
    return table;
}

namespace detail {

/// Odd derivatives of g(x) = 4/(1+x^2) at x = 1, as exact rationals.
/// g^(n)(x) = P_n(x) / (1+x^2)^(n+1) with the integer-polynomial recurrence
/// P_{n+1} = P_n' (1+x^2) - 2(n+1) x P_n, P_0 = 4.
inline std::vector<Rational> g_odd_derivatives_at_one(int upto_order) {
    std::vector<Rational> out;  // out[k-1] = g^(2k-1)(1)
    std::vector<BigInt> p{4};   // ascending coefficients
    BigInt two_pow = 2;         // (1+1)^(n+1) for current n = 0
    for (int n = 0; n < upto_order; ++n) {
        // derivative
        std::vector<BigInt> dp(p.size() > 1 ? p.size() - 1 : 1, BigInt(0));
        for (std::size_t i = 1; i < p.size(); ++i) dp[i - 1] = p[i] * static_cast<int>(i);
        // P_n' * (1 + x^2)
        std::vector<BigInt> next(dp.size() + 2, BigInt(0));
        for (std::size_t i = 0; i < dp.size(); ++i) {
            next[i] += dp[i];
            next[i + 2] += dp[i];
        }
        // - 2(n+1) x P_n
        if (next.size() < p.size() + 1) next.resize(p.size() + 1, BigInt(0));
        for (std::size_t i = 0; i < p.size(); ++i)
            next[i + 1] -= BigInt(2) * (n + 1) * p[i];
        p = std::move(next);
        two_pow *= 2;
        int order = n + 1;
        if (order % 2 == 1) {
            BigInt value_at_one = 0;
            for (const auto& c : p) value_at_one += c;
            out.emplace_back(Rational(value_at_one, two_pow));
        }
    }
    return out;
}

/// Euler-Maclaurin endpoint-correction coefficients c_k with
///   series_sum(L) = pi + sum_k c_k * (1/L)^(2k)   (Eq15, midpoint rule)
///   series_sum(L) = pi - 1/L + sum_k c_k * (1/L)^(2k)   (Eq16, right endpoints)
/// Only the x = 1 endpoint contributes: g is even, so its odd derivatives
/// vanish at 0.
inline std::vector<Rational> em_coefficients(SeriesKind kind, int upto_k) {
    BernoulliTable bern = bernoulli_even(2 * upto_k);
    std::vector<Rational> deriv = g_odd_derivatives_at_one(2 * upto_k - 1);
    std::vector<Rational> out;
    BigInt fact = 1;  // (2k)!
    for (int k = 1; k <= upto_k; ++k) {
        fact *= (2 * k - 1);
        fact *= (2 * k);
        Rational base = bern.b2k(k) / Rational(fact) * deriv[static_cast<std::size_t>(k) - 1];
        if (kind == SeriesKind::Eq15) {
            // midpoint weights: (2^(1-2k) - 1) B_2k
            base *= Rational(1, BigInt(1) << (2 * k - 1)) - 1;
        }
        out.push_back(base);
    }
    return out;
}

inline BigReal rational_to_bigreal(const Rational& r, int scale) {
    BigInt num = boost::multiprecision::numerator(r) * pow10(scale);
    BigInt den = boost::multiprecision::denominator(r);
    const bool neg = num < 0;
    BigInt n = boost::multiprecision::abs(num);
    BigInt q = (2 * n + den) / (2 * den);
    if (neg) q = -q;
    return BigReal(std::move(q), scale);
}

inline double rational_log10_abs(const Rational& r) {
    if (r == 0) return -1e9;
    const BigInt& num = boost::multiprecision::numerator(r);
    const BigInt& den = boost::multiprecision::denominator(r);
    auto digits = [](const BigInt& v) {
        BigInt a = boost::multiprecision::abs(v);
        return static_cast<double>(a.str().size());
    };
    return digits(num) - digits(den);
}

} // namespace detail

/// Exact direct summation:
///   Eq15: 16L * sum_{l=1..L} 1/((2l-1)^2 + 4L^2)
///   Eq16:  4L * sum_{l=1..L} 1/(l^2 + L^2)
/// Denominators are exact integers; each reciprocal is one rounded
/// division; partial sums accumulate exactly, so any chunking across
/// threads yields bit-identical results.
inline PiResult pi_direct(SeriesKind kind, std::uint64_t L, const PrecisionContext& ctx,
                          unsigned threads = 0, bool override_cap = false) {
    if (L < 1) throw std::domain_error("pi_direct: L must be >= 1");
    if (L > kDirectTermCap && !override_cap)
        throw ResourceRefusal("pi_direct: L = " + std::to_string(L) +
                              " exceeds the direct-summation cap of " +
                              std::to_string(kDirectTermCap) + " terms (use the override)");
    const int w = ctx.work();
    int l_digits = static_cast<int>(std::to_string(L).size());
    const int ext = w + 2 * l_digits + 5;  // absorbs the <= 8 L^2 ulp of per-term rounding
    const BigInt unit = pow10(ext);
    const BigInt big_l(L);
    const BigInt shifted_l2 = (kind == SeriesKind::Eq15) ? BigInt(4) * big_l * big_l
                                                         : big_l * big_l;

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (static_cast<std::uint64_t>(threads) > L) threads = static_cast<unsigned>(L);

    auto chunk_sum = [&](std::uint64_t first, std::uint64_t last, BigInt& out) {
        BigInt acc = 0;
        if (kind == SeriesKind::Eq15) {
            for (std::uint64_t l = first; l <= last; ++l) {
                BigInt odd(2 * l - 1);
                BigInt d = odd * odd + shifted_l2;
                acc += (2 * unit + d) / (2 * d);
            }
        } else {
            for (std::uint64_t l = first; l <= last; ++l) {
                BigInt li(l);
                BigInt d = li * li + shifted_l2;
                acc += (2 * unit + d) / (2 * d);
            }
        }
        out = std::move(acc);
    };

    std::vector<BigInt> partials(threads);
    if (threads == 1) {
        chunk_sum(1, L, partials[0]);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t per = L / threads;
        std::uint64_t first = 1;
        for (unsigned i = 0; i < threads; ++i) {
            std::uint64_t last = (i + 1 == threads) ? L : first + per - 1;
            pool.emplace_back(chunk_sum, first, last, std::ref(partials[i]));
            first = last + 1;
        }
        for (auto& t : pool) t.join();
    }
    BigInt total = 0;
    for (const auto& part : partials) total += part;  // exact reduction
    total *= (kind == SeriesKind::Eq15) ? BigInt(16) * big_l : BigInt(4) * big_l;

    PiResult res;
    res.kind = kind;
    res.L = L;
    res.method = EvalMethod::Direct;
    res.ctx = ctx;
    res.value = BigReal(std::move(total), ext).rescale(w);
    // per-term rounding 0.5 ulp_ext, L terms, times the 16L (or 4L) factor,
    // plus the final rescale
    BigInt allowance = BigInt(8) * big_l * big_l + pow10(ext - w);
    res.error_bound = BigReal(std::move(allowance), ext);
    return res;
}

/// Pick the correction order: grow K until every remaining term drops below
/// 10^-(out_digits+3), cap 12. The coefficients of odd k vanish exactly
/// (g'''(1) = 0 and so on), so a single next-term check would be fooled;
/// the whole computable tail is inspected. Refuse if the cap cannot reach
/// out_digits.
inline int choose_correction_order(SeriesKind kind, std::uint64_t L, int out_digits) {
    constexpr int kMaxOrder = 12;
    const double log_h = -std::log10(static_cast<double>(L));
    std::vector<Rational> coef = detail::em_coefficients(kind, kMaxOrder + 2);
    auto term_log = [&](int j) {  // log10 of |c_j / L^(2j)|
        return detail::rational_log10_abs(coef[static_cast<std::size_t>(j) - 1]) + 2.0 * j * log_h;
    };
    for (int K = 1; K <= kMaxOrder; ++K) {
        double tail = -1e9;
        for (int j = K + 1; j <= kMaxOrder + 2; ++j)
            if (coef[static_cast<std::size_t>(j) - 1] != 0) tail = std::max(tail, term_log(j));
        if (tail < -(out_digits + 3)) return K;
    }
    // find what the cap can deliver
    double best = 1e9;
    for (int j = 1; j <= kMaxOrder + 2; ++j)
        if (coef[static_cast<std::size_t>(j) - 1] != 0) best = std::min(best, term_log(j));
    throw AccuracyRefusal("pi_accelerated: out_digits = " + std::to_string(out_digits) +
                              " unreachable at L = " + std::to_string(L) +
                              " with correction order <= 12",
                          best >= 0 ? 0 : static_cast<int>(-best));
}

/// Euler-Maclaurin accelerated evaluation. The series are the midpoint
/// (Eq15) and right-endpoint (Eq16) Riemann sums of Int_0^1 4/(1+x^2) dx,
/// so their values equal pi plus exact-rational endpoint corrections in
/// powers of 1/L. The corrections are summed as one exact rational before
/// a single rounding. error_bound = |first omitted correction| + rounding.
inline PiResult pi_accelerated(SeriesKind kind, std::uint64_t L, int K,
                               const PrecisionContext& ctx) {
    if (L < 1) throw std::domain_error("pi_accelerated: L must be >= 1");
    if (K < 1) throw std::domain_error("pi_accelerated: K must be >= 1");
    const int w = ctx.work();
    std::vector<Rational> coef = detail::em_coefficients(kind, K + 2);
    const Rational h(1, BigInt(L));
    const Rational h2 = h * h;

    Rational correction = (kind == SeriesKind::Eq16) ? -h : Rational(0);
    Rational h_pow = h2;
    for (int k = 1; k <= K; ++k) {
        correction += coef[static_cast<std::size_t>(k) - 1] * h_pow;
        h_pow *= h2;
    }
    // first two omitted terms: one of each pair vanishes identically
    Rational omitted = abs(coef[static_cast<std::size_t>(K)] * h_pow) +
                       abs(coef[static_cast<std::size_t>(K) + 1] * h_pow * h2);

    // refuse when the omitted term exceeds the requested accuracy
    double omitted_log = detail::rational_log10_abs(omitted);
    if (omitted_log > -ctx.out_digits) {
        int achievable = omitted_log >= 0 ? 0 : static_cast<int>(-omitted_log);
        throw AccuracyRefusal("pi_accelerated: first omitted correction ~1e" +
                                  std::to_string(static_cast<int>(omitted_log)) +
                                  " exceeds 1e-" + std::to_string(ctx.out_digits),
                              achievable);
    }

    PiResult res;
    res.kind = kind;
    res.L = L;
    res.method = EvalMethod::Accelerated;
    res.ctx = ctx;
    res.value = (pi_value(w + 5) + detail::rational_to_bigreal(correction, w + 5)).rescale(w);
    res.error_bound = detail::rational_to_bigreal(omitted, w + 5) + BigReal(2, w);
    return res;
}

inline PiResult pi_accelerated(SeriesKind kind, std::uint64_t L, const PrecisionContext& ctx) {
    return pi_accelerated(kind, L, choose_correction_order(kind, L, ctx.out_digits), ctx);
}

constexpr std::uint64_t kDirectPreferredBelow = 10'000'000ULL;

/// Evaluate each L with the cheapest valid method: direct below 10^7,
/// accelerated at or above.
inline std::vector<PiResult> pi_convergence_probe(SeriesKind kind,
                                                  const std::vector<std::uint64_t>& L_list,
                                                  const PrecisionContext& ctx,
                                                  unsigned threads = 0) {
    if (L_list.empty()) throw std::domain_error("pi_convergence_probe: empty L list");
    for (std::size_t i = 1; i < L_list.size(); ++i)
        if (L_list[i] <= L_list[i - 1])
            throw std::domain_error("pi_convergence_probe: L list must be ascending");
    std::vector<PiResult> out;
    out.reserve(L_list.size());
    for (std::uint64_t L : L_list) {
        if (L < kDirectPreferredBelow)
            out.push_back(pi_direct(kind, L, ctx, threads));
        else
            out.push_back(pi_accelerated(kind, L, ctx));
    }
    return out;
}

} // namespace sincpi
