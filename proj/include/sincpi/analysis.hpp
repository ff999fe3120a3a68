#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sincpi/bigreal.hpp"
#include "sincpi/oracles.hpp"
#include "sincpi/pi_series.hpp"
#include "sincpi/precision.hpp"

namespace sincpi {

/// Off-by-one mismatch structure: prefix_len leading digits coincide, the
/// digit at mismatch_index (0-based, decimal point excluded) is exactly one
/// less than the reference digit, and second_group_len further digits
/// coincide after it.
struct DigitPattern {
    int prefix_len = 0;
    int mismatch_index = 0;
    int second_group_len = 0;

    friend bool operator==(const DigitPattern&, const DigitPattern&) = default;
};

struct DigitReport {
    std::string approx_digits;
    std::string ref_digits;
    int coinciding = 0;
    std::optional<DigitPattern> pattern;
};

struct ConvergenceRecord {
    SeriesKind kind = SeriesKind::Eq15;
    std::uint64_t L = 1;
    EvalMethod method = EvalMethod::Direct;
    std::string value;
    int coinciding = 0;
    std::optional<DigitPattern> pattern;
    double wall_time_s = 0.0;
};

namespace detail {

/// Validate and strip: digits plus at most one decimal point, leading digit.
inline std::string digits_only(std::string_view s) {
    if (s.empty() || s[0] < '0' || s[0] > '9')
        throw std::invalid_argument("digit string must begin with a digit");
    std::string out;
    out.reserve(s.size());
    bool seen_dot = false;
    for (char c : s) {
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("digit string has two decimal points");
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            out += c;
        } else {
            throw std::invalid_argument("digit string has a non-digit character");
        }
    }
    return out;
}

} // namespace detail

/// Count of leading coinciding digits, decimal point excluded; "3.141..."
/// against the pi reference counts 4 for the prefix "3.141".
inline int coinciding_digits(std::string_view approx, std::string_view reference) {
    std::string a = detail::digits_only(approx);
    std::string r = detail::digits_only(reference);
    std::size_t n = std::min(a.size(), r.size());
    std::size_t i = 0;
    while (i < n && a[i] == r[i]) ++i;
    return static_cast<int>(i);
}

/// Detect the single-digit-decrement pattern. Only a literal character
/// difference of exactly one qualifies; borrow chains do not.
inline std::optional<DigitPattern> off_by_one_pattern(std::string_view approx,
                                                      std::string_view reference) {
    std::string a = detail::digits_only(approx);
    std::string r = detail::digits_only(reference);
    std::size_t n = std::min(a.size(), r.size());
    std::size_t i = 0;
    while (i < n && a[i] == r[i]) ++i;
    if (i == 0 || i >= n) return std::nullopt;     // no prefix, or strings ran out
    if (a[i] + 1 != r[i]) return std::nullopt;     // not exactly one less
    std::size_t j = i + 1;
    while (j < n && a[j] == r[j]) ++j;
    if (j == i + 1) return std::nullopt;           // nothing coincides after the mismatch
    return DigitPattern{static_cast<int>(i), static_cast<int>(i),
                        static_cast<int>(j - i - 1)};
}

inline DigitReport make_digit_report(std::string_view approx, std::string_view reference) {
    DigitReport rep;
    rep.approx_digits = detail::digits_only(approx);
    rep.ref_digits = detail::digits_only(reference);
    rep.coinciding = coinciding_digits(approx, reference);
    rep.pattern = off_by_one_pattern(approx, reference);
    return rep;
}

/// Render a pi approximation at out_digits significant digits (one integer
/// digit for these series), final reduction rounded half-away.
inline std::string pi_value_string(const BigReal& value, int out_digits) {
    return value.rescale(out_digits > 1 ? out_digits - 1 : 0).str();
}

/// One record per L, evaluated with the cheapest valid method and compared
/// digit-by-digit against reference pi at out_digits + 5.
inline std::vector<ConvergenceRecord> convergence_table(SeriesKind kind,
                                                        const std::vector<std::uint64_t>& L_list,
                                                        const PrecisionContext& ctx,
                                                        unsigned threads = 0) {
    if (L_list.empty()) throw std::domain_error("convergence_table: empty L list");
    for (std::size_t i = 1; i < L_list.size(); ++i)
        if (L_list[i] <= L_list[i - 1])
            throw std::domain_error("convergence_table: L list must be ascending");
    std::string ref = reference_pi(ctx.out_digits + 5).str();
    std::vector<ConvergenceRecord> out;
    out.reserve(L_list.size());
    for (std::uint64_t L : L_list) {
        auto t0 = std::chrono::steady_clock::now();
        PiResult r = (L < kDirectPreferredBelow) ? pi_direct(kind, L, ctx, threads)
                                                 : pi_accelerated(kind, L, ctx);
        auto t1 = std::chrono::steady_clock::now();
        ConvergenceRecord rec;
        rec.kind = kind;
        rec.L = L;
        rec.method = r.method;
        rec.value = pi_value_string(r.value, ctx.out_digits);
        rec.coinciding = coinciding_digits(rec.value, ref);
        rec.pattern = off_by_one_pattern(rec.value, ref);
        rec.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace sincpi
