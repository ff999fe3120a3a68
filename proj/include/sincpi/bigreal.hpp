#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "sincpi/precision.hpp"

namespace sincpi {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow10(int n) {
    if (n < 0) throw std::domain_error("pow10: negative exponent");
    BigInt r = 1;
    BigInt base = 10;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

/// Exact decimal fixed-point real: value = scaled / 10^scale.
/// Immutable after construction; addition and subtraction are exact,
/// everything else rounds to an explicit scale.
class BigReal {
public:
    BigReal() : scaled_(0), scale_(0) {}
    BigReal(long long v) : scaled_(v), scale_(0) {}
    BigReal(BigInt scaled, int scale) : scaled_(std::move(scaled)), scale_(scale) {
        if (scale_ < 0) throw std::domain_error("BigReal: negative scale");
    }

    static BigReal parse(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("BigReal::parse: empty string");
        bool neg = false;
        std::size_t i = 0;
        if (s[i] == '+' || s[i] == '-') {
            neg = (s[i] == '-');
            ++i;
        }
        BigInt mag = 0;
        int scale = 0;
        bool seen_dot = false, seen_digit = false;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c == '.') {
                if (seen_dot) throw std::invalid_argument("BigReal::parse: two decimal points");
                seen_dot = true;
            } else if (c >= '0' && c <= '9') {
                mag = mag * 10 + (c - '0');
                if (seen_dot) ++scale;
                seen_digit = true;
            } else {
                throw std::invalid_argument("BigReal::parse: bad character");
            }
        }
        if (!seen_digit) throw std::invalid_argument("BigReal::parse: no digits");
        if (neg) mag = -mag;
        return BigReal(std::move(mag), scale);
    }

    const BigInt& scaled() const { return scaled_; }
    int scale() const { return scale_; }
    bool is_zero() const { return scaled_ == 0; }
    int signum() const { return scaled_ == 0 ? 0 : (scaled_ < 0 ? -1 : 1); }

    /// Round half-away-from-zero to the given scale. Exact when the scale
    /// does not decrease.
    BigReal rescale(int new_scale) const {
        if (new_scale < 0) throw std::domain_error("BigReal::rescale: negative scale");
        if (new_scale >= scale_)
            return BigReal(scaled_ * pow10(new_scale - scale_), new_scale);
        BigInt p = pow10(scale_ - new_scale);
        BigInt mag = boost::multiprecision::abs(scaled_);
        BigInt q = (mag + p / 2) / p;
        if (scaled_ < 0) q = -q;
        return BigReal(std::move(q), new_scale);
    }

    /// Round toward zero (digit-prefix semantics).
    BigReal truncate(int new_scale) const {
        if (new_scale < 0) throw std::domain_error("BigReal::truncate: negative scale");
        if (new_scale >= scale_)
            return BigReal(scaled_ * pow10(new_scale - scale_), new_scale);
        BigInt p = pow10(scale_ - new_scale);
        BigInt mag = boost::multiprecision::abs(scaled_);
        BigInt q = mag / p;
        if (scaled_ < 0) q = -q;
        return BigReal(std::move(q), new_scale);
    }

    BigReal operator-() const { return BigReal(-scaled_, scale_); }

    BigReal abs() const { return BigReal(boost::multiprecision::abs(scaled_), scale_); }

    friend BigReal operator+(const BigReal& a, const BigReal& b) {
        int s = std::max(a.scale_, b.scale_);
        BigInt av = a.scaled_ * pow10(s - a.scale_);
        BigInt bv = b.scaled_ * pow10(s - b.scale_);
        return BigReal(av + bv, s);
    }
    friend BigReal operator-(const BigReal& a, const BigReal& b) { return a + (-b); }

    /// Exact product; scales add.
    friend BigReal exact_mul(const BigReal& a, const BigReal& b) {
        return BigReal(a.scaled_ * b.scaled_, a.scale_ + b.scale_);
    }

    /// Product rounded half-away to the given scale; error <= 0.5 ulp.
    static BigReal mul(const BigReal& a, const BigReal& b, int scale) {
        return exact_mul(a, b).rescale(scale);
    }

    friend std::strong_ordering operator<=>(const BigReal& a, const BigReal& b) {
        int s = std::max(a.scale_, b.scale_);
        BigInt av = a.scaled_ * pow10(s - a.scale_);
        BigInt bv = b.scaled_ * pow10(s - b.scale_);
        if (av < bv) return std::strong_ordering::less;
        if (av > bv) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const BigReal& a, const BigReal& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }

    /// Plain decimal string at the stored scale (no exponent notation).
    std::string str() const {
        BigInt mag = boost::multiprecision::abs(scaled_);
        std::string digits = mag.convert_to<std::string>();
        if (static_cast<int>(digits.size()) <= scale_)
            digits.insert(0, static_cast<std::size_t>(scale_) + 1 - digits.size(), '0');
        std::string out;
        if (scaled_ < 0) out += '-';
        out.append(digits, 0, digits.size() - static_cast<std::size_t>(scale_));
        if (scale_ > 0) {
            out += '.';
            out.append(digits, digits.size() - static_cast<std::size_t>(scale_),
                       static_cast<std::size_t>(scale_));
        }
        return out;
    }

    /// Decimal string rounded half-away to `decimals` places after the point.
    std::string str(int decimals) const { return rescale(decimals).str(); }

    /// Lossy double approximation, for heuristics only (term-count
    /// estimates, grid layout), never for results.
    double approx() const {
        double v = scaled_.convert_to<double>();
        return v / std::pow(10.0, scale_);
    }

private:
    BigInt scaled_;
    int scale_;
};

inline BigReal ulp(int scale) { return BigReal(BigInt(1), scale); }

} // namespace sincpi
