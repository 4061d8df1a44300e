#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>

namespace hyperfractal {

/// Exact dyadic rational num / 2^exp, normalized so that num is odd or zero.
///
/// Grid coordinates are dyadic by construction (line offsets are odd
/// multiples of 2^-(l+1), cut points are multiples of 2^-l), and keeping them
/// as integer pairs makes membership and symmetry checks exact. Conversion to
/// double is lossless for the depths this library supports.
struct Dyadic {
    std::int64_t num = 0;
    int exp = 0;  // denominator is 2^exp, exp >= 0

    constexpr Dyadic() = default;

    constexpr Dyadic(std::int64_t numerator, int exponent)
        : num(numerator), exp(exponent) {
        if (exponent < 0) throw std::invalid_argument("Dyadic: negative exponent");
        normalize();
    }

    static constexpr Dyadic zero() { return Dyadic{}; }
    static constexpr Dyadic one() { return Dyadic{1, 0}; }

    constexpr void normalize() {
        if (num == 0) {
            exp = 0;
            return;
        }
        while ((num & 1) == 0 && exp > 0) {
            num >>= 1;
            --exp;
        }
    }

    double to_double() const { return std::ldexp(static_cast<double>(num), -exp); }

    /// True when the value equals b * 2^-(level+1) for an odd integer b.
    constexpr bool is_odd_multiple_at_level(int level) const {
        return num != 0 && exp == level + 1;
    }

    friend constexpr Dyadic operator+(Dyadic a, Dyadic b) {
        const int e = a.exp > b.exp ? a.exp : b.exp;
        return Dyadic{(a.num << (e - a.exp)) + (b.num << (e - b.exp)), e};
    }

    friend constexpr Dyadic operator-(Dyadic a, Dyadic b) {
        const int e = a.exp > b.exp ? a.exp : b.exp;
        return Dyadic{(a.num << (e - a.exp)) - (b.num << (e - b.exp)), e};
    }

    friend constexpr bool operator==(Dyadic a, Dyadic b) {
        return a.num == b.num && a.exp == b.exp;
    }

    friend constexpr std::strong_ordering operator<=>(Dyadic a, Dyadic b) {
        const int e = a.exp > b.exp ? a.exp : b.exp;
        return (a.num << (e - a.exp)) <=> (b.num << (e - b.exp));
    }
};

/// 1 - x, exact.
constexpr Dyadic complement(Dyadic x) { return Dyadic{1, 0} - x; }

}  // namespace hyperfractal
