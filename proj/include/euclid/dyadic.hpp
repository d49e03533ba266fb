#pragma once

// Dyadic rationals: num / 2^log2_den with num odd (or zero). The shifted
// Euclid recurrence only ever divides by powers of two, so this avoids the
// gcd normalization a general rational would pay on every operation.

#include <euclid/bigint.hpp>

#include <algorithm>
#include <string>

namespace euclid {

struct DyadicRational {
    BigInt num;
    unsigned long log2_den = 0;

    DyadicRational() = default;
    DyadicRational(BigInt n, unsigned long e) : num(std::move(n)), log2_den(e) { canonicalize(); }
    explicit DyadicRational(long n) : num(n), log2_den(0) {}

    void canonicalize() {
        if (num == 0) {
            log2_den = 0;
            return;
        }
        unsigned long tz = trailing_zero_bits(num);
        unsigned long shift = std::min(tz, log2_den);
        if (shift > 0) {
            num >>= shift;
            log2_den -= shift;
        }
    }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return log2_den == 0; }

    BigRational to_rational() const {
        BigRational r(num, pow2(log2_den));
        r.canonicalize();
        return r;
    }

    /// "13/16", or plain "13" when the denominator is 1.
    std::string to_string() const {
        if (log2_den == 0) return num.get_str(10);
        return num.get_str(10) + "/" + pow2(log2_den).get_str(10);
    }

    friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
        return a.log2_den == b.log2_den && a.num == b.num;
    }

    friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
        unsigned long e = std::max(a.log2_den, b.log2_den);
        BigInt n = (a.num << (e - a.log2_den)) + (b.num << (e - b.log2_den));
        return DyadicRational(std::move(n), e);
    }

    friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) {
        unsigned long e = std::max(a.log2_den, b.log2_den);
        BigInt n = (a.num << (e - a.log2_den)) - (b.num << (e - b.log2_den));
        return DyadicRational(std::move(n), e);
    }

    friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
        return DyadicRational(a.num * b.num, a.log2_den + b.log2_den);
    }
};

inline DyadicRational dyadic_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return DyadicRational(bigint_from_string(s), 0);
    BigInt num = bigint_from_string(s.substr(0, slash));
    BigInt den = bigint_from_string(s.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("dyadic denominator must be positive: " + s);
    unsigned long e = trailing_zero_bits(den);
    if (pow2(e) != den) throw std::invalid_argument("denominator not a power of two: " + s);
    return DyadicRational(std::move(num), e);
}

}  // namespace euclid
