#pragma once

// Dense univariate polynomials with exact coefficients, ascending powers.
// The zero polynomial is the empty coefficient vector; any other polynomial
// has a nonzero leading coefficient.

#include <euclid/bigint.hpp>
#include <euclid/dyadic.hpp>

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace euclid {

struct BigIntPoly {
    std::vector<BigInt> coeffs;  // coeffs[j] multiplies x^j

    BigIntPoly() = default;
    explicit BigIntPoly(std::vector<BigInt> c) : coeffs(std::move(c)) { trim(); }
    static BigIntPoly constant(BigInt c) {
        BigIntPoly p;
        if (c != 0) p.coeffs.push_back(std::move(c));
        return p;
    }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    const BigInt& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return coeffs.back();
    }
    BigInt coeff(size_t j) const { return j < coeffs.size() ? coeffs[j] : BigInt(0); }

    bool all_nonnegative() const {
        for (const auto& c : coeffs)
            if (c < 0) return false;
        return true;
    }

    BigInt max_abs_coeff() const {
        BigInt m = 0;
        for (const auto& c : coeffs) {
            BigInt a = abs(c);
            if (a > m) m = a;
        }
        return m;
    }

    friend bool operator==(const BigIntPoly& a, const BigIntPoly& b) { return a.coeffs == b.coeffs; }

    friend BigIntPoly operator+(const BigIntPoly& a, const BigIntPoly& b) {
        std::vector<BigInt> c(std::max(a.coeffs.size(), b.coeffs.size()));
        for (size_t i = 0; i < c.size(); ++i) {
            if (i < a.coeffs.size()) c[i] += a.coeffs[i];
            if (i < b.coeffs.size()) c[i] += b.coeffs[i];
        }
        return BigIntPoly(std::move(c));
    }

    friend BigIntPoly operator-(const BigIntPoly& a, const BigIntPoly& b) {
        std::vector<BigInt> c(std::max(a.coeffs.size(), b.coeffs.size()));
        for (size_t i = 0; i < c.size(); ++i) {
            if (i < a.coeffs.size()) c[i] += a.coeffs[i];
            if (i < b.coeffs.size()) c[i] -= b.coeffs[i];
        }
        return BigIntPoly(std::move(c));
    }

    friend BigIntPoly operator*(const BigIntPoly& a, const BigIntPoly& b) { return multiply(a, b); }

    friend BigIntPoly operator*(const BigInt& s, const BigIntPoly& a) {
        if (s == 0) return BigIntPoly{};
        std::vector<BigInt> c(a.coeffs.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = s * a.coeffs[i];
        return BigIntPoly(std::move(c));
    }

    /// x^k * p
    BigIntPoly shifted_up(size_t k) const {
        if (is_zero()) return {};
        std::vector<BigInt> c(coeffs.size() + k);
        for (size_t i = 0; i < coeffs.size(); ++i) c[i + k] = coeffs[i];
        return BigIntPoly(std::move(c));
    }

    static BigIntPoly multiply(const BigIntPoly& a, const BigIntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        size_t na = a.coeffs.size(), nb = b.coeffs.size();
        if (na * nb > 16384 && a.all_nonnegative() && b.all_nonnegative())
            return multiply_kronecker(a, b);
        std::vector<BigInt> c(na + nb - 1);
        for (size_t i = 0; i < na; ++i) {
            if (a.coeffs[i] == 0) continue;
            for (size_t j = 0; j < nb; ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
        }
        return BigIntPoly(std::move(c));
    }

    // Kronecker substitution: pack coefficients at a fixed limb stride, do one
    // big integer multiply, unpack. Valid for nonnegative coefficients.
    static BigIntPoly multiply_kronecker(const BigIntPoly& a, const BigIntPoly& b) {
        BigInt sa = 0, sb = 0;
        for (const auto& c : a.coeffs) sa += c;
        for (const auto& c : b.coeffs) sb += c;
        size_t bound_bits = bit_length(sa) + bit_length(sb) + 1;
        size_t stride = (bound_bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

        auto pack = [stride](const BigIntPoly& p) {
            std::vector<mp_limb_t> buf(p.coeffs.size() * stride, 0);
            for (size_t i = 0; i < p.coeffs.size(); ++i) {
                const auto z = p.coeffs[i].get_mpz_t();
                size_t ln = mpz_size(z);
                const mp_limb_t* src = mpz_limbs_read(z);
                std::copy(src, src + ln, buf.begin() + i * stride);
            }
            BigInt packed;
            mpz_import(packed.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
            return packed;
        };

        BigInt prod = pack(a) * pack(b);
        size_t nc = a.coeffs.size() + b.coeffs.size() - 1;
        std::vector<mp_limb_t> buf(nc * stride, 0);
        {
            const auto z = prod.get_mpz_t();
            size_t ln = mpz_size(z);
            const mp_limb_t* src = mpz_limbs_read(z);
            std::copy(src, src + std::min(ln, buf.size()), buf.begin());
        }
        std::vector<BigInt> c(nc);
        for (size_t i = 0; i < nc; ++i)
            mpz_import(c[i].get_mpz_t(), stride, -1, sizeof(mp_limb_t), 0, 0, buf.data() + i * stride);
        return BigIntPoly(std::move(c));
    }

    BigInt eval(const BigInt& x) const {
        BigInt r = 0;
        for (size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
        return r;
    }

    BigRational eval(const BigRational& x) const {
        BigRational r = 0;
        for (size_t i = coeffs.size(); i-- > 0;) r = r * x + BigRational(coeffs[i]);
        return r;
    }
};

/// Exact formal derivative.
inline BigIntPoly derivative(const BigIntPoly& p) {
    if (p.coeffs.size() <= 1) return {};
    std::vector<BigInt> c(p.coeffs.size() - 1);
    for (size_t j = 1; j < p.coeffs.size(); ++j) c[j - 1] = BigInt(static_cast<long>(j)) * p.coeffs[j];
    return BigIntPoly(std::move(c));
}

/// gcd of all coefficients, positive; 0 for the zero polynomial.
inline BigInt content(const BigIntPoly& p) {
    BigInt g = 0;
    for (const auto& c : p.coeffs) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline BigIntPoly primitive_part(const BigIntPoly& p) {
    if (p.is_zero()) return {};
    BigInt g = content(p);
    std::vector<BigInt> c(p.coeffs.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = p.coeffs[i] / g;
    return BigIntPoly(std::move(c));
}

namespace detail {

// Pseudo-remainder up to a factor lc(q)^e, which the primitive PRS removes
// anyway via content division.
inline BigIntPoly pseudo_rem(const BigIntPoly& p, const BigIntPoly& q) {
    BigIntPoly r = p;
    const BigInt& c = q.leading();
    long dq = q.degree();
    while (!r.is_zero() && r.degree() >= dq) {
        BigIntPoly s = (r.leading() * q).shifted_up(static_cast<size_t>(r.degree() - dq));
        r = c * r - s;
    }
    return r;
}

}  // namespace detail

/// Primitive gcd over the rationals, leading coefficient positive.
inline BigIntPoly poly_gcd(const BigIntPoly& a, const BigIntPoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
    BigIntPoly p = primitive_part(a), q = primitive_part(b);
    if (p.is_zero()) std::swap(p, q);
    while (!q.is_zero()) {
        BigIntPoly r = detail::pseudo_rem(p, q);
        p = std::move(q);
        q = primitive_part(r);
    }
    if (p.leading() < 0) p = BigInt(-1) * p;
    return p;
}

// ---------------------------------------------------------------------------

struct DyadicPoly {
    std::vector<DyadicRational> coeffs;  // coeffs[j] multiplies u^j

    DyadicPoly() = default;
    explicit DyadicPoly(std::vector<DyadicRational> c) : coeffs(std::move(c)) { trim(); }

    /// numerators / 2^log2_den, one shared denominator.
    static DyadicPoly from_common_den(const BigIntPoly& numerators, unsigned long log2_den) {
        std::vector<DyadicRational> c(numerators.coeffs.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = DyadicRational(numerators.coeffs[i], log2_den);
        return DyadicPoly(std::move(c));
    }

    void trim() {
        while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    DyadicRational coeff(size_t j) const { return j < coeffs.size() ? coeffs[j] : DyadicRational(); }

    friend bool operator==(const DyadicPoly& a, const DyadicPoly& b) { return a.coeffs == b.coeffs; }

    /// Common-denominator view: (integer polynomial, log2 denominator).
    std::pair<BigIntPoly, unsigned long> to_common_den() const {
        unsigned long e = 0;
        for (const auto& c : coeffs) e = std::max(e, c.log2_den);
        std::vector<BigInt> n(coeffs.size());
        for (size_t i = 0; i < coeffs.size(); ++i) n[i] = coeffs[i].num << (e - coeffs[i].log2_den);
        return {BigIntPoly(std::move(n)), e};
    }

    friend DyadicPoly operator+(const DyadicPoly& a, const DyadicPoly& b) {
        std::vector<DyadicRational> c(std::max(a.coeffs.size(), b.coeffs.size()));
        for (size_t i = 0; i < c.size(); ++i) {
            if (i < a.coeffs.size()) c[i] = c[i] + a.coeffs[i];
            if (i < b.coeffs.size()) c[i] = c[i] + b.coeffs[i];
        }
        return DyadicPoly(std::move(c));
    }

    friend DyadicPoly operator*(const DyadicPoly& a, const DyadicPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        auto [pa, ea] = a.to_common_den();
        auto [pb, eb] = b.to_common_den();
        return from_common_den(pa * pb, ea + eb);
    }

    friend DyadicPoly operator*(const DyadicRational& s, const DyadicPoly& a) {
        std::vector<DyadicRational> c(a.coeffs.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = s * a.coeffs[i];
        return DyadicPoly(std::move(c));
    }

    BigRational eval(const BigRational& x) const {
        BigRational r = 0;
        for (size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i].to_rational();
        return r;
    }
};

/// Substitute x -> x + s, expanding exactly (Horner over dyadic polynomials).
inline DyadicPoly compose_shift(const DyadicPoly& p, const DyadicRational& s) {
    DyadicPoly result;
    DyadicPoly lin(std::vector<DyadicRational>{s, DyadicRational(1)});  // x + s
    for (size_t i = p.coeffs.size(); i-- > 0;) {
        result = result * lin;
        if (!p.coeffs[i].is_zero()) {
            if (result.coeffs.empty()) result.coeffs.resize(1);
            result.coeffs[0] = result.coeffs[0] + p.coeffs[i];
            result.trim();
        }
    }
    return result;
}

}  // namespace euclid
