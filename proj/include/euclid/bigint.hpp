#pragma once

// Exact integer and rational arithmetic, backed by GMP. BigInt is kept in
// GMP's canonical form (no leading zero limbs, zero is nonnegative), which
// matches the invariants the rest of the library relies on.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace euclid {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt bigint_from_string(const std::string& s) {
    BigInt v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("not a decimal integer: " + s);
    return v;
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline std::string to_string(const BigRational& v) {
    BigRational c(v);
    c.canonicalize();
    return c.get_str(10);
}

inline BigRational rational_from_string(const std::string& s) {
    BigRational v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    v.canonicalize();
    return v;
}

/// 2^e as a BigInt.
inline BigInt pow2(unsigned long e) {
    BigInt v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, e);
    return v;
}

inline size_t bit_length(const BigInt& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

inline size_t decimal_digits(const BigInt& v) { return mpz_sizeinbase(v.get_mpz_t(), 10); }

/// Number of trailing zero bits; 0 for odd or zero input.
inline unsigned long trailing_zero_bits(const BigInt& v) {
    if (v == 0) return 0;
    return mpz_scan1(v.get_mpz_t(), 0);
}

}  // namespace euclid
