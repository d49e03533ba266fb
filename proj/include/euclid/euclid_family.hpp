#pragma once

// Euclid numbers e_1 = 2, e_{n+1} = e_n(e_n - 1) + 1 and the polynomial
// family E_1 = x + 1, E_{k+1} = E_k(E_k - 1) + 1, together with the shifted
// basis u = x + 1/2 and coefficient-level diagnostics.

#include <euclid/bigint.hpp>
#include <euclid/dyadic.hpp>
#include <euclid/poly.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace euclid {

using Complex = std::complex<double>;
using json = nlohmann::ordered_json;

/// Shortest round-trippable decimal form, used by every CSV/JSON emitter so
/// that identical runs produce identical bytes.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// [e_1, ..., e_n]. Exact; e_20 already has about 1e5 decimal digits, so the
/// practical limit is memory, not correctness.
inline std::vector<BigInt> euclid_numbers(int n_max) {
    if (n_max < 1) throw std::invalid_argument("euclid_numbers: n_max must be >= 1");
    std::vector<BigInt> e;
    e.reserve(static_cast<size_t>(n_max));
    e.emplace_back(2);
    for (int n = 1; n < n_max; ++n) e.push_back(e.back() * (e.back() - 1) + 1);
    return e;
}

/// [E_1, ..., E_k] via the two-term squaring form E_{j+1} = E_j(E_j - 1) + 1.
inline std::vector<BigIntPoly> euclid_polys(int k) {
    if (k < 1) throw std::invalid_argument("euclid_polys: k must be >= 1");
    std::vector<BigIntPoly> ps;
    ps.reserve(static_cast<size_t>(k));
    ps.push_back(BigIntPoly({BigInt(1), BigInt(1)}));  // x + 1
    const BigIntPoly one = BigIntPoly::constant(1);
    for (int j = 1; j < k; ++j) {
        const BigIntPoly& p = ps.back();
        ps.push_back(p * (p - one) + one);
    }
    return ps;
}

inline BigIntPoly euclid_poly(int k) { return euclid_polys(k).back(); }

/// Mandelbrot family p_1 = 1, p_{n+1} = x p_n^2 + 1.
inline std::vector<BigIntPoly> mandelbrot_polys(int n) {
    if (n < 1) throw std::invalid_argument("mandelbrot_polys: n must be >= 1");
    std::vector<BigIntPoly> ps;
    ps.reserve(static_cast<size_t>(n));
    ps.push_back(BigIntPoly::constant(1));
    const BigIntPoly one = BigIntPoly::constant(1);
    for (int j = 1; j < n; ++j) {
        const BigIntPoly& p = ps.back();
        ps.push_back((p * p).shifted_up(1) + one);
    }
    return ps;
}

inline BigIntPoly mandelbrot_poly(int n) { return mandelbrot_polys(n).back(); }

/// E_k in the shifted variable u = x + 1/2, exact dyadic coefficients.
/// Computed through f_1 = u, f_{j+1} = f_j^2 + 1/4, E_k = f_k + 1/2; for
/// k >= 2 only even powers of u appear.
inline DyadicPoly shifted_euclid_poly(int k) {
    if (k < 1) throw std::invalid_argument("shifted_euclid_poly: k must be >= 1");
    // f = N / 2^e with one shared denominator.
    BigIntPoly num({BigInt(0), BigInt(1)});
    unsigned long e = 0;
    for (int j = 1; j < k; ++j) {
        BigIntPoly sq = num * num;
        unsigned long e2 = std::max<unsigned long>(2 * e, 2);
        if (e2 > 2 * e) sq = pow2(e2 - 2 * e) * sq;
        if (sq.coeffs.empty()) sq.coeffs.resize(1);
        sq.coeffs[0] += pow2(e2 - 2);
        num = std::move(sq);
        e = e2;
    }
    if (e == 0) {
        num = BigInt(2) * num;
        e = 1;
    }
    num.coeffs[0] += pow2(e - 1);
    return DyadicPoly::from_common_den(num, e);
}

inline BigRational eval_exact(const BigIntPoly& p, const BigRational& x) { return p.eval(x); }
inline BigRational eval_exact(const DyadicPoly& p, const BigRational& x) { return p.eval(x); }

struct EvalResult {
    Complex value{0.0, 0.0};
    bool overflow = false;
};

/// Coefficient-based Horner evaluation in binary64. Coefficients round to
/// double at call time; expect precision loss for k >= 7 and overflow for
/// very large k (reported via the flag, never propagated silently).
inline EvalResult eval_complex(const BigIntPoly& p, Complex z) {
    Complex r{0.0, 0.0};
    for (size_t i = p.coeffs.size(); i-- > 0;) {
        r = r * z + Complex(p.coeffs[i].get_d(), 0.0);
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return {r, true};
    }
    return {r, false};
}

inline double dyadic_to_double(const DyadicRational& d) {
    return std::ldexp(d.num.get_d(), -static_cast<long>(d.log2_den));
}

inline EvalResult eval_complex(const DyadicPoly& p, Complex u) {
    Complex r{0.0, 0.0};
    for (size_t i = p.coeffs.size(); i-- > 0;) {
        r = r * u + Complex(dyadic_to_double(p.coeffs[i]), 0.0);
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return {r, true};
    }
    return {r, false};
}

struct RecurrenceEval {
    Complex value{0.0, 0.0};
    Complex derivative{0.0, 0.0};
    bool overflow = false;
};

/// E_k(z) and E_k'(z) in O(k) arithmetic, no coefficients involved:
/// v <- v(v-1)+1 and d <- (2v-1)d. This is the numerically trustworthy
/// evaluation path near the roots.
inline RecurrenceEval euclid_eval_recurrence(int k, Complex z) {
    if (k < 1) throw std::invalid_argument("euclid_eval_recurrence: k must be >= 1");
    Complex v = z + 1.0;
    Complex d{1.0, 0.0};
    for (int j = 1; j < k; ++j) {
        d = (2.0 * v - 1.0) * d;
        v = v * (v - 1.0) + 1.0;
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return {v, d, true};
    }
    return {v, d, false};
}

/// Exact rational value of E_k(x) by the same recurrence.
inline BigRational euclid_eval_exact_recurrence(int k, const BigRational& x) {
    if (k < 1) throw std::invalid_argument("euclid_eval_exact_recurrence: k must be >= 1");
    BigRational v = x + 1;
    for (int j = 1; j < k; ++j) v = v * (v - 1) + 1;
    return v;
}

struct CondResult {
    double value = 0.0;
    bool overflow = false;
};

/// B_k(|z|) = sum_j E_{j,k} |z|^j. All coefficients are positive, so this is
/// just E_k evaluated at |z|, which the recurrence gives without coefficients.
inline CondResult poly_condition_B(int k, Complex z) {
    double r = std::abs(z);
    Complex v{r, 0.0};
    auto res = euclid_eval_recurrence(k, v);
    return {res.value.real(), res.overflow};
}

/// Shifted-basis analogue: sum_j |v_j| |u|^j over the dyadic coefficients.
inline CondResult shifted_condition_B(const DyadicPoly& p, double u) {
    if (u < 0) throw std::invalid_argument("shifted_condition_B: u must be >= 0");
    double r = 0.0;
    for (size_t i = p.coeffs.size(); i-- > 0;) r = r * u + std::abs(dyadic_to_double(p.coeffs[i]));
    if (!std::isfinite(r)) return {r, true};
    return {r, false};
}

inline CondResult shifted_condition_B(int k, double u) { return shifted_condition_B(shifted_euclid_poly(k), u); }

struct UnimodalityReport {
    bool unimodal = false;
    size_t peak_lo = 0;  // plateau of the peak, inclusive indices
    size_t peak_hi = 0;
};

/// Nondecreasing to a (possibly plateaued) peak, then nonincreasing.
inline UnimodalityReport unimodality_check(const BigIntPoly& p) {
    const auto& c = p.coeffs;
    if (c.empty()) throw std::invalid_argument("unimodality_check: zero polynomial");
    for (const auto& v : c)
        if (v <= 0) throw std::invalid_argument("unimodality_check: coefficients must be positive");
    size_t i = 0;
    while (i + 1 < c.size() && c[i] <= c[i + 1]) ++i;
    for (size_t j = i; j + 1 < c.size(); ++j)
        if (c[j] < c[j + 1]) return {false, 0, 0};
    size_t lo = i, hi = i;
    while (lo > 0 && c[lo - 1] == c[i]) --lo;
    while (hi + 1 < c.size() && c[hi + 1] == c[i]) ++hi;
    return {true, lo, hi};
}

/// max coeff of E_{k+1} >= (max coeff of E_k)^2, exact.
inline bool coeff_growth_check(int k) {
    if (k < 1) throw std::invalid_argument("coeff_growth_check: k must be >= 1");
    auto ps = euclid_polys(k + 1);
    BigInt mk = ps[static_cast<size_t>(k) - 1].max_abs_coeff();
    BigInt mk1 = ps[static_cast<size_t>(k)].max_abs_coeff();
    return mk1 >= mk * mk;
}

// --- serialization ---------------------------------------------------------

/// {"basis": "monomial", "k": k, "coeffs": [...decimal strings...]}
inline json poly_to_json(const BigIntPoly& p, int k) {
    json j;
    j["basis"] = "monomial";
    j["k"] = k;
    json coeffs = json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(c.get_str(10));
    j["coeffs"] = coeffs;
    return j;
}

inline json poly_to_json(const DyadicPoly& p, int k) {
    json j;
    j["basis"] = "shifted";
    j["k"] = k;
    json coeffs = json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(c.to_string());
    j["coeffs"] = coeffs;
    return j;
}

inline BigIntPoly bigint_poly_from_json(const json& j) {
    if (j.at("basis") != "monomial") throw std::invalid_argument("expected monomial basis");
    std::vector<BigInt> c;
    for (const auto& s : j.at("coeffs")) c.push_back(bigint_from_string(s.get<std::string>()));
    return BigIntPoly(std::move(c));
}

inline DyadicPoly dyadic_poly_from_json(const json& j) {
    if (j.at("basis") != "shifted") throw std::invalid_argument("expected shifted basis");
    std::vector<DyadicRational> c;
    for (const auto& s : j.at("coeffs")) c.push_back(dyadic_from_string(s.get<std::string>()));
    return DyadicPoly(std::move(c));
}

}  // namespace euclid
