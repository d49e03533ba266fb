#include <catch2/catch_amalgamated.hpp>

#include <euclid/euclid_family.hpp>

#include "support/oracles.hpp"

#include <complex>
#include <random>

using namespace euclid;

static BigIntPoly poly_from_longs(std::initializer_list<long> cs) {
    std::vector<BigInt> v;
    for (long c : cs) v.emplace_back(c);
    return BigIntPoly(std::move(v));
}

TEST_CASE("euclid numbers match the known sequence") {
    auto e = euclid_numbers(5);
    REQUIRE(e.size() == 5);
    CHECK(e[0] == 2);
    CHECK(e[1] == 3);
    CHECK(e[2] == 7);
    CHECK(e[3] == 43);
    CHECK(e[4] == 1807);

    CHECK(euclid_numbers(1) == std::vector<BigInt>{BigInt(2)});
    CHECK_THROWS_AS(euclid_numbers(0), std::invalid_argument);
}

TEST_CASE("euclid numbers agree with the product-form oracle") {
    auto fast = euclid_numbers(9);
    auto slow = oracle::euclid_numbers_product_form(9);
    CHECK(fast == slow);
    // e_7 spelled out: e_6 = 1807*1806 + 1, e_7 = e_6(e_6 - 1) + 1
    CHECK(fast[5] == 3263443);
    CHECK(fast[6] == BigInt(3263443) * 3263442 + 1);
}

TEST_CASE("euclid polynomials: displayed coefficient lists") {
    CHECK(euclid_poly(1) == poly_from_longs({1, 1}));
    CHECK(euclid_poly(2) == poly_from_longs({1, 1, 1}));
    CHECK(euclid_poly(3) == poly_from_longs({1, 1, 2, 2, 1}));
    CHECK(euclid_poly(4) == poly_from_longs({1, 1, 3, 6, 9, 10, 8, 4, 1}));
}

TEST_CASE("euclid polynomials: degree, endpoints, positivity") {
    auto ps = euclid_polys(10);
    for (int k = 1; k <= 10; ++k) {
        const auto& p = ps[static_cast<size_t>(k - 1)];
        CHECK(p.degree() == (1L << (k - 1)));
        CHECK(p.coeffs.front() == 1);
        CHECK(p.coeffs.back() == 1);
        for (const auto& c : p.coeffs) CHECK(c >= 1);
        CHECK(p.eval(BigInt(0)) == 1);
    }
}

TEST_CASE("squaring form equals product form up to k = 10") {
    auto fast = euclid_polys(10);
    auto slow = oracle::euclid_polys_product_form(10);
    for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
}

TEST_CASE("E_k(1) = e_k") {
    auto ps = euclid_polys(12);
    auto e = euclid_numbers(12);
    for (int k = 1; k <= 12; ++k)
        CHECK(ps[static_cast<size_t>(k - 1)].eval(BigInt(1)) == e[static_cast<size_t>(k - 1)]);
}

TEST_CASE("mandelbrot polynomials") {
    CHECK(mandelbrot_poly(1) == poly_from_longs({1}));
    CHECK(mandelbrot_poly(2) == poly_from_longs({1, 1}));
    CHECK(mandelbrot_poly(3) == poly_from_longs({1, 1, 2, 1}));  // x(x+1)^2 + 1
    CHECK(mandelbrot_poly(4).degree() == 7);
    CHECK(mandelbrot_poly(4).eval(BigInt(0)) == 1);
}

TEST_CASE("shifted polynomials: displayed dyadic coefficients") {
    auto e2 = shifted_euclid_poly(2);
    REQUIRE(e2.coeffs.size() == 3);
    CHECK(e2.coeff(0) == DyadicRational(BigInt(3), 2));
    CHECK(e2.coeff(1).is_zero());
    CHECK(e2.coeff(2) == DyadicRational(BigInt(1), 0));

    auto e3 = shifted_euclid_poly(3);
    CHECK(e3.coeff(0) == DyadicRational(BigInt(13), 4));
    CHECK(e3.coeff(2) == DyadicRational(BigInt(1), 1));
    CHECK(e3.coeff(4) == DyadicRational(BigInt(1), 0));

    auto e4 = shifted_euclid_poly(4);
    CHECK(e4.coeff(0) == DyadicRational(BigInt(217), 8));
    CHECK(e4.coeff(2) == DyadicRational(BigInt(5), 4));
    CHECK(e4.coeff(4) == DyadicRational(BigInt(7), 3));
    CHECK(e4.coeff(6) == DyadicRational(BigInt(1), 0));
    CHECK(e4.coeff(8) == DyadicRational(BigInt(1), 0));

    auto e5 = shifted_euclid_poly(5);
    CHECK(e5.degree() == 16);
    CHECK(e5.coeff(16) == DyadicRational(BigInt(1), 0));
    CHECK(e5.coeff(14) == DyadicRational(BigInt(2), 0));
    CHECK(e5.coeff(0) == DyadicRational(BigInt(57073), 16));
}

TEST_CASE("shifted polynomials: even powers only, shift back recovers") {
    for (int k = 2; k <= 10; ++k) {
        auto s = shifted_euclid_poly(k);
        for (size_t j = 1; j < s.coeffs.size(); j += 2) CHECK(s.coeffs[j].is_zero());
    }
    for (int k = 1; k <= 10; ++k) {
        // u = x + 1/2, so substituting u -> x + 1/2 must reproduce E_k exactly
        auto recovered = compose_shift(shifted_euclid_poly(k), DyadicRational(BigInt(1), 1));
        auto expect = euclid_poly(k);
        REQUIRE(recovered.coeffs.size() == expect.coeffs.size());
        for (size_t j = 0; j < recovered.coeffs.size(); ++j) {
            CHECK(recovered.coeffs[j].is_integer());
            CHECK(recovered.coeffs[j].num == expect.coeffs[j]);
        }
    }
}

TEST_CASE("exact evaluation") {
    CHECK(eval_exact(euclid_poly(3), BigRational(1)) == 7);
    CHECK(eval_exact(euclid_poly(1), BigRational(0)) == 1);
    CHECK(eval_exact(euclid_poly(4), BigRational(1)) == 43);
    CHECK(eval_exact(shifted_euclid_poly(2), BigRational(1, 2)) == 1);  // E_2(u=1/2) = E_2(0) = 1
    // recurrence evaluation agrees with coefficient evaluation at rationals
    BigRational x(3, 7);
    for (int k = 1; k <= 8; ++k)
        CHECK(euclid_eval_exact_recurrence(k, x) == eval_exact(euclid_poly(k), x));
}

TEST_CASE("complex evaluation") {
    auto r1 = eval_complex(euclid_poly(2), Complex(0, 0));
    CHECK(!r1.overflow);
    CHECK(r1.value == Complex(1, 0));

    Complex omega(-0.5, std::sqrt(3.0) / 2.0);
    auto r2 = eval_complex(euclid_poly(2), omega);
    CHECK(std::abs(r2.value) < 1e-14);

    auto r3 = eval_complex(euclid_poly(1), Complex(-1, 0));
    CHECK(r3.value == Complex(0, 0));

    // overflow is flagged, not silently propagated
    auto big = eval_complex(euclid_poly(12), Complex(400.0, 0));
    CHECK(big.overflow);
}

TEST_CASE("recurrence evaluation and derivative") {
    Complex z(0.3, -0.2);
    auto ev = euclid_eval_recurrence(4, z);
    auto direct = eval_complex(euclid_poly(4), z);
    CHECK(std::abs(ev.value - direct.value) < 1e-12);
    auto dd = eval_complex(derivative(euclid_poly(4)), z);
    CHECK(std::abs(ev.derivative - dd.value) < 1e-12);
}

TEST_CASE("condition number B") {
    auto b = poly_condition_B(2, Complex(0, 1));
    CHECK(!b.overflow);
    CHECK(b.value == Catch::Approx(3.0));
    for (int k = 1; k <= 8; ++k) CHECK(poly_condition_B(k, Complex(0, 0)).value == Catch::Approx(1.0));
    CHECK(poly_condition_B(3, Complex(1, 0)).value == Catch::Approx(7.0));
}

TEST_CASE("shifted condition number") {
    CHECK(shifted_condition_B(2, 0.0).value == Catch::Approx(0.75));
    CHECK(shifted_condition_B(2, 1.0).value == Catch::Approx(1.75));
    CHECK(shifted_condition_B(1, 0.0).value == Catch::Approx(0.5));
    CHECK_THROWS_AS(shifted_condition_B(2, -1.0), std::invalid_argument);
}

TEST_CASE("polynomial gcd") {
    auto one = BigIntPoly::constant(1);
    CHECK(poly_gcd(euclid_poly(2), euclid_poly(3)) == one);
    auto g = poly_gcd(euclid_poly(3), euclid_poly(3));
    CHECK(g == primitive_part(euclid_poly(3)));
    CHECK(poly_gcd(euclid_poly(4), derivative(euclid_poly(4))) == one);

    auto ps = euclid_polys(8);
    for (int n = 2; n <= 8; ++n)
        for (int m = 1; m < n; ++m)
            CHECK(poly_gcd(ps[static_cast<size_t>(n - 1)], ps[static_cast<size_t>(m - 1)]) == one);
    for (int k = 1; k <= 8; ++k)
        CHECK(poly_gcd(ps[static_cast<size_t>(k - 1)], derivative(ps[static_cast<size_t>(k - 1)])) == one);
}

TEST_CASE("derivative recurrence identity") {
    CHECK(derivative(euclid_poly(1)) == BigIntPoly::constant(1));
    CHECK(derivative(euclid_poly(2)) == poly_from_longs({1, 2}));
    // E_3' = (2 E_2 - 1) E_2'
    auto lhs = derivative(euclid_poly(3));
    auto rhs = (BigInt(2) * euclid_poly(2) - BigIntPoly::constant(1)) * derivative(euclid_poly(2));
    CHECK(lhs == rhs);
    for (int k = 2; k <= 7; ++k) {
        auto l = derivative(euclid_poly(k + 1));
        auto r = (BigInt(2) * euclid_poly(k) - BigIntPoly::constant(1)) * derivative(euclid_poly(k));
        CHECK(l == r);
    }
}

TEST_CASE("unimodality") {
    auto rep = unimodality_check(euclid_poly(4));
    CHECK(rep.unimodal);
    CHECK(rep.peak_lo == 5);
    CHECK(rep.peak_hi == 5);

    CHECK_FALSE(unimodality_check(poly_from_longs({1, 2, 1, 2, 1})).unimodal);
    CHECK(unimodality_check(euclid_poly(8)).unimodal);
    CHECK(unimodality_check(poly_from_longs({1, 3, 3, 1})).unimodal);  // plateau
    CHECK_THROWS_AS(unimodality_check(poly_from_longs({1, -1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(unimodality_check(poly_from_longs({1, 0, 1})), std::invalid_argument);
}

TEST_CASE("coefficient growth: max coeff squares") {
    CHECK(coeff_growth_check(1));
    CHECK(coeff_growth_check(3));  // max(E_4) = 10 >= max(E_3)^2 = 4
    CHECK(coeff_growth_check(6));
    for (int k = 1; k <= 9; ++k) CHECK(coeff_growth_check(k));
}

TEST_CASE("json serialization round trips") {
    auto p = euclid_poly(7);  // coefficients beyond 64-bit range
    auto j = poly_to_json(p, 7);
    CHECK(j["basis"] == "monomial");
    CHECK(bigint_poly_from_json(j) == p);

    auto s = shifted_euclid_poly(5);
    auto js = poly_to_json(s, 5);
    CHECK(js["basis"] == "shifted");
    CHECK(dyadic_poly_from_json(js) == s);

    auto j3 = poly_to_json(shifted_euclid_poly(3), 3);
    std::vector<std::string> expect{"13/16", "0", "1/2", "0", "1"};
    REQUIRE(j3["coeffs"].size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) CHECK(j3["coeffs"][i] == expect[i]);
}

TEST_CASE("dyadic rational canonical form") {
    DyadicRational d(BigInt(6), 3);  // 6/8 -> 3/4
    CHECK(d.num == 3);
    CHECK(d.log2_den == 2);
    DyadicRational z(BigInt(0), 5);
    CHECK(z.log2_den == 0);
    CHECK(dyadic_from_string("13/16") == DyadicRational(BigInt(13), 4));
    CHECK(dyadic_from_string("-3/4") == DyadicRational(BigInt(-3), 2));
    CHECK(dyadic_from_string("7") == DyadicRational(BigInt(7), 0));
    CHECK_THROWS_AS(dyadic_from_string("1/3"), std::invalid_argument);
    CHECK((DyadicRational(BigInt(1), 1) + DyadicRational(BigInt(1), 2)).to_string() == "3/4");
    CHECK((DyadicRational(BigInt(3), 2) * DyadicRational(BigInt(2), 0)).to_string() == "3/2");
}

TEST_CASE("kronecker and schoolbook multiplication agree") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<BigInt> a(200), b(150);
        for (auto& c : a) c = BigInt(static_cast<unsigned long>(rng() % 1000003));
        for (auto& c : b) c = BigInt(static_cast<unsigned long>(rng() % 1000003));
        BigIntPoly pa(a), pb(b);
        auto fast = BigIntPoly::multiply_kronecker(pa, pb);
        // schoolbook reference
        std::vector<BigInt> ref(a.size() + b.size() - 1);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) ref[i + j] += pa.coeffs[i] * pb.coeffs[j];
        CHECK(fast == BigIntPoly(ref));
    }
}
