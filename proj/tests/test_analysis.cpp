#include <catch2/catch_amalgamated.hpp>

#include <euclid/analysis.hpp>

#include <random>

using namespace euclid;

TEST_CASE("egyptian fraction identity for euclid numbers") {
    // 1 = 1/2 + 1/(3-1)
    CHECK(egyptian_number_check(1));
    // 1 = 1/2 + 1/3 + 1/7 + 1/43 + 1/1806
    CHECK(egyptian_number_check(4));
    for (int n = 1; n <= 10; ++n) CHECK(egyptian_number_check(n));
    CHECK_THROWS_AS(egyptian_number_check(0), std::invalid_argument);
}

TEST_CASE("egyptian identity for euclid polynomials") {
    CHECK(egyptian_poly_check(1, BigRational(1)) == EgyptianOutcome::holds);
    // 1/2 = 1/3 + 1/7 + 1/42 with E_3(2) = 43
    CHECK(euclid_eval_exact_recurrence(3, BigRational(2)) == 43);
    CHECK(egyptian_poly_check(2, BigRational(2)) == EgyptianOutcome::holds);
    CHECK(egyptian_poly_check(5, BigRational(3, 2)) == EgyptianOutcome::holds);
    // E_1(-1) = 0 is a pole of the identity, a distinct outcome
    CHECK(egyptian_poly_check(3, BigRational(-1)) == EgyptianOutcome::pole);
    CHECK_THROWS_AS(egyptian_poly_check(2, BigRational(0)), std::invalid_argument);

    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 20) {
        BigRational lambda(static_cast<long>(rng() % 300) + 1, static_cast<long>(rng() % 100) + 1);
        lambda.canonicalize();
        if (lambda > 3) continue;
        auto out = egyptian_poly_check(5, lambda);
        CHECK(out != EgyptianOutcome::fails);
        if (out == EgyptianOutcome::holds) ++done;
    }
}

TEST_CASE("series probe classifications") {
    auto p1 = series_probe(Complex(1, 0), 25);
    CHECK(p1.classification == SeriesClass::converging);
    // partial sums approach 1 = sum 1/e_k
    CHECK(std::abs(p1.partial_sums.back() - Complex(1, 0)) < 1e-9);

    auto ph = series_probe(Complex(0.5, 0), 25);
    CHECK(ph.classification == SeriesClass::converging);
    auto p2 = series_probe(Complex(2, 0), 25);
    CHECK(p2.classification == SeriesClass::converging);
    CHECK(p2.overflow);  // E_k(2) overflows binary64 well before 25 terms

    auto pd = series_probe(Complex(-0.5, 0), 20);
    CHECK(pd.classification == SeriesClass::diverging);
    // E_k(-1/2) values: 3/4, 13/16, ... stay bounded, terms do not vanish
    CHECK(pd.term_magnitudes.back() > 0.9);

    auto ps = series_probe(Complex(0.1, 0), 10);
    CHECK(ps.classification == SeriesClass::converging);
}

TEST_CASE("euclid constant") {
    auto est = euclid_constant(10, 2048);
    CHECK(est.estimate == Catch::Approx(1.264).margin(5e-4));
    CHECK(est.floor_check_ok);
    CHECK(est.floor_check_max_n == 10);
    CHECK(est.estimate_str.substr(0, 5) == "1.264");

    // estimates sharpen as n grows
    auto e5 = euclid_constant(5, 2048);
    auto e8 = euclid_constant(8, 2048);
    CHECK(e8.digits_stable > e5.digits_stable);

    // deliberately starved precision fails the floor reconstruction and says so
    auto starved = euclid_constant(12, 64);
    CHECK_FALSE(starved.floor_check_ok);

    CHECK_THROWS_AS(euclid_constant(2, 2048), std::invalid_argument);
}

TEST_CASE("floor formula reproduces the sequence") {
    auto est = euclid_constant(10, 2048);
    REQUIRE(est.floor_check_ok);
    // spot values from the estimate double
    BigFloat E(0.0, 2048);
    auto full = euclid_constant(10, 2048);
    CHECK(full.floor_check_max_n >= 5);  // covers 2, 3, 7, 43, 1807
}

TEST_CASE("line fit sanity") {
    // exact K = d data must fit slope 1
    std::vector<std::array<double, 2>> pts;
    for (int d : {2, 4, 8, 16, 32}) pts.push_back({std::log(d), std::log(d)});
    auto f = fit_line(pts);
    CHECK(f.slope == Catch::Approx(1.0));
    CHECK(f.r2 == Catch::Approx(1.0));
    CHECK_THROWS_AS(fit_line({{0, 0}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("condition slope fit over a reduced range") {
    auto f = condition_slope_fit(2, 8, 2);
    REQUIRE(f.points.size() == 7);
    CHECK(f.slope > 0.0);
    CHECK(f.slope < 2.0);
    CHECK(f.r2 > 0.8);
    CHECK_THROWS_AS(condition_slope_fit(1, 8), std::invalid_argument);
    CHECK_THROWS_AS(condition_slope_fit(5, 5), std::invalid_argument);
}

TEST_CASE("conditioning comparison at k = 6") {
    ComparisonOptions opts;
    opts.grid = GridSpec{-1.8, 0.8, -1.3, 1.3, 220, 220};
    opts.threads = 2;
    auto row = conditioning_comparison(6, opts);

    // paper bands with one decade of tolerance on either side
    CHECK(row.matrix.lo >= 1e-3);
    CHECK(row.matrix.hi <= 1.0);
    CHECK(row.shifted.lo >= 1e-4);
    CHECK(row.shifted.hi <= 1e-1);
    CHECK(row.monomial.lo >= std::pow(10.0, -10.5));
    CHECK(row.monomial.hi <= std::pow(10.0, -7.5));

    // strict ordering: matrix > shifted > monomial
    CHECK(row.matrix.log10_mid() > row.shifted.log10_mid());
    CHECK(row.shifted.log10_mid() > row.monomial.log10_mid());

    // the matrix/monomial gap is at least 10^6 (Table 1: 1e-2 vs 1e-9.5)
    CHECK(row.matrix.log10_mid() - row.monomial.log10_mid() >= 6.0);
}

TEST_CASE("similarity criteria") {
    auto m = build_companion(6);
    auto roots = eigenvalues(m);
    GridSpec g{-1.8, 0.8, -1.3, 1.3, 220, 220};
    auto f = pseudospectrum_field(m, g, 2);
    auto rep = similarity_criteria(f, roots, 1e-2, 1e-1);
    CHECK(rep.individual_circles);
    CHECK(rep.merged_regions);
    CHECK(rep.spacing_about_1pct);
    CHECK(rep.all_met());

    ScalarField constant;
    constant.spec = GridSpec{0, 1, 0, 1, 16, 16};
    constant.values.assign(constant.spec.count(), 3.0);
    auto bad = similarity_criteria(constant, roots, 1e-2, 1e-1);
    CHECK_FALSE(bad.all_met());
}

TEST_CASE("verification suite") {
    SuiteOptions opts;
    opts.kmax = 6;
    opts.egyptian_n = 6;
    opts.random_lambdas = 5;
    auto results = run_verification_suite(opts);
    CHECK(results.size() >= 14);
    CHECK(suite_all_passed(results));
    auto j = suite_report_json(results);
    CHECK(j.contains("charpoly"));
    CHECK(j["charpoly"]["status"] == "pass");
    CHECK(j["charpoly"].contains("elapsed_ms"));
    auto text = suite_summary(results);
    CHECK(text.find("[pass] charpoly") != std::string::npos);

    SuiteOptions one;
    one.kmax = 4;
    one.only = "egyptian";
    auto single = run_verification_suite(one);
    REQUIRE(single.size() == 1);
    CHECK(single[0].name == "egyptian");
    CHECK(single[0].status == "pass");
}
