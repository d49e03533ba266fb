#include <catch2/catch_amalgamated.hpp>

#include <euclid/fields.hpp>
#include <euclid/spectra.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <random>

using namespace euclid;

namespace {

// Dense SVD oracle for sigma_min, an entirely separate route.
double svd_oracle(const CompanionMatrix& m, Complex z) {
    int n = m.dim();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& t : m.entries()) a(t.row, t.col) = Complex(t.value, 0);
    a = Complex(z.real(), z.imag()) * Eigen::MatrixXcd::Identity(n, n) - a;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues()(n - 1);
}

}  // namespace

TEST_CASE("sigma_min basics") {
    auto e1 = build_companion(1);
    CHECK(sigma_min(e1, Complex(0, 0)) == Catch::Approx(1.0));

    auto e2 = build_companion(2);
    for (const auto& z : eigenvalues(e2)) CHECK(sigma_min(e2, z) < 1e-8);
}

TEST_CASE("sigma_min against a dense SVD oracle") {
    auto e6 = build_companion(6);
    CHECK(sigma_min(e6, Complex(10, 0)) ==
          Catch::Approx(svd_oracle(e6, Complex(10, 0))).epsilon(1e-6));

    auto e5 = build_companion(5);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 8; ++t) {
        Complex z(u(rng), u(rng));
        double mine = sigma_min(e5, z);
        double ref = svd_oracle(e5, z);
        CHECK(mine == Catch::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("sigma_min vanishes only at eigenvalues") {
    auto m = build_companion(6);
    auto eig = eigenvalues(m);
    for (const auto& z : eig) CHECK(sigma_min(m, z) < 1e-8);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.8, 0.8);
    std::uniform_real_distribution<double> v(-1.3, 1.3);
    int checked = 0;
    for (int t = 0; t < 200 && checked < 100; ++t) {
        Complex z(u(rng), v(rng));
        double dist = 1e300;
        for (const auto& e : eig) dist = std::min(dist, std::abs(z - e));
        if (dist < 1e-2) continue;  // too close to the spectrum for the claim
        ++checked;
        CHECK(sigma_min(m, z) > 1e-8);
    }
    CHECK(checked == 100);
}

TEST_CASE("pseudospectrum field") {
    auto e1 = build_companion(1);
    GridSpec g1{0.0, 0.0, 0.0, 0.0, 1, 1};
    auto f1 = pseudospectrum_field(e1, g1);
    CHECK(f1.values.size() == 1);
    CHECK(f1.values[0] == Catch::Approx(1.0));

    // the default window and resolution resolve the spectrum to < 1e-3
    auto e6 = build_companion(6);
    GridSpec g;
    auto f = pseudospectrum_field(e6, g, 2);
    double mn = *std::min_element(f.values.begin(), f.values.end());
    CHECK(mn < 1e-3);

    // corners of a half-width-3 box are far from the spectrum
    GridSpec far{-3.5, 2.5, -3.0, 3.0, 2, 2};
    auto fc = pseudospectrum_field(e6, far);
    for (double v : fc.values) CHECK(v > 1.0);
}

TEST_CASE("pseudospectrum field is 1-Lipschitz on adjacent nodes") {
    auto e6 = build_companion(6);
    GridSpec g{-1.8, 0.8, -1.3, 1.3, 90, 90};
    auto f = pseudospectrum_field(e6, g, 2);
    std::mt19937_64 rng(77);
    double hx = (g.re_max - g.re_min) / (g.nx - 1);
    double hy = (g.im_max - g.im_min) / (g.ny - 1);
    for (int t = 0; t < 2000; ++t) {
        int i = static_cast<int>(rng() % static_cast<uint64_t>(g.nx - 1));
        int j = static_cast<int>(rng() % static_cast<uint64_t>(g.ny - 1));
        bool horiz = rng() & 1;
        double a = f.at(i, j);
        double b = horiz ? f.at(i + 1, j) : f.at(i, j + 1);
        double dist = horiz ? hx : hy;
        CHECK(std::abs(a - b) <= dist * (1 + 1e-9) + 1e-12);
    }
}

TEST_CASE("pseudozero field vanishes at roots and is conjugate symmetric") {
    for (int k : {2, 4}) {
        for (const auto& z : eigenvalues(build_companion(k))) {
            auto v = pseudozero_value(k, PolyBasis::monomial, z);
            CHECK(!v.overflow);
            CHECK(v.value < 1e-14);
            auto vs = pseudozero_value(k, PolyBasis::shifted, z);
            CHECK(vs.value < 1e-13);
        }
    }
    GridSpec g{-1.5, 0.5, -1.0, 1.0, 41, 41};
    auto f = pseudozero_field(6, PolyBasis::monomial, g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            int jm = g.ny - 1 - j;
            CHECK(f.at(i, j) == f.at(i, jm));
        }
}

TEST_CASE("monomial pseudozero midpoint band at k = 6") {
    // midpoints between adjacent roots sit where the contours first merge
    auto eig = eigenvalues(build_companion(6));
    std::sort(eig.begin(), eig.end(), [](Complex a, Complex b) {
        return std::arg(a + 0.5) < std::arg(b + 0.5);
    });
    double mn = 1e300;
    for (size_t i = 0; i < eig.size(); ++i) {
        Complex mid = 0.5 * (eig[i] + eig[(i + 1) % eig.size()]);
        auto v = pseudozero_value(6, PolyBasis::monomial, mid);
        REQUIRE(!v.overflow);
        mn = std::min(mn, v.value);
    }
    CHECK(mn > std::pow(10.0, -10.5));
    CHECK(mn < std::pow(10.0, -7.5));
}

TEST_CASE("extended precision pseudozero matches binary64 where both work") {
    GridSpec g{-1.2, 0.2, -0.9, 0.9, 11, 11};
    auto f64 = pseudozero_field(6, PolyBasis::monomial, g);
    auto fmp = pseudozero_field(6, PolyBasis::monomial, g, {.precision_bits = 192});
    CHECK(fmp.precision_bits_used == 192);
    for (size_t i = 0; i < f64.values.size(); ++i) {
        if (f64.values[i] > 1e-250)
            CHECK(f64.values[i] == Catch::Approx(fmp.values[i]).epsilon(1e-9));
    }
    // automatic engagement for k >= 7 monomial
    GridSpec tiny{-1.0, -0.8, 0.1, 0.3, 3, 3};
    auto f7 = pseudozero_field(7, PolyBasis::monomial, tiny);
    CHECK(f7.precision_bits_used >= 192);
    auto f7s = pseudozero_field(7, PolyBasis::shifted, tiny);
    CHECK(f7s.precision_bits_used == 0);
}

TEST_CASE("contours: trivial and synthetic") {
    ScalarField constant;
    constant.spec = GridSpec{0, 1, 0, 1, 8, 8};
    constant.kind = FieldKind::pseudospectrum;
    constant.values.assign(constant.spec.count(), 0.5);
    auto cs = contour_extract(constant, {2.0});
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].lines.empty());
    CHECK_THROWS_AS(contour_extract(constant, {-1.0}), std::invalid_argument);

    // f = |z| on a grid around the origin: the level-1 contour is the unit circle
    ScalarField radial;
    radial.spec = GridSpec{-1.6, 1.6, -1.6, 1.6, 161, 161};
    radial.kind = FieldKind::pseudospectrum;
    radial.values.resize(radial.spec.count());
    for (int j = 0; j < radial.spec.ny; ++j)
        for (int i = 0; i < radial.spec.nx; ++i)
            radial.values[static_cast<size_t>(j) * radial.spec.nx + i] =
                std::abs(radial.spec.node(i, j));
    auto rc = contour_extract(radial, {1.0});
    REQUIRE(rc.size() == 1);
    REQUIRE_FALSE(rc[0].lines.empty());
    size_t npts = 0;
    for (const auto& line : rc[0].lines) {
        CHECK(line.closed);
        for (const auto& p : line.points) {
            CHECK(std::hypot(p[0], p[1]) == Catch::Approx(1.0).margin(0.02));
            ++npts;
        }
    }
    CHECK(npts > 100);
}

TEST_CASE("every eigenvalue enclosed by an eps = 0.1 pseudospectrum contour") {
    auto m = build_companion(6);
    GridSpec g{-1.8, 0.8, -1.3, 1.3, 150, 150};
    auto f = pseudospectrum_field(m, g, 2);
    for (const auto& z : eigenvalues(m)) CHECK(enclosed_by_contour(f, 0.1, z));
    // and the extracted contours at 0.1 are non-trivial closed curves
    auto cs = contour_extract(f, {0.1});
    size_t closed = 0;
    for (const auto& line : cs[0].lines) closed += line.closed;
    CHECK(closed >= 1);
}

TEST_CASE("region stats and merging") {
    auto m = build_companion(6);
    auto eig = eigenvalues(m);
    GridSpec g{-1.8, 0.8, -1.3, 1.3, 150, 150};
    auto f = pseudospectrum_field(m, g, 2);
    // tiny eps: nothing merges; larger eps: everything eventually merges
    CHECK_FALSE(regions_merged(f, 1e-4, eig));
    CHECK(regions_merged(f, 0.5, eig));
    auto rs_small = region_stats(f, 0.02, eig);
    CHECK(rs_small.singleton_regions + rs_small.uncovered_roots +
              2 * rs_small.merged_regions >=
          1);
}

TEST_CASE("grid validation") {
    GridSpec bad{1.0, -1.0, 0, 1, 4, 4};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    GridSpec huge{0, 1, 0, 1, 2000, 2000};
    huge.node_budget = 1'000'000;
    CHECK_THROWS_AS(huge.validate(), std::invalid_argument);
    GridSpec single{0.25, 0.25, -0.5, -0.5, 1, 1};
    CHECK_NOTHROW(single.validate());
}

TEST_CASE("field csv and metadata") {
    auto e2 = build_companion(2);
    GridSpec g{-1, 0, -1, 1, 3, 3};
    auto f = pseudospectrum_field(e2, g);
    auto csv = field_to_csv(f);
    CHECK(csv.rfind("x,y,value\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
    auto meta = field_metadata_json(f, {0.1, 0.2});
    CHECK(meta["kind"] == "pseudospectrum");
    CHECK(meta["nx"] == 3);
    CHECK(meta["levels"].size() == 2);

    auto svg = contours_to_svg(g, contour_extract(f, {0.5}), {eigenvalues(e2), 0.9});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}
