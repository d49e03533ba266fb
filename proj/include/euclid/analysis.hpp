#pragma once

// Identity verification, conjecture probes, the Euclid constant, the
// condition-number slope fit, and the three-way conditioning comparison.
// Exact checks run in big-rational arithmetic end to end.

#include <euclid/companion.hpp>
#include <euclid/euclid_family.hpp>
#include <euclid/fields.hpp>
#include <euclid/highprec.hpp>
#include <euclid/spectra.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace euclid {

// --- Egyptian fraction identities --------------------------------------------

/// 1 = sum_{k<=n} 1/e_k + 1/(e_{n+1} - 1), exactly.
inline bool egyptian_number_check(int n) {
    if (n < 1) throw std::invalid_argument("egyptian_number_check: n must be >= 1");
    auto e = euclid_numbers(n + 1);
    BigRational sum = 0;
    for (int i = 0; i < n; ++i) sum += BigRational(1) / BigRational(e[static_cast<size_t>(i)]);
    sum += BigRational(1) / BigRational(e[static_cast<size_t>(n)] - 1);
    return sum == 1;
}

enum class EgyptianOutcome { holds, fails, pole };

/// 1/lambda = sum_{k<=n} 1/E_k(lambda) + 1/(E_{n+1}(lambda) - 1), exactly.
/// A vanishing denominator is a pole of the identity, reported as its own
/// outcome rather than a failure.
inline EgyptianOutcome egyptian_poly_check(int n, const BigRational& lambda) {
    if (n < 1) throw std::invalid_argument("egyptian_poly_check: n must be >= 1");
    if (lambda == 0) throw std::invalid_argument("egyptian_poly_check: lambda must be nonzero");
    BigRational v = lambda + 1;  // E_1(lambda)
    BigRational sum = 0;
    for (int k = 1; k <= n; ++k) {
        if (v == 0) return EgyptianOutcome::pole;
        sum += BigRational(1) / v;
        v = v * (v - 1) + 1;  // E_{k+1}(lambda)
    }
    if (v == 1) return EgyptianOutcome::pole;
    sum += BigRational(1) / (v - 1);
    return sum == BigRational(1) / lambda ? EgyptianOutcome::holds : EgyptianOutcome::fails;
}

// --- series probe --------------------------------------------------------------

enum class SeriesClass { converging, diverging, undetermined };

inline std::string series_class_tag(SeriesClass c) {
    switch (c) {
        case SeriesClass::converging: return "converging";
        case SeriesClass::diverging: return "diverging";
        default: return "undetermined";
    }
}

struct SeriesProbe {
    Complex lambda;
    std::vector<double> term_magnitudes;  // |1/E_k(lambda)|
    std::vector<Complex> partial_sums;
    SeriesClass classification = SeriesClass::undetermined;
    bool overflow = false;  // E_k overflowed binary64; terms vanish from there on
};

/// Partial sums of sum_k 1/E_k(lambda) with a heuristic classification.
///
/// The value map is v <- (v - 1/2)^2 + 3/4, a double fixed point at v = 1.
/// Escape of y_k = |E_k - 1| means E_k blows up doubly exponentially and the
/// series converges (overflow of E_k is evidence of exactly that); y_k
/// contracting toward 0 means the terms tend to 1 and the series diverges.
/// Boundary points legitimately come out undetermined.
inline SeriesProbe series_probe(Complex lambda, int n_terms) {
    if (n_terms < 1) throw std::invalid_argument("series_probe: n_terms must be >= 1");
    SeriesProbe p;
    p.lambda = lambda;
    Complex v = lambda + 1.0;
    Complex sum{0.0, 0.0};
    std::vector<double> y;  // |E_k - 1|
    for (int k = 1; k <= n_terms; ++k) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            p.overflow = true;
            break;
        }
        Complex term = (v == Complex(0.0, 0.0)) ? Complex(std::numeric_limits<double>::infinity(), 0)
                                                : 1.0 / v;
        sum += term;
        p.term_magnitudes.push_back(std::abs(term));
        p.partial_sums.push_back(sum);
        y.push_back(std::abs(v - 1.0));
        v = v * (v - 1.0) + 1.0;
    }
    const auto& t = p.term_magnitudes;
    if (p.overflow || (!t.empty() && t.back() < 1e-8)) {
        p.classification = SeriesClass::converging;
        return p;
    }
    if (y.size() >= 5) {
        size_t last = y.size() - 1;
        bool escaping = y[last] > 0.3;
        bool contracting = y[last] < 0.3;
        for (size_t i = y.size() - 5; i < last; ++i) {
            if (y[i + 1] <= y[i]) escaping = false;
            if (y[i + 1] > y[i]) contracting = false;
        }
        if (escaping) {
            p.classification = SeriesClass::converging;
            return p;
        }
        if (contracting && t.back() > 1e-3) {
            p.classification = SeriesClass::diverging;
            return p;
        }
        // flat, non-vanishing terms with no contraction trend
        double tail_min = *std::min_element(t.end() - 5, t.end());
        bool decaying = false;
        for (size_t i = t.size() - 5; i + 1 < t.size(); ++i)
            if (t[i + 1] < 0.99 * t[i]) decaying = true;
        if (!decaying && tail_min > 1e-3) {
            p.classification = SeriesClass::diverging;
            return p;
        }
    }
    p.classification = SeriesClass::undetermined;
    return p;
}

// --- the Euclid constant ---------------------------------------------------------

struct EuclidConstantEstimate {
    int n_terms = 0;
    int precision_bits = 0;
    double estimate = 0.0;
    std::string estimate_str;
    int digits_stable = 0;      // agreement between the last two estimates
    bool floor_check_ok = false;  // e_n == floor(E^{2^n} + 1/2) for n <= n_terms
    int floor_check_max_n = 0;
};

/// E = lim exp(2^{-n} log(e_n - 1/2)), evaluated at n_terms in software
/// floats, cross-checked by reconstructing every e_n from the floor formula.
/// A failed floor check means precision_bits is too small for n_terms.
inline EuclidConstantEstimate euclid_constant(int n_terms, int precision_bits) {
    if (n_terms < 3) throw std::invalid_argument("euclid_constant: n_terms must be >= 3");
    if (precision_bits < 64) throw std::invalid_argument("euclid_constant: precision_bits must be >= 64");
    auto e = euclid_numbers(n_terms);
    auto estimate_at = [&](int n) {
        // exp(2^{-n} log(e_n - 1/2))
        BigFloat x(BigRational(2 * e[static_cast<size_t>(n - 1)] - 1, 2), precision_bits);
        return x.log().ldexp(-n).exp();
    };
    BigFloat En = estimate_at(n_terms);
    BigFloat En1 = estimate_at(n_terms - 1);
    EuclidConstantEstimate out;
    out.n_terms = n_terms;
    out.precision_bits = precision_bits;
    out.estimate = En.to_double();
    out.estimate_str = En.to_string(40);
    BigFloat diff = (En - En1).abs();
    if (diff.to_double() == 0.0) {
        out.digits_stable = static_cast<int>(precision_bits * 0.30103);
    } else {
        double rel = (diff / En).to_double();
        out.digits_stable = rel > 0 ? std::max(0, static_cast<int>(-std::log10(rel))) : 0;
    }
    out.floor_check_ok = true;
    out.floor_check_max_n = 0;
    BigFloat half(0.5, precision_bits);
    for (int n = 1; n <= n_terms; ++n) {
        BigInt rec = (En.pow_2exp(static_cast<unsigned long>(n)) + half).floor_to_int();
        if (rec != e[static_cast<size_t>(n - 1)]) {
            out.floor_check_ok = false;
            break;
        }
        out.floor_check_max_n = n;
    }
    return out;
}

// --- condition number slope fit ---------------------------------------------------

struct SlopeFit {
    std::vector<std::array<double, 2>> points;  // (log degree, log max K_e)
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

class SlopeFitAborted : public std::runtime_error {
  public:
    SlopeFitAborted(std::string msg, SlopeFit partial)
        : std::runtime_error(std::move(msg)), partial_fit(std::move(partial)) {}
    SlopeFit partial_fit;
};

/// Least squares on the given (x, y) points.
inline SlopeFit fit_line(std::vector<std::array<double, 2>> pts) {
    if (pts.size() < 3) throw std::invalid_argument("fit_line: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : pts) {
        sx += p[0];
        sy += p[1];
        sxx += p[0] * p[0];
        sxy += p[0] * p[1];
    }
    double n = static_cast<double>(pts.size());
    SlopeFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0, mean = sy / n;
    for (const auto& p : pts) {
        double pred = f.slope * p[0] + f.intercept;
        ss_res += (p[1] - pred) * (p[1] - pred);
        ss_tot += (p[1] - mean) * (p[1] - mean);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    f.points = std::move(pts);
    return f;
}

/// log max K_e against log degree over k = k_min..k_max. An eigensolver
/// failure aborts but keeps the points collected so far.
inline SlopeFit condition_slope_fit(int k_min, int k_max, int threads = 0) {
    if (k_min < 2 || k_min >= k_max) throw std::invalid_argument("condition_slope_fit: need 2 <= k_min < k_max");
    std::vector<std::array<double, 2>> pts;
    for (int k = k_min; k <= k_max; ++k) {
        try {
            auto s = compute_spectrum(k, {}, {.threads = threads});
            double kmax = 0;
            for (double c : s.cond) kmax = std::max(kmax, c);
            pts.push_back({std::log(static_cast<double>(1 << (k - 1))), std::log(kmax)});
        } catch (const EigNonConvergence& e) {
            SlopeFit partial;
            partial.points = pts;
            throw SlopeFitAborted(std::string("slope fit aborted at k = ") + std::to_string(k) + ": " +
                                      e.what(),
                                  std::move(partial));
        }
    }
    return fit_line(std::move(pts));
}

// --- three-way conditioning comparison ----------------------------------------------

struct Band {
    double lo = 0.0, hi = 0.0;  // bracket around the first-merge epsilon
    double log10_mid() const { return 0.5 * (std::log10(lo) + std::log10(hi)); }
};

struct ComparisonRow {
    int k = 0;
    Band monomial, shifted, matrix;
};

struct ComparisonOptions {
    GridSpec grid{-1.8, 0.8, -1.3, 1.3, 320, 320};
    int threads = 0;
    double log10_resolution = 0.05;
    int precision_bits = 0;  // pseudozero evaluation; 0 = automatic
};

namespace detail {

/// Smallest eps (log-bisection) at which two root regions join, bracketed to
/// the requested resolution. The predicate is monotone in eps.
inline Band first_merge_band(const ScalarField& f, const std::vector<Complex>& roots,
                             double log10_resolution) {
    double lo = -80.0, hi = 2.0;
    if (!regions_merged(f, std::pow(10.0, hi), roots)) {
        // extend upward until everything merges (bounded field values)
        double top = 0;
        for (double v : f.values) top = std::max(top, v);
        hi = std::log10(top) + 1.0;
        if (!regions_merged(f, std::pow(10.0, hi), roots))
            throw std::runtime_error("merge detection: no merge found at any eps");
    }
    if (regions_merged(f, std::pow(10.0, lo), roots))
        throw std::runtime_error("merge detection: merged already at eps = 1e-80");
    while (hi - lo > log10_resolution) {
        double mid = 0.5 * (lo + hi);
        if (regions_merged(f, std::pow(10.0, mid), roots))
            hi = mid;
        else
            lo = mid;
    }
    return {std::pow(10.0, lo), std::pow(10.0, hi)};
}

}  // namespace detail

/// For each representation of E_k (monomial basis, shifted basis, companion
/// matrix), the eps bracket where pseudo-regions around adjacent roots first
/// merge. Extended precision engages automatically for the monomial basis at
/// k >= 7.
inline ComparisonRow conditioning_comparison(int k, const ComparisonOptions& opts = {}) {
    ComparisonRow row;
    row.k = k;
    auto m = build_companion(k);
    auto roots = eigenvalues(m);

    auto fm = pseudozero_field(k, PolyBasis::monomial, opts.grid,
                               {.precision_bits = opts.precision_bits, .threads = opts.threads});
    row.monomial = detail::first_merge_band(fm, roots, opts.log10_resolution);

    auto fs = pseudozero_field(k, PolyBasis::shifted, opts.grid,
                               {.precision_bits = opts.precision_bits, .threads = opts.threads});
    row.shifted = detail::first_merge_band(fs, roots, opts.log10_resolution);

    auto fx = pseudospectrum_field(m, opts.grid, opts.threads);
    row.matrix = detail::first_merge_band(fx, roots, opts.log10_resolution);
    return row;
}

// --- similarity criteria --------------------------------------------------------------

struct SimilarityReport {
    bool individual_circles = false;   // some components enclose exactly one root
    bool merged_regions = false;       // some component encloses two or more
    bool spacing_about_1pct = false;   // median contour spacing ~1% of diameter
    int singleton_count = 0;
    int merged_count = 0;
    double median_spacing_fraction = 0.0;
    bool all_met() const { return individual_circles && merged_regions && spacing_about_1pct; }
};

/// The three visual-similarity criteria, made mechanical: per-root closed
/// contours at the low end of the band, merged regions at the high end, and
/// median inter-contour spacing within [0.1%, 10%] of the window diameter.
inline SimilarityReport similarity_criteria(const ScalarField& f, const std::vector<Complex>& roots,
                                            double eps_lo, double eps_hi) {
    SimilarityReport rep;
    auto low = region_stats(f, eps_lo, roots);
    auto high = region_stats(f, eps_hi, roots);
    rep.singleton_count = low.singleton_regions;
    rep.merged_count = high.merged_regions;
    rep.individual_circles = low.singleton_regions >= 1;
    rep.merged_regions = high.merged_regions >= 1;

    // spacing between consecutive log-spaced contour levels, estimated as
    // (eps_{i+1} - eps_i) / |grad f| at nodes inside the level pair
    std::vector<double> levels(10);
    for (int i = 0; i < 10; ++i)
        levels[static_cast<size_t>(i)] =
            std::pow(10.0, std::log10(eps_lo) + (std::log10(eps_hi) - std::log10(eps_lo)) * i / 9.0);
    const GridSpec& g = f.spec;
    double hx = g.nx > 1 ? (g.re_max - g.re_min) / (g.nx - 1) : 1.0;
    double hy = g.ny > 1 ? (g.im_max - g.im_min) / (g.ny - 1) : 1.0;
    std::vector<double> spacings;
    for (size_t li = 0; li + 1 < levels.size(); ++li) {
        for (int j = 1; j + 1 < g.ny; ++j)
            for (int i = 1; i + 1 < g.nx; ++i) {
                double v = f.at(i, j);
                if (v < levels[li] || v > levels[li + 1] || !f.valid(i, j)) continue;
                double gx = (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * hx);
                double gy = (f.at(i, j + 1) - f.at(i, j - 1)) / (2 * hy);
                double gm = std::hypot(gx, gy);
                if (gm <= 0) continue;
                spacings.push_back((levels[li + 1] - levels[li]) / gm);
            }
    }
    if (!spacings.empty()) {
        std::nth_element(spacings.begin(), spacings.begin() + spacings.size() / 2, spacings.end());
        rep.median_spacing_fraction = spacings[spacings.size() / 2] / g.diameter();
        rep.spacing_about_1pct =
            rep.median_spacing_fraction >= 0.001 && rep.median_spacing_fraction <= 0.10;
    }
    return rep;
}

// --- verification suite ------------------------------------------------------------------

struct CheckResult {
    std::string name;
    std::string status;  // "pass", "fail", "info"
    std::string detail;
    double elapsed_ms = 0.0;
};

struct SuiteOptions {
    int kmax = 8;          // exact checks run to this generation
    int egyptian_n = 10;
    int random_lambdas = 20;
    uint64_t seed = 12345;
    int precision_bits = 2048;
    int threads = 0;
    std::string only;  // run just the named check when nonempty
};

inline std::vector<CheckResult> run_verification_suite(const SuiteOptions& opts) {
    std::vector<CheckResult> results;
    auto run = [&](const std::string& name, bool hard, const std::function<std::pair<bool, std::string>()>& f) {
        if (!opts.only.empty() && opts.only != name) return;
        auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        r.name = name;
        try {
            auto [ok, detail] = f();
            r.status = ok ? "pass" : (hard ? "fail" : "info");
            r.detail = detail;
        } catch (const std::exception& e) {
            r.status = "fail";
            r.detail = e.what();
        }
        r.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        results.push_back(std::move(r));
    };
    const int kmax = opts.kmax;

    run("euclid_numbers", true, [&]() -> std::pair<bool, std::string> {
        auto e = euclid_numbers(5);
        bool ok = e == std::vector<BigInt>{BigInt(2), BigInt(3), BigInt(7), BigInt(43), BigInt(1807)};
        return {ok, "e_1..e_5"};
    });
    run("euclid_poly_coefficients", true, [&]() -> std::pair<bool, std::string> {
        bool ok = euclid_poly(4) == BigIntPoly({BigInt(1), BigInt(1), BigInt(3), BigInt(6), BigInt(9),
                                                BigInt(10), BigInt(8), BigInt(4), BigInt(1)});
        return {ok, "E_4 display"};
    });
    run("poly_value_at_one", true, [&]() -> std::pair<bool, std::string> {
        auto ps = euclid_polys(kmax);
        auto e = euclid_numbers(kmax);
        for (int k = 1; k <= kmax; ++k)
            if (ps[static_cast<size_t>(k - 1)].eval(BigInt(1)) != e[static_cast<size_t>(k - 1)])
                return {false, "mismatch at k = " + std::to_string(k)};
        return {true, "k <= " + std::to_string(kmax)};
    });
    run("pairwise_coprime", true, [&]() -> std::pair<bool, std::string> {
        auto ps = euclid_polys(kmax);
        auto one = BigIntPoly::constant(1);
        for (int n = 2; n <= kmax; ++n)
            for (int m2 = 1; m2 < n; ++m2)
                if (!(poly_gcd(ps[static_cast<size_t>(n - 1)], ps[static_cast<size_t>(m2 - 1)]) == one))
                    return {false, "gcd(E_" + std::to_string(n) + ", E_" + std::to_string(m2) + ") != 1"};
        return {true, "all pairs to k = " + std::to_string(kmax)};
    });
    run("simple_roots", true, [&]() -> std::pair<bool, std::string> {
        auto ps = euclid_polys(kmax);
        auto one = BigIntPoly::constant(1);
        for (int k = 1; k <= kmax; ++k)
            if (!(poly_gcd(ps[static_cast<size_t>(k - 1)], derivative(ps[static_cast<size_t>(k - 1)])) == one))
                return {false, "gcd(E_k, E_k') != 1 at k = " + std::to_string(k)};
        return {true, "k <= " + std::to_string(kmax)};
    });
    run("shifted_even_recover", true, [&]() -> std::pair<bool, std::string> {
        for (int k = 2; k <= kmax; ++k) {
            auto s = shifted_euclid_poly(k);
            for (size_t j = 1; j < s.coeffs.size(); j += 2)
                if (!s.coeffs[j].is_zero()) return {false, "odd coefficient at k = " + std::to_string(k)};
            auto rec = compose_shift(s, DyadicRational(BigInt(1), 1));
            auto expect = euclid_poly(k);
            if (rec.coeffs.size() != expect.coeffs.size()) return {false, "degree mismatch"};
            for (size_t j = 0; j < rec.coeffs.size(); ++j)
                if (!rec.coeffs[j].is_integer() || rec.coeffs[j].num != expect.coeffs[j])
                    return {false, "coefficient mismatch at k = " + std::to_string(k)};
        }
        return {true, "k <= " + std::to_string(kmax)};
    });
    run("coeff_growth", true, [&]() -> std::pair<bool, std::string> {
        for (int k = 1; k < kmax; ++k)
            if (!coeff_growth_check(k)) return {false, "k = " + std::to_string(k)};
        return {true, "max E_{k+1} >= (max E_k)^2 for k < " + std::to_string(kmax)};
    });
    run("unimodality", false, [&]() -> std::pair<bool, std::string> {
        int largest = 0;
        for (int k = 1; k <= kmax; ++k) {
            if (!unimodality_check(euclid_poly(k)).unimodal)
                return {false, "not unimodal at k = " + std::to_string(k)};
            largest = k;
        }
        return {true, "unimodal through k = " + std::to_string(largest) + " (conjecture probe)"};
    });
    run("charpoly", true, [&]() -> std::pair<bool, std::string> {
        for (int k = 1; k <= kmax; ++k) {
            auto r = charpoly_matches(build_companion(k), euclid_poly(k));
            if (!r.ok) return {false, "k = " + std::to_string(k) + " at x = " + to_string(r.failing_point)};
        }
        return {true, "det(xI - E_k) = E_k(x), k <= " + std::to_string(kmax)};
    });
    run("charpoly_variants", true, [&]() -> std::pair<bool, std::string> {
        std::mt19937_64 rng(opts.seed);
        for (auto seed2 : {E2Seed::A, E2Seed::B, E2Seed::C, E2Seed::D})
            if (!verify_charpoly(5, VariantConfig{seed2, {}})) return {false, "seed variant failed"};
        std::vector<size_t> order{0, 1, 2, 3};
        for (int t = 0; t < 10; ++t) {
            std::shuffle(order.begin(), order.end(), rng);
            if (!verify_charpoly(5, VariantConfig{E2Seed::A, order})) return {false, "block order failed"};
        }
        return {true, "4 seeds and 10 random block orders at k = 5"};
    });
    run("structure", true, [&]() -> std::pair<bool, std::string> {
        auto all = build_companions(std::max(kmax, 12));
        for (int k = 1; k <= std::max(kmax, 12); ++k) {
            const auto& m = all[static_cast<size_t>(k - 1)];
            if (m.dim() != (1 << (k - 1))) return {false, "dimension at k = " + std::to_string(k)};
            if (m.height() != 1) return {false, "height at k = " + std::to_string(k)};
            if (!m.all_subdiagonal_minus_one()) return {false, "subdiagonal at k = " + std::to_string(k)};
            if (k >= 2 && m.corner() != 1) return {false, "corner at k = " + std::to_string(k)};
        }
        return {true, "dimension, height, subdiagonal, corner through k = 12"};
    });
    run("tilde_charpoly", true, [&]() -> std::pair<bool, std::string> {
        std::mt19937_64 rng(opts.seed + 1);
        for (int k = 2; k <= kmax; ++k) {
            auto t = build_tilde(k);
            auto p = euclid_poly(k) - BigIntPoly::constant(1);
            for (int trial = 0; trial < 20; ++trial) {
                BigInt x(static_cast<long>(rng() % 41) - 20);
                if (det_charpoly_at(t, x) != p.eval(x))
                    return {false, "k = " + std::to_string(k) + " at x = " + to_string(x)};
            }
        }
        return {true, "det(xI - T_k) = E_k - 1 at 20 random integers, k <= " + std::to_string(kmax)};
    });
    run("egyptian", true, [&]() -> std::pair<bool, std::string> {
        for (int n = 1; n <= opts.egyptian_n; ++n)
            if (!egyptian_number_check(n)) return {false, "n = " + std::to_string(n)};
        return {true, "exact to n = " + std::to_string(opts.egyptian_n)};
    });
    run("egyptian_poly", true, [&]() -> std::pair<bool, std::string> {
        std::mt19937_64 rng(opts.seed + 2);
        int done = 0;
        while (done < opts.random_lambdas) {
            long num = static_cast<long>(rng() % 300) + 1;  // lambda in (0, 3]
            long den = static_cast<long>(rng() % 100) + 1;
            BigRational lambda(num, den * 100);
            lambda.canonicalize();
            if (lambda <= 0 || lambda > 3) continue;
            auto out = egyptian_poly_check(5, lambda);
            if (out == EgyptianOutcome::fails) return {false, "lambda = " + to_string(lambda)};
            if (out == EgyptianOutcome::holds) ++done;
        }
        return {true, std::to_string(opts.random_lambdas) + " random rational lambdas at n = 5"};
    });
    run("euclid_constant", true, [&]() -> std::pair<bool, std::string> {
        auto est = euclid_constant(std::max(10, kmax), opts.precision_bits);
        if (!est.floor_check_ok)
            return {false, "floor reconstruction failed; raise precision_bits (used " +
                               std::to_string(opts.precision_bits) + ")"};
        bool three_digits = std::abs(est.estimate - 1.264) < 5e-4;
        return {three_digits, "E = " + est.estimate_str.substr(0, 12) + ", floor check to n = " +
                                  std::to_string(est.floor_check_max_n)};
    });
    run("series_probe", false, [&]() -> std::pair<bool, std::string> {
        struct Case {
            Complex lambda;
            SeriesClass expect;
        };
        const Case cases[] = {{{1.0, 0.0}, SeriesClass::converging},
                              {{0.5, 0.0}, SeriesClass::converging},
                              {{2.0, 0.0}, SeriesClass::converging},
                              {{-0.5, 0.0}, SeriesClass::diverging}};
        for (const auto& c : cases) {
            auto p = series_probe(c.lambda, 25);
            if (p.classification != c.expect)
                return {false, "lambda = " + format_double(c.lambda.real()) + " classified " +
                                   series_class_tag(p.classification)};
        }
        return {true, "classifications match at lambda = 1, 1/2, 2, -1/2"};
    });
    return results;
}

inline json suite_report_json(const std::vector<CheckResult>& results) {
    json j;
    for (const auto& r : results) {
        json e;
        e["status"] = r.status;
        e["data"] = r.detail;
        e["elapsed_ms"] = r.elapsed_ms;
        j[r.name] = e;
    }
    return j;
}

inline std::string suite_summary(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
        os << (r.status == "pass" ? "[pass] " : r.status == "info" ? "[info] " : "[FAIL] ");
        os << r.name << std::string(width - r.name.size() + 2, ' ') << r.detail << "  ("
           << static_cast<long>(r.elapsed_ms) << " ms)\n";
    }
    return os.str();
}

inline bool suite_all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (r.status == "fail") return false;
    return true;
}

}  // namespace euclid
