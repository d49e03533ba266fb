// Command-line front end: emits polynomials, companion matrices, spectra,
// pseudospectrum/pseudozero fields, the verification suite, and the
// condition-number reports as files.
//
// Exit codes: 0 success, 1 computational failure, 2 usage error.

#include <CLI11.hpp>

#include <euclid/analysis.hpp>
#include <euclid/companion.hpp>
#include <euclid/euclid_family.hpp>
#include <euclid/fields.hpp>
#include <euclid/spectra.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace euclid;

namespace {

constexpr const char* kVersion = "1.0.0";

struct GlobalOpts {
    std::string out = ".";
    std::string format = "";
    uint64_t seed = 12345;
    int threads = 0;
    int precision_bits = 0;
    bool force = false;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

void require_cap(int k, int cap, bool force, const std::string& what) {
    if (k < 1) throw UsageError(what + ": k must be >= 1");
    if (k > cap && !force)
        throw UsageError(what + ": k = " + std::to_string(k) + " exceeds the default budget of " +
                         std::to_string(cap) + " (pass --force to override)");
}

void write_file(const fs::path& p, const std::string& content, std::vector<std::string>& files) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << content;
    files.push_back(p.filename().string());
}

struct Manifest {
    const GlobalOpts& g;
    std::string command;
    json cfg = json::object();
    std::vector<std::string> files;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    Manifest(const GlobalOpts& g_, std::string cmd) : g(g_), command(std::move(cmd)) {
        fs::create_directories(g.out);
    }
    void finish() {
        json m;
        m["command"] = command;
        m["version"] = kVersion;
        cfg["out"] = g.out;
        cfg["seed"] = g.seed;
        cfg["threads"] = g.threads;
        cfg["precision_bits"] = g.precision_bits;
        cfg["force"] = g.force;
        m["config"] = cfg;
        m["files"] = files;
        m["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::ofstream os(fs::path(g.out) / (command + "_manifest.json"), std::ios::binary);
        os << m.dump(2) << "\n";
    }
};

std::vector<double> log_spaced(double lo, double hi, int n) {
    if (!(lo > 0) || !(hi > lo) || n < 1) throw UsageError("eps range must satisfy 0 < lo < hi, n >= 1");
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] =
            std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * (n == 1 ? 0.5 : i / double(n - 1)));
    return v;
}

std::vector<double> parse_eps(const std::string& s) {
    double lo, hi;
    int n;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3)
        throw UsageError("--eps expects lo:hi:count, e.g. 1e-2:1e-1:10");
    return log_spaced(lo, hi, n);
}

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    if (s.empty()) return g;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf:%lf:%d:%d", &g.re_min, &g.re_max, &g.im_min, &g.im_max,
                    &g.nx, &g.ny) != 6)
        throw UsageError("--grid expects re_min:re_max:im_min:im_max:nx:ny");
    return g;
}

std::vector<size_t> parse_block_order(const std::string& s) {
    std::vector<size_t> order;
    if (s.empty()) return order;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) order.push_back(static_cast<size_t>(std::stoul(tok)));
    return order;
}

E2Seed parse_seed_variant(const std::string& s) {
    if (s == "A") return E2Seed::A;
    if (s == "B") return E2Seed::B;
    if (s == "C") return E2Seed::C;
    if (s == "D") return E2Seed::D;
    throw UsageError("--variant-seed must be one of A, B, C, D");
}

// --- poly -------------------------------------------------------------------

int cmd_poly(const GlobalOpts& g, int k, const std::string& basis) {
    require_cap(k, 15, g.force, "poly");
    Manifest man(g, "poly");
    man.cfg["k"] = k;
    man.cfg["basis"] = basis;
    json report;
    report["k"] = k;
    std::string stem = "poly_k" + std::to_string(k) + "_" + basis;
    if (basis == "monomial") {
        auto p = euclid_poly(k);
        write_file(fs::path(g.out) / (stem + ".json"), poly_to_json(p, k).dump(2) + "\n", man.files);
        report["degree"] = p.degree();
        report["max_coefficient"] = p.max_abs_coeff().get_str(10);
        report["value_at_one"] = p.eval(BigInt(1)).get_str(10);
        auto uni = unimodality_check(p);
        report["unimodal"] = uni.unimodal;
        report["peak"] = {uni.peak_lo, uni.peak_hi};
    } else if (basis == "shifted") {
        auto p = shifted_euclid_poly(k);
        write_file(fs::path(g.out) / (stem + ".json"), poly_to_json(p, k).dump(2) + "\n", man.files);
        report["degree"] = p.degree();
        report["value_at_half"] = to_string(p.eval(BigRational(1, 2)));  // = E_k(0) = 1
        bool even_only = true;
        for (size_t j = 1; j < p.coeffs.size(); j += 2)
            if (!p.coeffs[j].is_zero()) even_only = false;
        report["even_powers_only"] = even_only;
    } else {
        throw UsageError("poly: --basis must be monomial or shifted");
    }
    write_file(fs::path(g.out) / (stem + "_report.json"), report.dump(2) + "\n", man.files);
    man.finish();
    return 0;
}

// --- companion ---------------------------------------------------------------

int cmd_companion(const GlobalOpts& g, int k, const std::string& family, const std::string& seed_variant,
                  const std::string& block_order, bool verify) {
    require_cap(k, 14, g.force, "companion");
    Manifest man(g, "companion");
    man.cfg["k"] = k;
    man.cfg["family"] = family;
    man.cfg["variant_seed"] = seed_variant;
    man.cfg["block_order"] = block_order;
    man.cfg["verify"] = verify;

    VariantConfig cfg{parse_seed_variant(seed_variant), parse_block_order(block_order)};
    CompanionMatrix m = [&] {
        if (family == "euclid") return build_companion(k, cfg);
        if (family == "tilde") return build_tilde(k, cfg);
        if (family == "mandelbrot") return build_mandelbrot_companion(k);
        throw UsageError("companion: --family must be euclid, tilde or mandelbrot");
    }();

    std::string fmt = g.format.empty() ? "matrix-market" : g.format;
    MatrixFormat mf = matrix_format_from_string(fmt);
    std::string ext = mf == MatrixFormat::matrix_market ? ".mm"
                      : mf == MatrixFormat::csv_triplets ? ".csv"
                                                         : ".json";
    std::string stem = "companion_" + family + "_k" + std::to_string(k);
    write_file(fs::path(g.out) / (stem + ext), export_matrix(m, mf), man.files);

    json report;
    report["family"] = family;
    report["k"] = k;
    report["dimension"] = m.dim();
    report["nnz"] = m.nnz();
    report["height"] = m.height();
    report["all_subdiagonal_minus_one"] = m.all_subdiagonal_minus_one();
    if (k >= 2 && family == "euclid") report["corner"] = m.corner();
    if (verify) {
        if (k > 9 && !g.force)
            throw UsageError("companion: exact verification above k = 9 needs --force");
        auto poly = family == "mandelbrot" ? mandelbrot_poly(k)
                    : family == "tilde"    ? euclid_poly(k) - BigIntPoly::constant(1)
                                           : euclid_poly(k);
        auto r = charpoly_matches(m, poly);
        report["verified"] = r.ok;
        if (!r.ok) report["failing_point"] = to_string(r.failing_point);
    }
    write_file(fs::path(g.out) / (stem + "_report.json"), report.dump(2) + "\n", man.files);
    man.finish();
    if (verify && report.contains("verified") && !report["verified"].get<bool>()) return 1;
    return 0;
}

// --- eigs ----------------------------------------------------------------------

int cmd_eigs(const GlobalOpts& g, int k, bool plot, bool sigma_resid_flag) {
    require_cap(k, 12, g.force, "eigs");
    Manifest man(g, "eigs");
    man.cfg["k"] = k;
    man.cfg["plot"] = plot;
    SpectrumOptions opts;
    opts.threads = g.threads;
    opts.with_sigma_resid = sigma_resid_flag || k <= 10;
    man.cfg["sigma_resid"] = opts.with_sigma_resid;

    auto s = compute_spectrum(k, {}, opts);
    std::string stem = "eigs_k" + std::to_string(k);
    write_file(fs::path(g.out) / (stem + ".csv"), spectrum_to_csv(s), man.files);

    auto summary = root_summary_to_json(root_summary(k, s.eigenvalues));
    double max_resid = 0, max_newton = 0, max_cond = 0;
    for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
        max_resid = std::max(max_resid, s.resid_recurrence[i]);
        max_newton = std::max(max_newton, newton_correction(k, s.eigenvalues[i]));
        if (i < s.cond.size()) max_cond = std::max(max_cond, s.cond[i]);
    }
    summary["max_resid_recurrence"] = max_resid;
    summary["max_newton_correction"] = max_newton;
    summary["max_eig_condition"] = max_cond;
    // the monomial-coefficient evaluation, reported separately to exhibit the
    // conditioning gap relative to the recurrence residuals
    double max_resid_monomial = 0;
    bool monomial_finite = true;
    auto p = euclid_poly(k);
    for (const auto& z : s.eigenvalues) {
        auto ev = eval_complex(p, z);
        auto b = poly_condition_B(k, z);
        if (ev.overflow || b.overflow) {
            monomial_finite = false;
            break;
        }
        max_resid_monomial = std::max(max_resid_monomial, std::abs(ev.value) / b.value);
    }
    if (monomial_finite)
        summary["max_resid_monomial_coeff"] = max_resid_monomial;
    else
        summary["max_resid_monomial_coeff"] = "overflow";
    write_file(fs::path(g.out) / (stem + "_summary.json"), summary.dump(2) + "\n", man.files);

    if (plot) {
        double radius = 0;
        for (const auto& z : s.eigenvalues) radius = std::max(radius, std::abs(z + 0.5));
        GridSpec window{-1.8, 0.8, -1.3, 1.3, 2, 2};
        write_file(fs::path(g.out) / (stem + ".svg"),
                   contours_to_svg(window, {}, {s.eigenvalues, radius}), man.files);
    }
    man.finish();
    return 0;
}

// --- fields ----------------------------------------------------------------------

int cmd_fields(const GlobalOpts& g, int k, const std::string& kind, const std::string& eps_spec,
               const std::string& grid_spec) {
    Manifest man(g, "fields");
    man.cfg["k"] = k;
    man.cfg["kind"] = kind;
    GridSpec grid = parse_grid(grid_spec);
    grid.validate();
    man.cfg["grid"] = {grid.re_min, grid.re_max, grid.im_min, grid.im_max};
    man.cfg["nx"] = grid.nx;
    man.cfg["ny"] = grid.ny;

    ScalarField f;
    std::vector<double> eps;
    if (kind == "pseudospectrum") {
        require_cap(k, 8, g.force, "fields (pseudospectrum)");
        eps = eps_spec.empty() ? log_spaced(1e-2, 1e-1, 10) : parse_eps(eps_spec);
        f = pseudospectrum_field(build_companion(k), grid, g.threads);
    } else if (kind == "pseudozero_monomial" || kind == "pseudozero_shifted") {
        require_cap(k, 12, g.force, "fields (pseudozero)");
        PolyBasis basis =
            kind == "pseudozero_monomial" ? PolyBasis::monomial : PolyBasis::shifted;
        if (eps_spec.empty())
            eps = basis == PolyBasis::monomial ? log_spaced(std::pow(10.0, -9.5), std::pow(10.0, -8.5), 10)
                                               : log_spaced(1e-3, 1e-2, 10);
        else
            eps = parse_eps(eps_spec);
        f = pseudozero_field(k, basis, grid, {.precision_bits = g.precision_bits, .threads = g.threads});
    } else {
        throw UsageError("fields: --kind must be pseudospectrum, pseudozero_monomial or pseudozero_shifted");
    }
    man.cfg["eps"] = eps;

    std::string stem = "field_" + kind + "_k" + std::to_string(k);
    write_file(fs::path(g.out) / (stem + ".csv"), field_to_csv(f), man.files);
    write_file(fs::path(g.out) / (stem + ".json"), field_metadata_json(f, eps).dump(2) + "\n", man.files);
    auto contours = contour_extract(f, eps);
    auto roots = k <= 12 ? eigenvalues(build_companion(k)) : std::vector<Complex>{};
    write_file(fs::path(g.out) / (stem + ".svg"), contours_to_svg(grid, contours, {roots, 0.0}),
               man.files);
    man.finish();
    return 0;
}

// --- verify ----------------------------------------------------------------------

int cmd_verify(const GlobalOpts& g, int kmax, const std::string& check, int egyptian_n) {
    require_cap(kmax, 9, g.force, "verify");
    Manifest man(g, "verify");
    man.cfg["kmax"] = kmax;
    man.cfg["check"] = check;
    man.cfg["egyptian_n"] = egyptian_n;

    SuiteOptions opts;
    opts.kmax = kmax;
    opts.egyptian_n = egyptian_n;
    opts.seed = g.seed;
    opts.threads = g.threads;
    if (g.precision_bits > 0) opts.precision_bits = g.precision_bits;
    opts.only = check;
    auto results = run_verification_suite(opts);
    if (results.empty()) throw UsageError("verify: unknown check name: " + check);

    write_file(fs::path(g.out) / "verify_report.json", suite_report_json(results).dump(2) + "\n",
               man.files);
    std::cout << suite_summary(results);
    man.finish();
    return suite_all_passed(results) ? 0 : 1;
}

// --- report ----------------------------------------------------------------------

int cmd_report(const GlobalOpts& g, bool slope, bool table1, bool btilde, int kmin, int kmax, int k) {
    if (!slope && !table1 && !btilde)
        throw UsageError("report: choose at least one of --slope, --table1, --btilde");
    Manifest man(g, "report");
    int rc = 0;

    if (slope) {
        if (kmin < 2 || kmax - kmin < 2)
            throw UsageError("report --slope: need kmin >= 2 and at least 3 points (kmax >= kmin + 2)");
        require_cap(kmax, 12, g.force, "report --slope");
        man.cfg["slope_kmin"] = kmin;
        man.cfg["slope_kmax"] = kmax;
        auto fit = condition_slope_fit(kmin, kmax, g.threads);
        std::ostringstream csv;
        csv << "k,degree,log_degree,log_max_cond\n";
        for (size_t i = 0; i < fit.points.size(); ++i) {
            int kk = kmin + static_cast<int>(i);
            csv << kk << "," << (1 << (kk - 1)) << "," << format_double(fit.points[i][0]) << ","
                << format_double(fit.points[i][1]) << "\n";
        }
        write_file(fs::path(g.out) / "slope_points.csv", csv.str(), man.files);
        json j;
        j["k_min"] = kmin;
        j["k_max"] = kmax;
        j["slope"] = fit.slope;
        j["intercept"] = fit.intercept;
        j["r2"] = fit.r2;
        write_file(fs::path(g.out) / "slope.json", j.dump(2) + "\n", man.files);
        std::cout << "slope " << format_double(fit.slope) << "  r2 " << format_double(fit.r2) << "\n";
    }

    if (table1) {
        if (k < 6 || k > 8) throw UsageError("report --table1: --k must be 6, 7 or 8");
        man.cfg["table1_k"] = k;
        ComparisonOptions opts;
        opts.threads = g.threads;
        if (g.precision_bits > 0) opts.precision_bits = g.precision_bits;
        auto row = conditioning_comparison(k, opts);
        json j;
        j["k"] = k;
        auto band = [](const Band& b) {
            json e;
            e["lo"] = b.lo;
            e["hi"] = b.hi;
            e["log10_mid"] = b.log10_mid();
            return e;
        };
        j["monomial"] = band(row.monomial);
        j["shifted"] = band(row.shifted);
        j["matrix"] = band(row.matrix);
        write_file(fs::path(g.out) / ("table1_k" + std::to_string(k) + ".json"), j.dump(2) + "\n",
                   man.files);
        std::cout << "k=" << k << "  monomial 10^" << format_double(row.monomial.log10_mid())
                  << "  shifted 10^" << format_double(row.shifted.log10_mid()) << "  matrix 10^"
                  << format_double(row.matrix.log10_mid()) << "\n";
    }

    if (btilde) {
        if (kmax < 2) throw UsageError("report --btilde: kmax must be >= 2");
        require_cap(kmax, 8, g.force, "report --btilde");
        man.cfg["btilde_kmax"] = kmax;
        std::ostringstream csv;
        csv << "u";
        for (int kk = 2; kk <= kmax; ++kk) csv << ",btilde_k" << kk;
        csv << "\n";
        const int samples = 200;
        for (int i = 0; i <= samples; ++i) {
            double u = 1.1180 * i / samples;
            csv << format_double(u);
            for (int kk = 2; kk <= kmax; ++kk) {
                auto b = shifted_condition_B(kk, u);
                csv << "," << (b.overflow ? "inf" : format_double(b.value));
            }
            csv << "\n";
        }
        write_file(fs::path(g.out) / "btilde.csv", csv.str(), man.files);
    }

    man.finish();
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euclid polynomials, height-1 companion matrices, spectra and conditioning"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--out", g.out, "output directory")->capture_default_str();
    app.add_option("--format", g.format, "output format (companion: matrix-market|csv-triplets|dense-json)");
    app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)")->capture_default_str();
    app.add_option("--precision-bits", g.precision_bits, "extended precision for evaluation paths");
    app.add_flag("--force", g.force, "override desk-scale budgets");

    int k = 4;
    std::string basis = "monomial";
    auto* poly = app.add_subcommand("poly", "emit exact polynomial coefficients");
    poly->add_option("--k", k, "generation index")->required();
    poly->add_option("--basis", basis, "monomial or shifted")->capture_default_str();

    std::string family = "euclid", seed_variant = "A", block_order;
    bool verify_flag = false;
    auto* comp = app.add_subcommand("companion", "emit a companion matrix");
    comp->add_option("--k", k, "generation index")->required();
    comp->add_option("--family", family, "euclid, tilde or mandelbrot")->capture_default_str();
    comp->add_option("--variant-seed", seed_variant, "E_2 seed: A, B, C or D")->capture_default_str();
    comp->add_option("--block-order", block_order, "top-level tilde block permutation, e.g. 3,0,2,1");
    comp->add_flag("--verify", verify_flag, "exact characteristic polynomial check");

    bool plot = false, sigma_resid = false;
    auto* eigs = app.add_subcommand("eigs", "compute all eigenvalues with diagnostics");
    eigs->add_option("--k", k, "generation index")->required();
    eigs->add_flag("--plot", plot, "write an SVG scatter with the |z + 1/2| circle");
    eigs->add_flag("--sigma-resid", sigma_resid, "force sigma_min residuals even for large k");

    std::string kind = "pseudospectrum", eps_spec, grid_spec;
    auto* fields = app.add_subcommand("fields", "compute a scalar field and contours");
    fields->add_option("--k", k, "generation index")->required();
    fields->add_option("--kind", kind, "pseudospectrum, pseudozero_monomial, pseudozero_shifted")
        ->capture_default_str();
    fields->add_option("--eps", eps_spec, "contour levels lo:hi:count (log spaced)");
    fields->add_option("--grid", grid_spec, "re_min:re_max:im_min:im_max:nx:ny");

    int kmax = 8, egyptian_n = 10;
    std::string check;
    auto* verify = app.add_subcommand("verify", "run the exact verification suite");
    verify->add_option("--kmax", kmax, "largest generation for exact checks")->capture_default_str();
    verify->add_option("--check", check, "run a single named check");
    verify->add_option("--n", egyptian_n, "depth for the Egyptian fraction identity")
        ->capture_default_str();

    bool slope = false, table1 = false, btilde = false;
    int kmin = 2, table_k = 6, slope_kmax = 12;
    auto* report = app.add_subcommand("report", "condition-number growth and merge-band tables");
    report->add_flag("--slope", slope, "log-log fit of max eigencondition vs degree");
    report->add_flag("--table1", table1, "three-way merge bands for one k");
    report->add_flag("--btilde", btilde, "shifted-basis condition number curves");
    report->add_option("--kmin", kmin, "first generation for the fit")->capture_default_str();
    report->add_option("--kmax", slope_kmax, "last generation for the fit / btilde")->capture_default_str();
    report->add_option("--k", table_k, "generation for --table1")->capture_default_str();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(poly)) return cmd_poly(g, k, basis);
        if (app.got_subcommand(comp)) return cmd_companion(g, k, family, seed_variant, block_order, verify_flag);
        if (app.got_subcommand(eigs)) return cmd_eigs(g, k, plot, sigma_resid);
        if (app.got_subcommand(fields)) return cmd_fields(g, k, kind, eps_spec, grid_spec);
        if (app.got_subcommand(verify)) return cmd_verify(g, kmax, check, egyptian_n);
        if (app.got_subcommand(report)) return cmd_report(g, slope, table1, btilde, kmin, slope_kmax, table_k);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
