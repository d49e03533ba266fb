#pragma once

// Eigenvalues of the companion matrices, per-eigenvalue condition numbers
// K_e = 1/|y^H x|, recurrence-based residuals and Newton refinement.

#include <euclid/companion.hpp>
#include <euclid/euclid_family.hpp>
#include <euclid/hessenberg.hpp>
#include <euclid/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace euclid {

/// Sort key used everywhere eigenvalues are emitted: by real part, then
/// imaginary part.
inline void sort_eigenvalues(std::vector<Complex>& eig) {
    std::sort(eig.begin(), eig.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

/// Make conjugate symmetry exact: pair off-axis eigenvalues and rewrite each
/// pair as (re, +/-im) from averaged halves. The QR already produces exact
/// pairs; this is the documented post-processing guarantee.
inline void enforce_conjugate_pairs(std::vector<Complex>& eig) {
    std::vector<Complex> up, down;
    for (const auto& z : eig)
        if (z.imag() > 0)
            up.push_back(z);
        else if (z.imag() < 0)
            down.push_back(z);
    if (up.size() != down.size()) return;  // leave as computed; tests will notice
    sort_eigenvalues(up);
    std::sort(down.begin(), down.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() > b.imag();
    });
    std::vector<Complex> fixed;
    fixed.reserve(eig.size());
    for (size_t i = 0; i < up.size(); ++i) {
        double re = 0.5 * (up[i].real() + down[i].real());
        double im = 0.5 * (up[i].imag() - down[i].imag());
        fixed.emplace_back(re, im);
        fixed.emplace_back(re, -im);
    }
    for (const auto& z : eig)
        if (z.imag() == 0) fixed.push_back(z);
    eig = std::move(fixed);
    sort_eigenvalues(eig);
}

/// All eigenvalues, sorted, conjugate pairs exact.
inline std::vector<Complex> eigenvalues(const CompanionMatrix& m, const EigOptions& opts = {}) {
    auto eig = hessenberg_eigenvalues(m.to_dense(), m.dim(), opts);
    enforce_conjugate_pairs(eig);
    sort_eigenvalues(eig);
    return eig;
}

/// K_e = 1/|y^H x| from unit left/right eigenvectors obtained by inverse
/// iteration on the same shifted LU. Falls back once to a perturbed shift if
/// the iteration breaks down.
inline double eig_condition_dense(const double* h, int n, Complex lambda) {
    for (int attempt = 0; attempt < 2; ++attempt) {
        Complex shift = lambda;
        if (attempt == 1) shift += Complex(1e-12, 1e-12) * (1.0 + std::abs(lambda));
        try {
            HessenbergLU lu(h, n, shift);
            auto right = inverse_iteration(h, n, lu, lambda, false);
            auto left = inverse_iteration(h, n, lu, lambda, true);
            double denom = std::abs(detail::dot_conj(left.vector, right.vector));
            if (denom == 0.0 || !std::isfinite(denom)) throw std::runtime_error("rank-deficient overlap");
            return 1.0 / denom;
        } catch (const std::runtime_error&) {
            if (attempt == 1) throw;
        }
    }
    throw std::runtime_error("eig_condition: inverse iteration failed twice");
}

inline double eig_condition(const CompanionMatrix& m, Complex lambda) {
    auto dense = m.to_dense();
    return eig_condition_dense(dense.data(), m.dim(), lambda);
}

struct NewtonResult {
    Complex root;
    int iterations = 0;
    bool diverged = false;
};

/// Newton on the coefficient-free recurrence; usable far beyond the range
/// where monomial coefficients fit in binary64.
inline NewtonResult newton_refine(int k, Complex z0) {
    Complex z = z0;
    double prev_step = std::numeric_limits<double>::infinity();
    int growth = 0;
    for (int it = 1; it <= 10; ++it) {
        auto ev = euclid_eval_recurrence(k, z);
        if (ev.overflow || ev.derivative == Complex(0.0, 0.0)) return {z, it, true};
        Complex step = ev.value / ev.derivative;
        z -= step;
        double s = std::abs(step);
        if (s < 1e-14 * std::max(std::abs(z), 1e-300)) return {z, it, false};
        growth = (s > prev_step) ? growth + 1 : 0;
        if (growth >= 3) return {z, it, true};
        prev_step = s;
    }
    return {z, 10, false};
}

/// |E_k(z)/E_k'(z)|: the Newton correction used as an accuracy measure.
inline double newton_correction(int k, Complex z) {
    auto ev = euclid_eval_recurrence(k, z);
    if (ev.overflow) return std::numeric_limits<double>::infinity();
    return std::abs(ev.value / ev.derivative);
}

struct Spectrum {
    int k = 0;
    std::vector<Complex> eigenvalues;        // sorted by (re, im)
    std::vector<double> cond;                // K_e per eigenvalue
    std::vector<double> resid_recurrence;    // |E_k| / B_k via the recurrence
    std::vector<double> sigma_resid;         // sigma_min(lambda I - E_k); may be empty
};

struct SpectrumOptions {
    EigOptions eig;
    int threads = 0;
    bool with_sigma_resid = false;
    bool with_cond = true;
};

/// Full diagnostic spectrum of the Euclid companion E_k.
inline Spectrum compute_spectrum(int k, const VariantConfig& cfg = {}, const SpectrumOptions& opts = {}) {
    CompanionMatrix m = build_companion(k, cfg);
    auto dense = m.to_dense();
    int n = m.dim();
    Spectrum s;
    s.k = k;
    s.eigenvalues = eigenvalues(m, opts.eig);

    s.resid_recurrence.resize(s.eigenvalues.size());
    for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
        auto ev = euclid_eval_recurrence(k, s.eigenvalues[i]);
        auto b = poly_condition_B(k, s.eigenvalues[i]);
        s.resid_recurrence[i] = std::abs(ev.value) / b.value;
    }

    if (opts.with_cond) {
        s.cond.assign(s.eigenvalues.size(), 0.0);
        // conjugate pairs share K_e; compute im >= 0 and mirror
        std::vector<size_t> jobs;
        for (size_t i = 0; i < s.eigenvalues.size(); ++i)
            if (s.eigenvalues[i].imag() >= 0) jobs.push_back(i);
        parallel_for(jobs.size(), opts.threads, [&](size_t t) {
            size_t i = jobs[t];
            s.cond[i] = eig_condition_dense(dense.data(), n, s.eigenvalues[i]);
        });
        for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
            if (s.eigenvalues[i].imag() < 0) {
                Complex conj_val = std::conj(s.eigenvalues[i]);
                auto it = std::lower_bound(
                    s.eigenvalues.begin(), s.eigenvalues.end(), conj_val, [](const Complex& a, const Complex& b) {
                        if (a.real() != b.real()) return a.real() < b.real();
                        return a.imag() < b.imag();
                    });
                if (it != s.eigenvalues.end() && *it == conj_val)
                    s.cond[i] = s.cond[static_cast<size_t>(it - s.eigenvalues.begin())];
                else
                    s.cond[i] = eig_condition_dense(dense.data(), n, s.eigenvalues[i]);
            }
        }
    }

    if (opts.with_sigma_resid) {
        s.sigma_resid.assign(s.eigenvalues.size(), 0.0);
        parallel_for(s.eigenvalues.size(), opts.threads, [&](size_t i) {
            s.sigma_resid[i] = sigma_min_hessenberg(dense.data(), n, s.eigenvalues[i]);
        });
    }
    return s;
}

struct RootSummary {
    int k = 0;
    double max_abs_shifted = 0.0;  // max |lambda + 1/2|
    double max_abs = 0.0;
    int count_left_halfplane = 0;   // Re < 0
    int count_right_halfplane = 0;  // Re >= 0
    int count_upper = 0;            // Im > 0
    int count_lower = 0;            // Im < 0
    int count_real = 0;
};

inline RootSummary root_summary(int k, const std::vector<Complex>& eig) {
    RootSummary r;
    r.k = k;
    for (const auto& z : eig) {
        r.max_abs_shifted = std::max(r.max_abs_shifted, std::abs(z + 0.5));
        r.max_abs = std::max(r.max_abs, std::abs(z));
        (z.real() < 0 ? r.count_left_halfplane : r.count_right_halfplane)++;
        if (z.imag() > 0)
            r.count_upper++;
        else if (z.imag() < 0)
            r.count_lower++;
        else
            r.count_real++;
    }
    return r;
}

inline RootSummary root_summary(int k) { return root_summary(k, eigenvalues(build_companion(k))); }

inline json root_summary_to_json(const RootSummary& r) {
    json j;
    j["k"] = r.k;
    j["max_abs_shifted"] = r.max_abs_shifted;
    j["max_abs"] = r.max_abs;
    j["count_left_halfplane"] = r.count_left_halfplane;
    j["count_right_halfplane"] = r.count_right_halfplane;
    j["count_upper"] = r.count_upper;
    j["count_lower"] = r.count_lower;
    j["count_real"] = r.count_real;
    return j;
}

/// CSV: re,im,cond,resid_recurrence,resid_sigma; one row per eigenvalue,
/// already sorted. Missing diagnostics serialize as nan.
inline std::string spectrum_to_csv(const Spectrum& s) {
    std::ostringstream os;
    os << "re,im,cond,resid_recurrence,resid_sigma\n";
    for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
        os << format_double(s.eigenvalues[i].real()) << "," << format_double(s.eigenvalues[i].imag()) << ",";
        os << (i < s.cond.size() ? format_double(s.cond[i]) : "nan") << ",";
        os << (i < s.resid_recurrence.size() ? format_double(s.resid_recurrence[i]) : "nan") << ",";
        os << (i < s.sigma_resid.size() ? format_double(s.sigma_resid[i]) : "nan") << "\n";
    }
    return os.str();
}

}  // namespace euclid
