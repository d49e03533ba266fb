#pragma once

// Dense numerical linear algebra for upper Hessenberg matrices:
//   - Francis double-shift QR (eigenvalues only, real arithmetic),
//   - LU of (H - sigma*I) with adjacent-row pivoting, O(n^2), plus solves
//     with the factor and its conjugate transpose,
//   - inverse Lanczos for the smallest singular value of (zI - H).
//
// The companion matrices this library produces are already Hessenberg, so no
// reduction step ever runs; that is the whole point of using them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace euclid {

using Complex = std::complex<double>;

struct EigOptions {
    int iter_budget_per_n = 30;
    bool balance = false;  // entries are in {-1,0,1}; balancing is a no-op risk
};

class EigNonConvergence : public std::runtime_error {
  public:
    EigNonConvergence(int deflated, int lo, int hi)
        : std::runtime_error("QR iteration exhausted its budget with " + std::to_string(deflated) +
                             " eigenvalues deflated, active window [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]"),
          deflated_count(deflated),
          window_lo(lo),
          window_hi(hi) {}
    int deflated_count;
    int window_lo;
    int window_hi;
};

namespace detail {

// Scale rows/columns by powers of 2 to roughly equalize row/column norms.
// Exposed as an option only; eigenvalues are invariant.
inline void balance_in_place(std::vector<double>& h, int n) {
    auto H = [&](int i, int j) -> double& { return h[static_cast<size_t>(i) * n + j]; };
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0, c = 0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                r += std::abs(H(i, j));
                c += std::abs(H(j, i));
            }
            if (r == 0 || c == 0) continue;
            double f = 1.0;
            while (c < r / 2) c *= 4, r /= 4, f *= 2;
            while (c > r * 2) c /= 4, r *= 4, f /= 2;
            if (f != 1.0) {
                done = false;
                for (int j = 0; j < n; ++j) H(i, j) /= f;
                for (int j = 0; j < n; ++j) H(j, i) *= f;
            }
        }
    }
}

}  // namespace detail

/// All eigenvalues of an upper Hessenberg matrix (row-major, n x n).
/// Complex pairs come out exactly conjugate (both members are derived from
/// one 2x2 block). Order is unspecified; callers sort.
inline std::vector<Complex> hessenberg_eigenvalues(std::vector<double> h, int n,
                                                   const EigOptions& opts = {}) {
    if (n < 1) throw std::invalid_argument("hessenberg_eigenvalues: empty matrix");
    if (opts.balance) detail::balance_in_place(h, n);
    auto H = [&](int i, int j) -> double& { return h[static_cast<size_t>(i) * n + j]; };
    const double ulp = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min() / ulp;

    std::vector<Complex> eig(static_cast<size_t>(n));
    int hi = n - 1;
    long total = 0;
    const long budget = static_cast<long>(opts.iter_budget_per_n) * n;
    int since_deflation = 0;

    while (hi >= 0) {
        // Deflate negligible subdiagonals below hi.
        int lo = hi;
        while (lo > 0) {
            double tst = std::abs(H(lo - 1, lo - 1)) + std::abs(H(lo, lo));
            if (tst == 0.0) {
                if (lo - 2 >= 0) tst += std::abs(H(lo - 1, lo - 2));
                if (lo + 1 <= n - 1) tst += std::abs(H(lo + 1, lo));
            }
            if (std::abs(H(lo, lo - 1)) <= std::max(ulp * tst, tiny)) {
                H(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (lo == hi) {
            eig[static_cast<size_t>(hi)] = Complex(H(hi, hi), 0.0);
            --hi;
            since_deflation = 0;
            continue;
        }
        if (lo == hi - 1) {
            double a = H(hi - 1, hi - 1), b = H(hi - 1, hi);
            double c = H(hi, hi - 1), d = H(hi, hi);
            double mid = 0.5 * (a + d);
            double det = a * d - b * c;
            double disc = mid * mid - det;
            if (disc >= 0.0) {
                double sq = std::sqrt(disc);
                double r1 = mid >= 0 ? mid + sq : mid - sq;
                double r2 = (r1 != 0.0) ? det / r1 : 0.0;
                eig[static_cast<size_t>(hi - 1)] = Complex(r1, 0.0);
                eig[static_cast<size_t>(hi)] = Complex(r2, 0.0);
            } else {
                double im = std::sqrt(-disc);
                eig[static_cast<size_t>(hi - 1)] = Complex(mid, im);
                eig[static_cast<size_t>(hi)] = Complex(mid, -im);
            }
            hi -= 2;
            since_deflation = 0;
            continue;
        }

        if (total >= budget) throw EigNonConvergence(n - 1 - hi, lo, hi);
        ++total;
        ++since_deflation;

        // Shift sum s and product p from the trailing 2x2 (or an exceptional
        // surrogate every 10 stalled iterations).
        double s, p;
        if (since_deflation % 10 == 0) {
            double w = std::abs(H(hi, hi - 1)) + std::abs(H(hi - 1, hi - 2));
            double h11 = 0.75 * w + H(hi, hi);
            double h12 = -0.4375 * w;
            double h21 = w;
            s = 2.0 * h11;
            p = h11 * h11 - h12 * h21;
        } else {
            s = H(hi - 1, hi - 1) + H(hi, hi);
            p = H(hi - 1, hi - 1) * H(hi, hi) - H(hi - 1, hi) * H(hi, hi - 1);
        }

        // First column of (H - aI)(H - bI), three nonzeros.
        double x = H(lo, lo) * H(lo, lo) + H(lo, lo + 1) * H(lo + 1, lo) - s * H(lo, lo) + p;
        double y = H(lo + 1, lo) * (H(lo, lo) + H(lo + 1, lo + 1) - s);
        double z = H(lo + 1, lo) * H(lo + 2, lo + 1);

        for (int m = lo; m <= hi - 2; ++m) {
            double scale = std::abs(x) + std::abs(y) + std::abs(z);
            double vx = 0, vy = 0, vz = 0, vnorm2 = 0;
            if (scale != 0.0) {
                vx = x / scale;
                vy = y / scale;
                vz = z / scale;
                double norm = std::sqrt(vx * vx + vy * vy + vz * vz);
                if (vx < 0) norm = -norm;
                vx += norm;
                vnorm2 = vx * vx + vy * vy + vz * vz;
            }
            if (vnorm2 != 0.0) {
                int jlo = std::max(lo, m - 1);
                for (int j = jlo; j <= hi; ++j) {
                    double t = 2.0 * (vx * H(m, j) + vy * H(m + 1, j) + vz * H(m + 2, j)) / vnorm2;
                    H(m, j) -= t * vx;
                    H(m + 1, j) -= t * vy;
                    H(m + 2, j) -= t * vz;
                }
                int iend = std::min(hi, m + 3);
                for (int i = lo; i <= iend; ++i) {
                    double t = 2.0 * (vx * H(i, m) + vy * H(i, m + 1) + vz * H(i, m + 2)) / vnorm2;
                    H(i, m) -= t * vx;
                    H(i, m + 1) -= t * vy;
                    H(i, m + 2) -= t * vz;
                }
            }
            if (m > lo) {
                H(m + 1, m - 1) = 0.0;
                H(m + 2, m - 1) = 0.0;
            }
            x = H(m + 1, m);
            y = H(m + 2, m);
            z = (m + 3 <= hi) ? H(m + 3, m) : 0.0;
        }

        // Trailing 2-element reflection.
        {
            double scale = std::abs(x) + std::abs(y);
            if (scale != 0.0) {
                double vx = x / scale, vy = y / scale;
                double norm = std::sqrt(vx * vx + vy * vy);
                if (vx < 0) norm = -norm;
                vx += norm;
                double vnorm2 = vx * vx + vy * vy;
                if (vnorm2 != 0.0) {
                    int m = hi - 1;
                    for (int j = m - 1; j <= hi; ++j) {
                        double t = 2.0 * (vx * H(m, j) + vy * H(m + 1, j)) / vnorm2;
                        H(m, j) -= t * vx;
                        H(m + 1, j) -= t * vy;
                    }
                    for (int i = lo; i <= hi; ++i) {
                        double t = 2.0 * (vx * H(i, m) + vy * H(i, m + 1)) / vnorm2;
                        H(i, m) -= t * vx;
                        H(i, m + 1) -= t * vy;
                    }
                    H(hi, hi - 2) = 0.0;
                }
            }
        }
    }
    return eig;
}

// ---------------------------------------------------------------------------

/// LU of (H - shift*I) for real upper Hessenberg H, with pivoting restricted
/// to adjacent rows (all a Hessenberg profile ever needs). Exactly singular
/// pivots are replaced by a tiny perturbation so inverse iteration can run.
class HessenbergLU {
  public:
    HessenbergLU(const double* h, int n, Complex shift) : n_(n), u_(static_cast<size_t>(n) * n) {
        mult_.resize(static_cast<size_t>(std::max(0, n - 1)));
        piv_.resize(mult_.size());
        double hnorm = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = std::max(0, i - 1); j < n; ++j)
                hnorm = std::max(hnorm, std::abs(h[static_cast<size_t>(i) * n + j]));
        pert_ = (hnorm + std::abs(shift)) * 1e-20;
        for (int i = 0; i < n; ++i) {
            Complex* row = u_.data() + static_cast<size_t>(i) * n;
            const double* src = h + static_cast<size_t>(i) * n;
            for (int j = 0; j < n; ++j) row[j] = Complex(src[j], 0.0);
            row[i] -= shift;
        }
        for (int j = 0; j + 1 < n; ++j) {
            Complex* rj = u_.data() + static_cast<size_t>(j) * n;
            Complex* rj1 = u_.data() + static_cast<size_t>(j + 1) * n;
            bool swap = std::abs(rj1[j]) > std::abs(rj[j]);
            piv_[static_cast<size_t>(j)] = swap;
            if (swap) std::swap_ranges(rj + j, rj + n, rj1 + j);
            if (rj[j] == Complex(0.0, 0.0)) rj[j] = Complex(pert_, 0.0);
            Complex m = rj1[j] / rj[j];
            mult_[static_cast<size_t>(j)] = m;
            rj1[j] = Complex(0.0, 0.0);
            if (m != Complex(0.0, 0.0))
                for (int c = j + 1; c < n; ++c) rj1[c] -= m * rj[c];
        }
        Complex& last = u_[static_cast<size_t>(n - 1) * n + (n - 1)];
        if (last == Complex(0.0, 0.0)) last = Complex(pert_, 0.0);
    }

    int dim() const { return n_; }

    /// x <- (H - shift I)^{-1} x
    void solve_in_place(std::vector<Complex>& x) const {
        for (int j = 0; j + 1 < n_; ++j) {
            if (piv_[static_cast<size_t>(j)]) std::swap(x[static_cast<size_t>(j)], x[static_cast<size_t>(j + 1)]);
            x[static_cast<size_t>(j + 1)] -= mult_[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
        }
        for (int i = n_ - 1; i >= 0; --i) {
            const Complex* row = u_.data() + static_cast<size_t>(i) * n_;
            Complex s = x[static_cast<size_t>(i)];
            for (int c = i + 1; c < n_; ++c) s -= row[c] * x[static_cast<size_t>(c)];
            x[static_cast<size_t>(i)] = s / row[i];
        }
    }

    /// x <- (H - shift I)^{-H} x
    void solve_adjoint_in_place(std::vector<Complex>& x) const {
        // Forward substitution with U^H in saxpy form (row access of U).
        for (int j = 0; j < n_; ++j) {
            const Complex* row = u_.data() + static_cast<size_t>(j) * n_;
            Complex t = x[static_cast<size_t>(j)] / std::conj(row[j]);
            x[static_cast<size_t>(j)] = t;
            if (t != Complex(0.0, 0.0))
                for (int c = j + 1; c < n_; ++c) x[static_cast<size_t>(c)] -= std::conj(row[c]) * t;
        }
        for (int j = n_ - 2; j >= 0; --j) {
            x[static_cast<size_t>(j)] -= std::conj(mult_[static_cast<size_t>(j)]) * x[static_cast<size_t>(j + 1)];
            if (piv_[static_cast<size_t>(j)]) std::swap(x[static_cast<size_t>(j)], x[static_cast<size_t>(j + 1)]);
        }
    }

  private:
    int n_;
    std::vector<Complex> u_;
    std::vector<Complex> mult_;
    std::vector<uint8_t> piv_;
    double pert_;
};

namespace detail {

inline double norm2(const std::vector<Complex>& v) {
    double s = 0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

inline Complex dot_conj(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s{0.0, 0.0};
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// Largest eigenvalue of a symmetric tridiagonal matrix by Sturm bisection.
inline double tridiag_max_eigenvalue(const std::vector<double>& alpha, const std::vector<double>& beta) {
    size_t m = alpha.size();
    double lo = alpha[0], hi = alpha[0];
    for (size_t i = 0; i < m; ++i) {
        double b0 = i > 0 ? std::abs(beta[i - 1]) : 0.0;
        double b1 = i + 1 < m ? std::abs(beta[i]) : 0.0;
        lo = std::min(lo, alpha[i] - b0 - b1);
        hi = std::max(hi, alpha[i] + b0 + b1);
    }
    auto count_below = [&](double x) {
        int cnt = 0;
        double d = 1.0;
        for (size_t i = 0; i < m; ++i) {
            double b2 = i > 0 ? beta[i - 1] * beta[i - 1] : 0.0;
            d = alpha[i] - x - b2 / d;
            if (d == 0.0) d = 1e-300;
            if (d < 0) ++cnt;
        }
        return cnt;
    };
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max({std::abs(lo), std::abs(hi), 1e-30}); ++it) {
        double mid = 0.5 * (lo + hi);
        if (count_below(mid) == static_cast<int>(m))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Smallest singular value of (zI - H) by inverse Lanczos on the normal
/// equations, using one Hessenberg LU of (H - zI). Full reorthogonalization;
/// converges in a handful of iterations even for clustered singular values.
inline double sigma_min_hessenberg(const double* h, int n, Complex z, int max_iters = 64,
                                   double rel_tol = 1e-10) {
    HessenbergLU lu(h, n, z);
    std::vector<std::vector<Complex>> basis;
    std::vector<double> alpha, beta;
    std::vector<Complex> q(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) q[static_cast<size_t>(i)] = Complex(1.0 + i % 3, 0.5 * ((i * 7) % 5));
    double nq = detail::norm2(q);
    for (auto& c : q) c /= nq;

    double prev_sigma = -1.0;
    double theta = 0.0;
    int stable = 0;
    int iters = std::min(max_iters, n);  // Krylov space is exhausted after n steps
    for (int it = 0; it < iters; ++it) {
        basis.push_back(q);
        std::vector<Complex> w = q;
        lu.solve_adjoint_in_place(w);
        lu.solve_in_place(w);  // w = (A^H A)^{-1} q, A = H - zI
        double a = std::real(detail::dot_conj(q, w));
        alpha.push_back(a);
        double nw0 = detail::norm2(w);
        // two full reorthogonalization passes; one pass of classical
        // Gram-Schmidt loses orthogonality and breeds ghost Ritz values
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                Complex c = detail::dot_conj(b, w);
                for (size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
            }
        }
        double nb = detail::norm2(w);
        theta = detail::tridiag_max_eigenvalue(alpha, beta);
        double sigma = theta > 0 ? 1.0 / std::sqrt(theta) : 0.0;
        // plateaus are possible before the extremal Ritz value is captured,
        // so ask for sustained stability rather than one small step
        if (prev_sigma >= 0 && std::abs(sigma - prev_sigma) <= rel_tol * std::max(sigma, 1e-300))
            ++stable;
        else
            stable = 0;
        prev_sigma = sigma;
        if (stable >= 2 && it >= 8) return sigma;
        if (nb <= 1e-12 * nw0) break;  // what remains is cancellation noise
        beta.push_back(nb);
        for (auto& c : w) c /= nb;
        q = std::move(w);
    }
    return theta > 0 ? 1.0 / std::sqrt(theta) : 0.0;
}

struct InverseIterationResult {
    std::vector<Complex> vector;
    double residual = 0.0;  // ||(H - lambda I) v|| for the returned unit v
};

/// One eigenvector (right if adjoint=false, left if adjoint=true) by inverse
/// iteration on the shifted LU. Unit 2-norm result.
inline InverseIterationResult inverse_iteration(const double* h, int n, const HessenbergLU& lu,
                                                Complex lambda, bool adjoint, int iters = 3,
                                                uint64_t start_seed = 0x9e3779b97f4a7c15ull) {
    std::vector<Complex> v(static_cast<size_t>(n));
    uint64_t s = start_seed;
    for (auto& c : v) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        c = Complex(1.0 + static_cast<double>((s >> 40) & 0xff) / 256.0,
                    static_cast<double>((s >> 20) & 0xff) / 256.0);
    }
    double nv = detail::norm2(v);
    for (auto& c : v) c /= nv;
    for (int it = 0; it < iters; ++it) {
        if (adjoint)
            lu.solve_adjoint_in_place(v);
        else
            lu.solve_in_place(v);
        nv = detail::norm2(v);
        if (!std::isfinite(nv) || nv == 0.0) throw std::runtime_error("inverse iteration breakdown");
        for (auto& c : v) c /= nv;
    }
    // Residual of the returned unit vector: (H - lambda I) v for right vectors,
    // (H - lambda I)^H v for left ones (H real, so H^H = H^T).
    std::vector<Complex> r(static_cast<size_t>(n), Complex(0, 0));
    for (int i = 0; i < n; ++i) {
        const double* row = h + static_cast<size_t>(i) * n;
        if (!adjoint) {
            Complex s2{0, 0};
            for (int j = std::max(0, i - 1); j < n; ++j) s2 += row[j] * v[static_cast<size_t>(j)];
            r[static_cast<size_t>(i)] = s2 - lambda * v[static_cast<size_t>(i)];
        } else {
            for (int j = std::max(0, i - 1); j < n; ++j)
                r[static_cast<size_t>(j)] += row[j] * v[static_cast<size_t>(i)];
        }
    }
    if (adjoint)
        for (int j = 0; j < n; ++j)
            r[static_cast<size_t>(j)] -= std::conj(lambda) * v[static_cast<size_t>(j)];
    return {std::move(v), detail::norm2(r)};
}

}  // namespace euclid
