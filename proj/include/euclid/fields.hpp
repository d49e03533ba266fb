#pragma once

// Scalar fields over complex-plane grids: pseudospectra (smallest singular
// value of zI - E_k) and pseudozero fields (|E_k| relative to the
// all-positive-coefficient majorant), plus marching-squares contours and
// sublevel-set connectivity used for merge detection.

#include <euclid/companion.hpp>
#include <euclid/euclid_family.hpp>
#include <euclid/hessenberg.hpp>
#include <euclid/highprec.hpp>
#include <euclid/parallel.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace euclid {

struct GridSpec {
    double re_min = -1.8, re_max = 0.8;
    double im_min = -1.3, im_max = 1.3;
    int nx = 400, ny = 400;
    size_t node_budget = 1'000'000;

    void validate() const {
        if (nx < 1 || ny < 1) throw std::invalid_argument("grid: nx, ny must be positive");
        if (nx > 1 && !(re_min < re_max)) throw std::invalid_argument("grid: re_min < re_max required");
        if (ny > 1 && !(im_min < im_max)) throw std::invalid_argument("grid: im_min < im_max required");
        if (static_cast<size_t>(nx) * static_cast<size_t>(ny) > node_budget)
            throw std::invalid_argument("grid: node budget exceeded");
    }

    // Endpoint-weighted form: for a symmetric axis the mirrored node is the
    // exact negation, which makes conjugate symmetry of the fields exact.
    double x(int i) const {
        return nx == 1 ? re_min : ((nx - 1 - i) * re_min + i * re_max) / (nx - 1);
    }
    double y(int j) const {
        return ny == 1 ? im_min : ((ny - 1 - j) * im_min + j * im_max) / (ny - 1);
    }
    Complex node(int i, int j) const { return {x(i), y(j)}; }
    size_t count() const { return static_cast<size_t>(nx) * static_cast<size_t>(ny); }
    double diameter() const { return std::hypot(re_max - re_min, im_max - im_min); }
};

enum class FieldKind { pseudospectrum, pseudozero_monomial, pseudozero_shifted };

inline std::string field_kind_tag(FieldKind k) {
    switch (k) {
        case FieldKind::pseudospectrum: return "pseudospectrum";
        case FieldKind::pseudozero_monomial: return "pseudozero_monomial";
        default: return "pseudozero_shifted";
    }
}

struct ScalarField {
    GridSpec spec;
    FieldKind kind = FieldKind::pseudospectrum;
    std::vector<double> values;    // index j*nx + i
    std::vector<uint8_t> invalid;  // per-node overflow flags
    int precision_bits_used = 0;   // 0 = binary64

    double at(int i, int j) const { return values[static_cast<size_t>(j) * spec.nx + i]; }
    bool valid(int i, int j) const {
        return invalid.empty() || invalid[static_cast<size_t>(j) * spec.nx + i] == 0;
    }
    size_t invalid_count() const {
        size_t n = 0;
        for (auto f : invalid) n += f;
        return n;
    }
};

// --- sigma_min --------------------------------------------------------------

/// Smallest singular value of (zI - m).
inline double sigma_min(const CompanionMatrix& m, Complex z) {
    auto dense = m.to_dense();
    return sigma_min_hessenberg(dense.data(), m.dim(), z);
}

/// f(z) = sigma_min(zI - m) over the grid.
inline ScalarField pseudospectrum_field(const CompanionMatrix& m, const GridSpec& g, int threads = 0) {
    g.validate();
    auto dense = m.to_dense();
    int n = m.dim();
    ScalarField f;
    f.spec = g;
    f.kind = FieldKind::pseudospectrum;
    f.values.assign(g.count(), 0.0);
    parallel_for(g.count(), threads, [&](size_t idx) {
        int i = static_cast<int>(idx % static_cast<size_t>(g.nx));
        int j = static_cast<int>(idx / static_cast<size_t>(g.nx));
        f.values[idx] = sigma_min_hessenberg(dense.data(), n, g.node(i, j));
    });
    return f;
}

// --- pseudozero fields -------------------------------------------------------

enum class PolyBasis { monomial, shifted };

inline PolyBasis basis_from_string(const std::string& s) {
    if (s == "monomial") return PolyBasis::monomial;
    if (s == "shifted") return PolyBasis::shifted;
    throw std::invalid_argument("unknown basis: " + s);
}

struct PseudozeroOptions {
    int precision_bits = 0;  // 0 = automatic (binary64 where it is safe)
    int threads = 0;
};

namespace detail {

/// |p(z)| / sum_j |c_j| |z|^j with exact coefficients, evaluated in MPFR.
/// This is the coefficient-basis route, precision doing the work the small
/// companion entries would otherwise do.
class MpfrPseudozero {
  public:
    MpfrPseudozero(std::vector<BigRational> coeffs, mpfr_prec_t prec) : prec_(prec) {
        for (auto& c : coeffs) {
            coeffs_.emplace_back(c, prec);
            BigRational a = abs(c);
            abs_coeffs_.emplace_back(a, prec);
        }
    }

    double operator()(Complex z) const {
        BigComplex acc(prec_);
        BigComplex zz(z.real(), z.imag(), prec_);
        for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * zz + coeffs_[i];
        BigFloat num = acc.abs();
        BigFloat r = zz.abs();
        BigFloat den(0.0, prec_);
        for (size_t i = abs_coeffs_.size(); i-- > 0;) den = den * r + abs_coeffs_[i];
        return (num / den).to_double();
    }

  private:
    mpfr_prec_t prec_;
    std::vector<BigFloat> coeffs_;
    std::vector<BigFloat> abs_coeffs_;
};

}  // namespace detail

/// Pointwise pseudozero value in binary64 via the coefficient-free
/// recurrence; overflow reported through the flag.
inline CondResult pseudozero_value(int k, PolyBasis basis, Complex z) {
    if (basis == PolyBasis::monomial) {
        auto ev = euclid_eval_recurrence(k, z);
        auto b = poly_condition_B(k, z);
        if (ev.overflow || b.overflow) return {0.0, true};
        return {std::abs(ev.value) / b.value, false};
    }
    Complex u = z + 0.5;
    auto ev = euclid_eval_recurrence(k, z);
    auto b = shifted_condition_B(k, std::abs(u));
    if (ev.overflow || b.overflow) return {0.0, true};
    return {std::abs(ev.value) / b.value, false};
}

/// Field of |E_k| / B over the grid; grid coordinates are lambda-plane for
/// both bases (the shifted basis evaluates at u = lambda + 1/2). Monomial
/// fields for k >= 7 automatically run in extended precision.
inline ScalarField pseudozero_field(int k, PolyBasis basis, const GridSpec& g,
                                    const PseudozeroOptions& opts = {}) {
    g.validate();
    int bits = opts.precision_bits;
    if (bits == 0) {
        if (basis == PolyBasis::monomial && k >= 7) bits = 256;
        if (basis == PolyBasis::shifted && k >= 9) bits = 256;
    }
    ScalarField f;
    f.spec = g;
    f.kind = basis == PolyBasis::monomial ? FieldKind::pseudozero_monomial : FieldKind::pseudozero_shifted;
    f.values.assign(g.count(), 0.0);
    f.invalid.assign(g.count(), 0);
    f.precision_bits_used = bits;

    if (bits == 0) {
        auto sh = basis == PolyBasis::shifted ? shifted_euclid_poly(k) : DyadicPoly{};
        std::vector<double> abs_sh(sh.coeffs.size());
        for (size_t i = 0; i < sh.coeffs.size(); ++i) abs_sh[i] = std::abs(dyadic_to_double(sh.coeffs[i]));
        parallel_for(g.count(), opts.threads, [&](size_t idx) {
            int i = static_cast<int>(idx % static_cast<size_t>(g.nx));
            int j = static_cast<int>(idx / static_cast<size_t>(g.nx));
            Complex z = g.node(i, j);
            CondResult r;
            if (basis == PolyBasis::monomial) {
                r = pseudozero_value(k, basis, z);
            } else {
                auto ev = euclid_eval_recurrence(k, z);
                double uu = std::abs(z + 0.5);
                double den = 0;
                for (size_t t = abs_sh.size(); t-- > 0;) den = den * uu + abs_sh[t];
                r = (ev.overflow || !std::isfinite(den)) ? CondResult{0.0, true}
                                                         : CondResult{std::abs(ev.value) / den, false};
            }
            f.values[idx] = r.value;
            f.invalid[idx] = r.overflow ? 1 : 0;
        });
        return f;
    }

    std::vector<BigRational> coeffs;
    if (basis == PolyBasis::monomial) {
        for (const auto& c : euclid_poly(k).coeffs) coeffs.emplace_back(c);
    } else {
        for (const auto& c : shifted_euclid_poly(k).coeffs) coeffs.push_back(c.to_rational());
    }
    detail::MpfrPseudozero eval(std::move(coeffs), bits);
    parallel_for(g.count(), opts.threads, [&](size_t idx) {
        int i = static_cast<int>(idx % static_cast<size_t>(g.nx));
        int j = static_cast<int>(idx / static_cast<size_t>(g.nx));
        Complex z = g.node(i, j);
        f.values[idx] = eval(basis == PolyBasis::shifted ? z + 0.5 : z);
    });
    return f;
}

// --- contours ----------------------------------------------------------------

struct Polyline {
    std::vector<std::array<double, 2>> points;
    bool closed = false;
};

struct ContourLevel {
    double level = 0;
    std::vector<Polyline> lines;
};

namespace detail {

// Edge identifier: orientation bit + node indices of the edge's lower corner.
inline uint64_t edge_key(int kind, int i, int j) {
    return (static_cast<uint64_t>(kind) << 62) | (static_cast<uint64_t>(j) << 31) |
           static_cast<uint64_t>(i);
}

}  // namespace detail

/// Marching squares. One polyline set per level; saddle cells split by the
/// center average. Levels must be positive and sorted ascending.
inline std::vector<ContourLevel> contour_extract(const ScalarField& f, const std::vector<double>& levels) {
    for (size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] <= 0) throw std::invalid_argument("contour levels must be positive");
        if (i > 0 && levels[i] < levels[i - 1]) throw std::invalid_argument("contour levels must be sorted");
    }
    const GridSpec& g = f.spec;
    std::vector<ContourLevel> out;
    for (double level : levels) {
        ContourLevel cl;
        cl.level = level;
        std::unordered_map<uint64_t, std::array<double, 2>> pts;
        std::unordered_map<uint64_t, std::vector<uint64_t>> adj;

        auto cross = [&](int kind, int ai, int aj, int bi, int bj) {
            double va = f.at(ai, aj), vb = f.at(bi, bj);
            double t = (level - va) / (vb - va);
            t = std::clamp(t, 0.0, 1.0);
            std::array<double, 2> p{g.x(ai) + t * (g.x(bi) - g.x(ai)), g.y(aj) + t * (g.y(bj) - g.y(aj))};
            uint64_t key = detail::edge_key(kind, ai, aj);
            pts[key] = p;
            return key;
        };
        auto segment = [&](uint64_t a, uint64_t b) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        };

        for (int j = 0; j + 1 < g.ny; ++j) {
            for (int i = 0; i + 1 < g.nx; ++i) {
                if (!(f.valid(i, j) && f.valid(i + 1, j) && f.valid(i, j + 1) && f.valid(i + 1, j + 1)))
                    continue;
                int b0 = f.at(i, j) >= level;
                int b1 = f.at(i + 1, j) >= level;
                int b2 = f.at(i + 1, j + 1) >= level;
                int b3 = f.at(i, j + 1) >= level;
                int idx = b0 | (b1 << 1) | (b2 << 2) | (b3 << 3);
                if (idx == 0 || idx == 15) continue;
                // edges: bottom, right, top, left
                auto B = [&] { return cross(0, i, j, i + 1, j); };
                auto R = [&] { return cross(1, i + 1, j, i + 1, j + 1); };
                auto T = [&] { return cross(0, i, j + 1, i + 1, j + 1); };
                auto L = [&] { return cross(1, i, j, i, j + 1); };
                switch (idx) {
                    case 1: case 14: segment(L(), B()); break;
                    case 2: case 13: segment(B(), R()); break;
                    case 3: case 12: segment(L(), R()); break;
                    case 4: case 11: segment(R(), T()); break;
                    case 6: case 9: segment(B(), T()); break;
                    case 7: case 8: segment(L(), T()); break;
                    case 5: case 10: {
                        double center = 0.25 * (f.at(i, j) + f.at(i + 1, j) + f.at(i, j + 1) +
                                                f.at(i + 1, j + 1));
                        bool c = center >= level;
                        bool corner_set = (idx == 5);  // b0 and b2 above
                        if (corner_set == c) {
                            segment(L(), T());
                            segment(B(), R());
                        } else {
                            segment(L(), B());
                            segment(R(), T());
                        }
                        break;
                    }
                    default: break;
                }
            }
        }

        // chain segments into polylines: open chains first, then cycles
        constexpr uint64_t kNone = ~uint64_t{0};
        std::unordered_map<uint64_t, bool> visited;
        auto walk = [&](uint64_t start) {
            Polyline line;
            uint64_t cur = start, prev = kNone;
            for (;;) {
                visited[cur] = true;
                line.points.push_back(pts.at(cur));
                uint64_t next = kNone;
                for (uint64_t nb : adj.at(cur)) {
                    if (nb == prev) continue;
                    if (nb == start && line.points.size() >= 3) {
                        next = nb;
                        break;
                    }
                    if (!visited[nb]) {
                        next = nb;
                        break;
                    }
                }
                if (next == kNone) break;
                if (next == start) {
                    line.closed = true;
                    line.points.push_back(pts.at(start));
                    break;
                }
                prev = cur;
                cur = next;
            }
            return line;
        };
        for (const auto& [key, nbrs] : adj)
            if (nbrs.size() == 1 && !visited[key]) cl.lines.push_back(walk(key));
        for (const auto& [key, nbrs] : adj)
            if (!visited[key]) cl.lines.push_back(walk(key));
        out.push_back(std::move(cl));
    }
    return out;
}

// --- sublevel connectivity ----------------------------------------------------

/// Connected components (4-neighbor) of {value <= eps}; labels start at 1,
/// 0 means above the threshold or invalid. Returns the number of components.
inline int label_components(const ScalarField& f, double eps, std::vector<int>& labels) {
    const GridSpec& g = f.spec;
    labels.assign(g.count(), 0);
    int ncomp = 0;
    std::deque<size_t> queue;
    for (size_t s = 0; s < g.count(); ++s) {
        int si = static_cast<int>(s % static_cast<size_t>(g.nx));
        int sj = static_cast<int>(s / static_cast<size_t>(g.nx));
        if (labels[s] != 0 || !f.valid(si, sj) || f.values[s] > eps) continue;
        ++ncomp;
        labels[s] = ncomp;
        queue.push_back(s);
        while (!queue.empty()) {
            size_t c = queue.front();
            queue.pop_front();
            int i = static_cast<int>(c % static_cast<size_t>(g.nx));
            int j = static_cast<int>(c / static_cast<size_t>(g.nx));
            const int di[4] = {1, -1, 0, 0};
            const int dj[4] = {0, 0, 1, -1};
            for (int t = 0; t < 4; ++t) {
                int ni = i + di[t], nj = j + dj[t];
                if (ni < 0 || ni >= g.nx || nj < 0 || nj >= g.ny) continue;
                size_t nidx = static_cast<size_t>(nj) * g.nx + ni;
                if (labels[nidx] != 0 || !f.valid(ni, nj) || f.values[nidx] > eps) continue;
                labels[nidx] = ncomp;
                queue.push_back(nidx);
            }
        }
    }
    return ncomp;
}

inline size_t nearest_node_index(const GridSpec& g, Complex z) {
    auto nearest = [](double v, double lo, double hi, int n) {
        if (n == 1) return 0;
        double t = (v - lo) / (hi - lo) * (n - 1);
        int i = static_cast<int>(std::lround(t));
        return std::clamp(i, 0, n - 1);
    };
    int i = nearest(z.real(), g.re_min, g.re_max, g.nx);
    int j = nearest(z.imag(), g.im_min, g.im_max, g.ny);
    return static_cast<size_t>(j) * g.nx + i;
}

struct RegionStats {
    int components_with_roots = 0;
    int singleton_regions = 0;  // components containing exactly one root
    int merged_regions = 0;     // components containing two or more roots
    int uncovered_roots = 0;    // root's node above the threshold
};

inline RegionStats region_stats(const ScalarField& f, double eps, const std::vector<Complex>& roots) {
    std::vector<int> labels;
    label_components(f, eps, labels);
    std::map<int, int> tally;
    RegionStats rs;
    for (const auto& r : roots) {
        size_t idx = nearest_node_index(f.spec, r);
        int lab = labels[idx];
        if (lab == 0)
            rs.uncovered_roots++;
        else
            tally[lab]++;
    }
    for (const auto& [lab, cnt] : tally) {
        rs.components_with_roots++;
        if (cnt == 1) rs.singleton_regions++;
        if (cnt >= 2) rs.merged_regions++;
    }
    return rs;
}

/// True when some sublevel component contains two or more of the roots.
inline bool regions_merged(const ScalarField& f, double eps, const std::vector<Complex>& roots) {
    return region_stats(f, eps, roots).merged_regions > 0;
}

/// True when pt lies in a sublevel component that does not touch the grid
/// boundary (its boundary contour is then a closed curve inside the window).
inline bool enclosed_by_contour(const ScalarField& f, double eps, Complex pt) {
    std::vector<int> labels;
    label_components(f, eps, labels);
    size_t idx = nearest_node_index(f.spec, pt);
    int lab = labels[idx];
    if (lab == 0) return false;
    const GridSpec& g = f.spec;
    for (int i = 0; i < g.nx; ++i) {
        if (labels[static_cast<size_t>(i)] == lab) return false;
        if (labels[static_cast<size_t>(g.ny - 1) * g.nx + i] == lab) return false;
    }
    for (int j = 0; j < g.ny; ++j) {
        if (labels[static_cast<size_t>(j) * g.nx] == lab) return false;
        if (labels[static_cast<size_t>(j) * g.nx + (g.nx - 1)] == lab) return false;
    }
    return true;
}

// --- serialization ------------------------------------------------------------

inline std::string field_to_csv(const ScalarField& f) {
    std::ostringstream os;
    os << "x,y,value\n";
    const GridSpec& g = f.spec;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            os << format_double(g.x(i)) << "," << format_double(g.y(j)) << ",";
            if (f.valid(i, j))
                os << format_double(f.at(i, j));
            else
                os << "nan";
            os << "\n";
        }
    return os.str();
}

inline json field_metadata_json(const ScalarField& f, const std::vector<double>& levels = {}) {
    json j;
    j["kind"] = field_kind_tag(f.kind);
    j["re_min"] = f.spec.re_min;
    j["re_max"] = f.spec.re_max;
    j["im_min"] = f.spec.im_min;
    j["im_max"] = f.spec.im_max;
    j["nx"] = f.spec.nx;
    j["ny"] = f.spec.ny;
    j["precision_bits"] = f.precision_bits_used;
    j["invalid_nodes"] = f.invalid_count();
    if (!levels.empty()) j["levels"] = levels;
    return j;
}

namespace detail {

inline std::string svg_color(size_t idx, size_t total) {
    // dark blue -> red ramp
    double t = total > 1 ? static_cast<double>(idx) / (total - 1) : 0.0;
    int r = static_cast<int>(40 + 200 * t);
    int g = static_cast<int>(60 + 40 * (1 - std::abs(2 * t - 1)));
    int b = static_cast<int>(220 - 180 * t);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace detail

struct SvgOverlay {
    std::vector<Complex> points;    // e.g. eigenvalues
    double circle_radius = 0.0;     // circle centered at -1/2 when > 0
};

/// Contour layers as an SVG document; one group per level, log-spaced legend
/// colors. Pure geometry, no raster dependencies.
inline std::string contours_to_svg(const GridSpec& g, const std::vector<ContourLevel>& contours,
                                   const SvgOverlay& overlay = {}) {
    const int W = 720, H = 720;
    double x0 = g.re_min, x1 = g.re_max, y0 = g.im_min, y1 = g.im_max;
    if (overlay.circle_radius > 0) {
        x0 = std::min(x0, -0.5 - overlay.circle_radius);
        x1 = std::max(x1, -0.5 + overlay.circle_radius);
        y0 = std::min(y0, -overlay.circle_radius);
        y1 = std::max(y1, overlay.circle_radius);
    }
    auto sx = [&](double x) { return (x - x0) / (x1 - x0) * (W - 40) + 20; };
    auto sy = [&](double y) { return H - ((y - y0) / (y1 - y0) * (H - 40) + 20); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    char buf[64];
    for (size_t li = 0; li < contours.size(); ++li) {
        os << "<g fill=\"none\" stroke=\"" << detail::svg_color(li, contours.size())
           << "\" stroke-width=\"1\" data-level=\"" << format_double(contours[li].level) << "\">\n";
        for (const auto& line : contours[li].lines) {
            os << "<polyline points=\"";
            for (const auto& p : line.points) {
                std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", sx(p[0]), sy(p[1]));
                os << buf;
            }
            os << "\"/>\n";
        }
        os << "</g>\n";
    }
    if (overlay.circle_radius > 0) {
        std::snprintf(buf, sizeof(buf), "%.2f", sx(-0.5));
        os << "<circle cx=\"" << buf;
        std::snprintf(buf, sizeof(buf), "%.2f", sy(0.0));
        os << "\" cy=\"" << buf;
        std::snprintf(buf, sizeof(buf), "%.2f",
                      overlay.circle_radius / (x1 - x0) * (W - 40));
        os << "\" r=\"" << buf << "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";
    }
    if (!overlay.points.empty()) {
        os << "<g fill=\"black\">\n";
        for (const auto& p : overlay.points) {
            std::snprintf(buf, sizeof(buf), "%.2f", sx(p.real()));
            os << "<circle cx=\"" << buf;
            std::snprintf(buf, sizeof(buf), "%.2f", sy(p.imag()));
            os << "\" cy=\"" << buf << "\" r=\"1.2\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace euclid
