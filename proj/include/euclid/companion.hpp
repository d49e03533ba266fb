#pragma once

// Recursive height-1 companion matrices. The Euclid companion E_k is built
// from the block matrix
//
//   E_{k}  =  [ T_{k-1}   corner ]      T_k = blockdiag([0], E_1, ..., E_{k-1})
//             [ junction  E_{k-1}]            with -1 at each block junction,
//
// so that det(xI - E_k) = E_k(x). The corner entry is minus the product of
// all subdiagonal entries, which is +1 for the default seed (every
// subdiagonal -1) and keeps the characteristic polynomial invariant for the
// alternative 2x2 seeds whose subdiagonal is +1.

#include <euclid/bigint.hpp>
#include <euclid/euclid_family.hpp>
#include <euclid/poly.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace euclid {

enum class Family { euclid, euclid_tilde, mandelbrot, generic };

inline std::string family_tag(Family f) {
    switch (f) {
        case Family::euclid: return "euclid";
        case Family::euclid_tilde: return "euclid_tilde";
        case Family::mandelbrot: return "mandelbrot";
        default: return "generic";
    }
}

inline Family family_from_tag(const std::string& s) {
    if (s == "euclid") return Family::euclid;
    if (s == "euclid_tilde") return Family::euclid_tilde;
    if (s == "mandelbrot") return Family::mandelbrot;
    return Family::generic;
}

struct Triplet {
    int row = 0, col = 0;  // 0-based
    int value = 0;
    friend bool operator==(const Triplet&, const Triplet&) = default;
    friend bool operator<(const Triplet& a, const Triplet& b) {
        return std::pair(a.row, a.col) < std::pair(b.row, b.col);
    }
};

class CompanionMatrix {
  public:
    CompanionMatrix(int n, std::vector<Triplet> entries, Family family, int k)
        : n_(n), entries_(std::move(entries)), family_(family), k_(k) {
        std::sort(entries_.begin(), entries_.end());
        validate();
    }

    int dim() const { return n_; }
    Family family() const { return family_; }
    int generation() const { return k_; }
    const std::vector<Triplet>& entries() const { return entries_; }
    size_t nnz() const { return entries_.size(); }

    int at(int r, int c) const {
        Triplet key{r, c, 0};
        auto it = std::lower_bound(entries_.begin(), entries_.end(), key);
        if (it != entries_.end() && it->row == r && it->col == c) return it->value;
        return 0;
    }

    int height() const {
        int h = 0;
        for (const auto& t : entries_) h = std::max(h, std::abs(t.value));
        return h;
    }

    /// Entry (1, n) in 1-based terms.
    int corner() const { return at(0, n_ - 1); }

    bool all_subdiagonal_minus_one() const {
        for (int i = 1; i < n_; ++i)
            if (at(i, i - 1) != -1) return false;
        return true;
    }

    /// Row-major dense copy (for the eigensolver).
    std::vector<double> to_dense() const {
        std::vector<double> d(static_cast<size_t>(n_) * n_, 0.0);
        for (const auto& t : entries_) d[static_cast<size_t>(t.row) * n_ + t.col] = t.value;
        return d;
    }

    /// For each column, the strictly-above-diagonal entries (row < col).
    std::vector<std::vector<std::pair<int, int>>> columns_above_diagonal() const {
        std::vector<std::vector<std::pair<int, int>>> cols(static_cast<size_t>(n_));
        for (const auto& t : entries_)
            if (t.row < t.col) cols[static_cast<size_t>(t.col)].emplace_back(t.row, t.value);
        return cols;
    }

    friend bool operator==(const CompanionMatrix& a, const CompanionMatrix& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

  private:
    void validate() const {
        if (n_ < 1) throw std::invalid_argument("companion: dimension must be >= 1");
        for (size_t i = 0; i < entries_.size(); ++i) {
            const auto& t = entries_[i];
            if (t.row < 0 || t.row >= n_ || t.col < 0 || t.col >= n_)
                throw std::invalid_argument("companion: entry out of range");
            if (t.value < -1 || t.value > 1 || t.value == 0)
                throw std::invalid_argument("companion: entries must be in {-1, +1}");
            if (t.col < t.row - 1) throw std::invalid_argument("companion: not upper Hessenberg");
            if (i > 0 && entries_[i - 1].row == t.row && entries_[i - 1].col == t.col)
                throw std::invalid_argument("companion: duplicate entry");
        }
        for (int i = 1; i < n_; ++i)
            if (at(i, i - 1) == 0) throw std::invalid_argument("companion: reducible (zero subdiagonal)");
    }

    int n_;
    std::vector<Triplet> entries_;
    Family family_;
    int k_;
};

/// Height of a small dense matrix (max |entry|); the norm is defined for any
/// matrix, not only companions.
inline long height(const std::vector<std::vector<long>>& m) {
    long h = 0;
    for (const auto& row : m)
        for (long v : row) h = std::max(h, std::abs(v));
    return h;
}

inline int height(const CompanionMatrix& m) { return m.height(); }

// --- construction ----------------------------------------------------------

/// The four admissible 2x2 companions of x^2 + x + 1.
enum class E2Seed { A, B, C, D };

inline std::array<std::array<int, 2>, 2> e2_seed_matrix(E2Seed s) {
    switch (s) {
        case E2Seed::A: return {{{0, 1}, {-1, -1}}};
        case E2Seed::B: return {{{0, -1}, {1, -1}}};
        case E2Seed::C: return {{{-1, -1}, {1, 0}}};
        default: return {{{-1, 1}, {-1, 0}}};
    }
}

struct VariantConfig {
    E2Seed e2_choice = E2Seed::A;
    /// Permutation of the top-level diagonal blocks ([0], E_1, ..., E_{k-2})
    /// of the tilde part; empty means the displayed order.
    std::vector<size_t> block_order;
};

namespace detail {

struct Builder {
    int n = 0;
    std::map<std::pair<int, int>, int> m;

    void put(int r, int c, int v) {
        if (v == 0) return;
        auto [it, fresh] = m.emplace(std::pair(r, c), v);
        if (!fresh) throw std::logic_error("companion builder: overlapping entry");
    }
    void place(const CompanionMatrix& block, int off) {
        for (const auto& t : block.entries()) put(off + t.row, off + t.col, t.value);
    }
    std::vector<Triplet> triplets() const {
        std::vector<Triplet> ts;
        ts.reserve(m.size());
        for (const auto& [rc, v] : m) ts.push_back({rc.first, rc.second, v});
        return ts;
    }
    int subdiag_product() const {
        int p = 1;
        for (int i = 1; i < n; ++i) {
            auto it = m.find({i, i - 1});
            if (it == m.end()) throw std::logic_error("companion builder: missing subdiagonal");
            p *= it->second;
        }
        return p;
    }
};

inline void check_block_order(const std::vector<size_t>& order, size_t nblocks) {
    if (order.empty()) return;
    if (order.size() != nblocks) throw std::invalid_argument("block_order: wrong length");
    std::vector<bool> seen(nblocks, false);
    for (size_t i : order) {
        if (i >= nblocks || seen[i]) throw std::invalid_argument("block_order: not a permutation");
        seen[i] = true;
    }
}

// blockdiag([0], E_1, ..., E_{j}) in the given order, -1 between blocks.
inline Builder tilde_builder(const std::vector<CompanionMatrix>& prior,
                             const std::vector<size_t>& order) {
    size_t nblocks = prior.size() + 1;
    check_block_order(order, nblocks);
    Builder b;
    int off = 0;
    for (size_t pos = 0; pos < nblocks; ++pos) {
        size_t which = order.empty() ? pos : order[pos];
        int size = which == 0 ? 1 : prior[which - 1].dim();
        if (off > 0) b.put(off, off - 1, -1);
        if (which > 0) b.place(prior[which - 1], off);
        off += size;
    }
    b.n = off;
    return b;
}

}  // namespace detail

/// E_1, ..., E_k for the given seed, default block order throughout.
inline std::vector<CompanionMatrix> build_companions(int k, const VariantConfig& cfg = {}) {
    if (k < 1) throw std::invalid_argument("build_companions: k must be >= 1");
    std::vector<CompanionMatrix> out;
    out.reserve(static_cast<size_t>(k));
    out.emplace_back(1, std::vector<Triplet>{{0, 0, -1}}, Family::euclid, 1);
    if (k == 1) return out;
    {
        auto s = e2_seed_matrix(cfg.e2_choice);
        std::vector<Triplet> ts;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                if (s[r][c] != 0) ts.push_back({r, c, s[r][c]});
        out.emplace_back(2, std::move(ts), Family::euclid, 2);
    }
    for (int j = 3; j <= k; ++j) {
        std::vector<CompanionMatrix> prior(out.begin(), out.end() - 1);  // E_1..E_{j-2}
        bool top = (j == k);
        detail::Builder b =
            detail::tilde_builder(prior, top ? cfg.block_order : std::vector<size_t>{});
        int m = b.n;  // 2^{j-2}
        const CompanionMatrix& prev = out.back();
        b.put(m, m - 1, -1);
        b.place(prev, m);
        b.n = m + prev.dim();
        int corner = -b.subdiag_product();
        b.put(0, b.n - 1, corner);
        out.emplace_back(b.n, b.triplets(), Family::euclid, j);
    }
    return out;
}

/// The height-1 companion matrix of E_k.
inline CompanionMatrix build_companion(int k, const VariantConfig& cfg = {}) {
    return build_companions(k, cfg).back();
}

/// Ttilde_k = blockdiag([0], E_1, ..., E_{k-1}) with -1 junctions; its
/// characteristic polynomial is E_k - 1 = x E_1 ... E_{k-1}.
inline CompanionMatrix build_tilde(int k, const VariantConfig& cfg = {}) {
    if (k < 2) throw std::invalid_argument("build_tilde: k must be >= 2");
    auto prior = build_companions(k - 1, VariantConfig{cfg.e2_choice, {}});
    detail::Builder b = detail::tilde_builder(prior, cfg.block_order);
    return CompanionMatrix(b.n, b.triplets(), Family::euclid_tilde, k);
}

/// Lawrence-style companion for the Mandelbrot polynomial p_n; dimension
/// 2^{n-1} - 1, entries in {-1, 0}.
inline CompanionMatrix build_mandelbrot_companion(int n) {
    if (n < 2) throw std::invalid_argument("build_mandelbrot_companion: n must be >= 2");
    CompanionMatrix m(1, {{0, 0, -1}}, Family::mandelbrot, 2);
    for (int j = 3; j <= n; ++j) {
        int d = m.dim();
        detail::Builder b;
        b.place(m, 0);
        b.put(d, d - 1, -1);      // -r_n row
        b.put(d + 1, d, -1);      // -c_n column
        b.put(0, 2 * d, -1);      // -c_n r_n corner
        b.place(m, d + 1);
        b.n = 2 * d + 1;
        m = CompanionMatrix(b.n, b.triplets(), Family::mandelbrot, j);
    }
    return m;
}

// --- exact characteristic polynomial checks --------------------------------

/// det(xI - m), exact, by the Hessenberg leading-minor recurrence; O(n)
/// big-integer multiplies per evaluation for these sparse matrices.
inline BigInt det_charpoly_at(const CompanionMatrix& m, const BigInt& x) {
    int n = m.dim();
    auto cols = m.columns_above_diagonal();
    // sgn[i] = product of (xI - m) subdiagonal entries 1..i = prod(-s_j)
    std::vector<int> sgn(static_cast<size_t>(n), 1);
    for (int i = 1; i < n; ++i) sgn[static_cast<size_t>(i)] = sgn[static_cast<size_t>(i - 1)] * (-m.at(i, i - 1));
    std::vector<BigInt> d(static_cast<size_t>(n) + 1);
    d[0] = 1;
    for (int i = 1; i <= n; ++i) {
        BigInt v = (x - m.at(i - 1, i - 1)) * d[static_cast<size_t>(i - 1)];
        for (const auto& [r, val] : cols[static_cast<size_t>(i - 1)]) {
            int j = r + 1;  // 1-based row index
            int parity = ((i + j) % 2 == 0) ? 1 : -1;
            int c = parity * (-val) * sgn[static_cast<size_t>(i - 1)] * sgn[static_cast<size_t>(j - 1)];
            if (c == 1)
                v += d[static_cast<size_t>(j - 1)];
            else
                v -= d[static_cast<size_t>(j - 1)];
        }
        d[static_cast<size_t>(i)] = std::move(v);
    }
    return d[static_cast<size_t>(n)];
}

/// Pointwise-exact identity check: deg(p)+1 evaluation points pin down the
/// polynomial completely (both sides are monic of the same degree).
struct CharpolyVerification {
    bool ok = true;
    BigInt failing_point;  // meaningful only when !ok
};

inline CharpolyVerification charpoly_matches(const CompanionMatrix& m, const BigIntPoly& p) {
    long deg = p.degree();
    if (deg != m.dim()) throw std::invalid_argument("charpoly_matches: degree != dimension");
    long lo = -deg / 2;
    for (long t = 0; t <= deg; ++t) {
        BigInt x(lo + t);
        if (det_charpoly_at(m, x) != p.eval(x)) return {false, x};
    }
    return {true, BigInt(0)};
}

inline bool verify_charpoly(int k, const VariantConfig& cfg = {}) {
    return charpoly_matches(build_companion(k, cfg), euclid_poly(k)).ok;
}

/// The (1, n) entry of the default E_k; +1 for every k >= 2.
inline int corner_sign(int k) {
    if (k < 2) throw std::invalid_argument("corner_sign: k must be >= 2");
    return build_companion(k).corner();
}

// --- serialization ----------------------------------------------------------

enum class MatrixFormat { matrix_market, csv_triplets, dense_json };

inline MatrixFormat matrix_format_from_string(const std::string& s) {
    if (s == "matrix-market" || s == "mm") return MatrixFormat::matrix_market;
    if (s == "csv-triplets" || s == "csv") return MatrixFormat::csv_triplets;
    if (s == "dense-json" || s == "json") return MatrixFormat::dense_json;
    throw std::invalid_argument("unknown matrix format: " + s);
}

inline std::string export_matrix(const CompanionMatrix& m, MatrixFormat fmt) {
    std::ostringstream os;
    switch (fmt) {
        case MatrixFormat::matrix_market: {
            os << "%%MatrixMarket matrix coordinate integer general\n";
            os << "% family " << family_tag(m.family()) << " k " << m.generation() << "\n";
            os << m.dim() << " " << m.dim() << " " << m.nnz() << "\n";
            for (const auto& t : m.entries())
                os << (t.row + 1) << " " << (t.col + 1) << " " << t.value << "\n";
            break;
        }
        case MatrixFormat::csv_triplets: {
            for (const auto& t : m.entries())
                os << (t.row + 1) << "," << (t.col + 1) << "," << t.value << "\n";
            break;
        }
        case MatrixFormat::dense_json: {
            json j;
            j["family"] = family_tag(m.family());
            j["k"] = m.generation();
            j["n"] = m.dim();
            json rows = json::array();
            for (int r = 0; r < m.dim(); ++r) {
                json row = json::array();
                for (int c = 0; c < m.dim(); ++c) row.push_back(m.at(r, c));
                rows.push_back(row);
            }
            j["rows"] = rows;
            os << j.dump(2) << "\n";
            break;
        }
    }
    return os.str();
}

inline CompanionMatrix import_matrix(const std::string& bytes, MatrixFormat fmt) {
    switch (fmt) {
        case MatrixFormat::matrix_market: {
            std::istringstream is(bytes);
            std::string line;
            Family fam = Family::generic;
            int k = 0;
            int n = -1;
            long nnz = -1;
            std::vector<Triplet> ts;
            while (std::getline(is, line)) {
                if (line.empty()) continue;
                if (line[0] == '%') {
                    std::istringstream ls(line.substr(1));
                    std::string w;
                    while (ls >> w) {
                        if (w == "family") ls >> w, fam = family_from_tag(w);
                        if (w == "k") ls >> k;
                    }
                    continue;
                }
                std::istringstream ls(line);
                if (n < 0) {
                    int rows, cols;
                    ls >> rows >> cols >> nnz;
                    if (rows != cols) throw std::invalid_argument("matrix market: not square");
                    n = rows;
                } else {
                    int r, c, v;
                    ls >> r >> c >> v;
                    ts.push_back({r - 1, c - 1, v});
                }
            }
            if (n < 0 || static_cast<long>(ts.size()) != nnz)
                throw std::invalid_argument("matrix market: malformed");
            return CompanionMatrix(n, std::move(ts), fam, k);
        }
        case MatrixFormat::csv_triplets: {
            std::istringstream is(bytes);
            std::string line;
            std::vector<Triplet> ts;
            int n = 0;
            while (std::getline(is, line)) {
                if (line.empty()) continue;
                int r, c, v;
                char comma;
                std::istringstream ls(line);
                ls >> r >> comma >> c >> comma >> v;
                ts.push_back({r - 1, c - 1, v});
                n = std::max({n, r, c});
            }
            return CompanionMatrix(n, std::move(ts), Family::generic, 0);
        }
        default: {
            json j = json::parse(bytes);
            int n = j.at("n").get<int>();
            std::vector<Triplet> ts;
            const auto& rows = j.at("rows");
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    int v = rows.at(r).at(c).get<int>();
                    if (v != 0) ts.push_back({r, c, v});
                }
            return CompanionMatrix(n, std::move(ts), family_from_tag(j.at("family").get<std::string>()),
                                   j.at("k").get<int>());
        }
    }
}

}  // namespace euclid
