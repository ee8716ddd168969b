#pragma once

// R-matrices: construction, validation (Yang-Baxter, evenness), graded FRT
// expansion into quadratic relation sets, and the JSON file format.
//
// Index flattening convention, used everywhere including data files:
// composite index (i,j), 1-based, maps to (i-1)*N + j (1-based flat index).

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qgauss/parser.hpp"
#include "qgauss/qmatrix.hpp"
#include "qgauss/rewrite.hpp"

namespace qg {

class RMatrix {
public:
    RMatrix() = default;
    RMatrix(int n, std::vector<int> parity) : n_(n), parity_(std::move(parity)) {
        if (static_cast<int>(parity_.size()) != n) throw dimension_error("parity vector length");
    }
    explicit RMatrix(int n) : RMatrix(n, std::vector<int>(n, 0)) {}

    int dim() const { return n_; }
    const std::vector<int>& parity() const { return parity_; }

    // (i,j;k,l) are 1-based single indices in 1..N.
    void set(int i, int j, int k, int l, QCoeff c) {
        check_range(i, j, k, l);
        if (((parity_[i - 1] + parity_[j - 1]) & 1) != ((parity_[k - 1] + parity_[l - 1]) & 1))
            throw preset_error("entry violates parity evenness");
        int r = flat(i, j), cc = flat(k, l);
        if (c.is_zero())
            e_.erase({r, cc});
        else
            e_[{r, cc}] = std::move(c);
    }

    QCoeff get(int i, int j, int k, int l) const {
        check_range(i, j, k, l);
        auto it = e_.find({flat(i, j), flat(k, l)});
        return it == e_.end() ? QCoeff::zero() : it->second;
    }

    const std::map<std::pair<int, int>, QCoeff>& entries() const { return e_; }

    int flat(int i, int j) const { return (i - 1) * n_ + (j - 1); }

    friend bool operator==(const RMatrix& a, const RMatrix& b) {
        return a.n_ == b.n_ && a.parity_ == b.parity_ && a.e_ == b.e_;
    }

    QMatrix to_poly_matrix() const {
        QMatrix m(static_cast<std::size_t>(n_) * n_, static_cast<std::size_t>(n_) * n_);
        for (const auto& [rc, c] : e_)
            m.at(rc.first, rc.second) = NcPolynomial::constant(c);
        std::vector<int> cp(static_cast<std::size_t>(n_) * n_, 0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) cp[i * n_ + j] = (parity_[i] + parity_[j]) & 1;
        m.set_parity(cp);
        return m;
    }

private:
    void check_range(int i, int j, int k, int l) const {
        if (i < 1 || j < 1 || k < 1 || l < 1 || i > n_ || j > n_ || k > n_ || l > n_)
            throw dimension_error("index out of range");
    }

    int n_ = 0;
    std::vector<int> parity_;
    std::map<std::pair<int, int>, QCoeff> e_;
};

// Numerical metric matrix for the orthogonal/symplectic supplementary
// conditions; invertible over the coefficient field.
class CMetric {
public:
    CMetric() = default;
    explicit CMetric(int n) : n_(n), e_(static_cast<std::size_t>(n) * n) {}

    int dim() const { return n_; }
    QCoeff& at(int i, int j) { return e_[(i - 1) * n_ + (j - 1)]; }
    const QCoeff& at(int i, int j) const { return e_[(i - 1) * n_ + (j - 1)]; }

    // Exact inverse by Gaussian elimination over the coefficient field.
    CMetric inverse() const {
        int n = n_;
        std::vector<std::vector<QCoeff>> a(n, std::vector<QCoeff>(2 * n, QCoeff::zero()));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a[i][j] = at(i + 1, j + 1);
        for (int i = 0; i < n; ++i) a[i][n + i] = QCoeff::one();
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (!a[r][col].is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw preset_error("metric matrix is singular");
            std::swap(a[piv], a[col]);
            QCoeff inv = a[col][col].inverse();
            for (int j = 0; j < 2 * n; ++j) a[col][j] = a[col][j] * inv;
            for (int r = 0; r < n; ++r) {
                if (r == col || a[r][col].is_zero()) continue;
                QCoeff f = a[r][col];
                for (int j = 0; j < 2 * n; ++j) a[r][j] = a[r][j] - f * a[col][j];
            }
        }
        CMetric out(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.at(i + 1, j + 1) = a[i][n + j];
        return out;
    }

    QMatrix to_poly_matrix() const {
        QMatrix m(n_, n_);
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j)
                if (!at(i, j).is_zero()) m.at(i - 1, j - 1) = NcPolynomial::constant(at(i, j));
        return m;
    }

private:
    int n_ = 0;
    std::vector<QCoeff> e_;
};

// ---- constructors --------------------------------------------------------

// Standard A-series R-matrix:
//   R = sum_{i != j} E_ii (x) E_jj + q sum_i E_ii (x) E_ii
//       + lambda sum_{i<j} E_ji (x) E_ij
inline RMatrix build_glq_r(int n) {
    if (n < 1) throw preset_error("dimension must be at least 1");
    RMatrix r(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) r.set(i, j, i, j, i == j ? QCoeff::q() : QCoeff::one());
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) r.set(j, i, i, j, QCoeff::lambda());
    return r;
}

// Super analog: same structure with q replaced by q^{-1} on odd-odd diagonal
// rows; parity vector (0,...,0,1,...,1).
inline RMatrix build_glq_super_r(int n, int m) {
    int N = n + m;
    if (N < 1) throw preset_error("dimension must be at least 1");
    std::vector<int> parity(N, 0);
    for (int i = n; i < N; ++i) parity[i] = 1;
    RMatrix r(N, parity);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            QCoeff c = i == j ? (parity[i - 1] ? QCoeff::q_pow(-1) : QCoeff::q()) : QCoeff::one();
            r.set(i, j, i, j, c);
        }
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) r.set(j, i, i, j, QCoeff::lambda());
    return r;
}

// ---- Yang-Baxter ---------------------------------------------------------

namespace detail {

using SparseMat = std::map<int, std::map<int, QCoeff>>;

inline SparseMat sparse_mul(const SparseMat& a, const SparseMat& b) {
    SparseMat r;
    for (const auto& [i, arow] : a)
        for (const auto& [k, aik] : arow) {
            auto bit = b.find(k);
            if (bit == b.end()) continue;
            for (const auto& [j, bkj] : bit->second) {
                QCoeff v = aik * bkj;
                if (v.is_zero()) continue;
                auto& cell = r[i][j];
                cell += v;
                if (cell.is_zero()) r[i].erase(j);
            }
        }
    for (auto it = r.begin(); it != r.end();)
        it = it->second.empty() ? r.erase(it) : std::next(it);
    return r;
}

}  // namespace detail

// Graded Yang-Baxter check R12 R13 R23 = R23 R13 R12 on the N^3 space.
// Leg embeddings carry the usual sign for an even matrix across leg 2:
//   (R13)[abc;a'b'c'] = (-1)^{p(b)(p(a)+p(a'))} R[ac;a'c'] delta_{bb'}.
inline bool check_yang_baxter(const RMatrix& r) {
    int n = r.dim();
    const auto& p = r.parity();
    detail::SparseMat r12, r13, r23;
    auto idx = [n](int a, int b, int c) { return (a * n + b) * n + c; };
    for (const auto& [rc, v] : r.entries()) {
        int i = rc.first / n, j = rc.first % n;
        int k = rc.second / n, l = rc.second % n;
        for (int c = 0; c < n; ++c) {
            r12[idx(i, j, c)][idx(k, l, c)] += v;
            r23[idx(c, i, j)][idx(c, k, l)] += v;
            bool neg = (p[c] & 1) && ((p[i] ^ p[k]) & 1);
            QCoeff sv = neg ? -v : v;
            r13[idx(i, c, j)][idx(k, c, l)] += sv;
        }
    }
    detail::SparseMat lhs = detail::sparse_mul(detail::sparse_mul(r12, r13), r23);
    detail::SparseMat rhs = detail::sparse_mul(detail::sparse_mul(r23, r13), r12);
    // exact comparison, ignoring explicit zeros
    auto clean = [](detail::SparseMat& m) {
        for (auto it = m.begin(); it != m.end();) {
            for (auto jt = it->second.begin(); jt != it->second.end();)
                jt = jt->second.is_zero() ? it->second.erase(jt) : std::next(jt);
            it = it->second.empty() ? m.erase(it) : std::next(it);
        }
    };
    clean(lhs);
    clean(rhs);
    return lhs == rhs;
}

// ---- diagonal part ---------------------------------------------------------

struct DiagonalPart {
    RMatrix rd;
    bool commutes_with_full = false;
};

inline DiagonalPart diagonal_part(const RMatrix& r) {
    int n = r.dim();
    DiagonalPart out;
    out.rd = RMatrix(n, r.parity());
    for (const auto& [rc, v] : r.entries())
        if (rc.first == rc.second) {
            int i = rc.first / n + 1, j = rc.first % n + 1;
            out.rd.set(i, j, i, j, v);
        }
    // [R, R_D] over the commutative coefficient ring
    std::map<std::pair<int, int>, QCoeff> comm;
    for (const auto& [rc, v] : r.entries()) {
        QCoeff dr = out.rd.entries().count({rc.second, rc.second})
                        ? out.rd.entries().at({rc.second, rc.second})
                        : QCoeff::zero();
        QCoeff dl = out.rd.entries().count({rc.first, rc.first})
                        ? out.rd.entries().at({rc.first, rc.first})
                        : QCoeff::zero();
        QCoeff c = v * dr - dl * v;
        if (!c.is_zero()) comm[rc] = c;
    }
    out.commutes_with_full = comm.empty();
    return out;
}

// ---- FRT expansion ---------------------------------------------------------

// Entrywise residues of R T1 T2 - T2 T1 R for a given symbol matrix T
// (graded signs enter through the leg embeddings of T).
inline std::vector<NcPolynomial> frt_residues(const RMatrix& r, const QMatrix& T) {
    const std::vector<int>& p = r.parity();
    QMatrix id = QMatrix::identity(r.dim());
    QMatrix t1 = graded_tensor(T, id, p);
    QMatrix t2 = graded_tensor(id, T, p);
    QMatrix rp = r.to_poly_matrix();
    QMatrix d = rp * t1 * t2 - t2 * t1 * rp;
    std::vector<NcPolynomial> out;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (!d.at(i, j).is_zero()) out.push_back(d.at(i, j));
    return out;
}

struct FrtAlgebra {
    RelationSet rel;
    QMatrix T;  // the generator matrix, entries are single symbols
};

// Build the quadratic relation set of the bialgebra defined by R. Generator
// labels default to prefix[i,j]; a custom label grid may be supplied.
inline FrtAlgebra frt_relations(const RMatrix& r, const std::string& prefix = "t",
                                const std::vector<std::vector<std::string>>& labels = {}) {
    if (!check_yang_baxter(r)) throw preset_error("R-matrix fails the Yang-Baxter check");
    int n = r.dim();
    SymbolTable syms;
    QMatrix T(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            std::string label = labels.empty()
                                    ? prefix + "[" + std::to_string(i) + "," + std::to_string(j) + "]"
                                    : labels[i - 1][j - 1];
            int parity = (r.parity()[i - 1] + r.parity()[j - 1]) & 1;
            SymbolId id = syms.add({label, parity});
            T.at(i - 1, j - 1) = NcPolynomial::symbol(id);
        }
    T.set_parity(r.parity());
    std::vector<NcPolynomial> residues = frt_residues(r, T);
    // parity homogeneity is guaranteed by evenness of R; assert it
    for (const auto& res : residues) {
        int par;
        if (!res.parity_homogeneous(syms, par))
            throw preset_error("FRT residue is not parity homogeneous");
    }
    FrtAlgebra out{orient_relations(syms, std::move(residues)), T};
    return out;
}

// ---- JSON file format ------------------------------------------------------

// {"dimension": N, "parity": [...], "entries": [[row, col, "coeff"], ...]}
// with 1-based flattened row/col indices; omitted entries are zero.
inline nlohmann::ordered_json rmatrix_to_json(const RMatrix& r) {
    nlohmann::ordered_json j;
    j["dimension"] = r.dim();
    j["parity"] = r.parity();
    auto entries = nlohmann::ordered_json::array();
    for (const auto& [rc, v] : r.entries())
        entries.push_back({rc.first + 1, rc.second + 1, v.str()});
    j["entries"] = std::move(entries);
    return j;
}

inline RMatrix rmatrix_from_json(const nlohmann::json& j) {
    if (!j.contains("dimension") || !j.contains("entries"))
        throw preset_error("R-matrix file needs 'dimension' and 'entries'");
    int n = j.at("dimension").get<int>();
    std::vector<int> parity(n, 0);
    if (j.contains("parity")) parity = j.at("parity").get<std::vector<int>>();
    RMatrix r(n, parity);
    for (const auto& e : j.at("entries")) {
        int row = e.at(0).get<int>() - 1;
        int col = e.at(1).get<int>() - 1;
        if (row < 0 || col < 0 || row >= n * n || col >= n * n)
            throw preset_error("R-matrix entry index out of range");
        QCoeff c = parse_coeff(e.at(2).get<std::string>());
        r.set(row / n + 1, row % n + 1, col / n + 1, col % n + 1, c);
    }
    return r;
}

}  // namespace qg
