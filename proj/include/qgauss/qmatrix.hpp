#pragma once

// Matrices over NcPolynomial with row/column parity vectors.

#include <functional>
#include <vector>

#include "qgauss/ncpoly.hpp"

namespace qg {

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols), row_parity_(rows, 0), col_parity_(cols, 0) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = NcPolynomial::one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    NcPolynomial& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const NcPolynomial& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    std::vector<int>& row_parity() { return row_parity_; }
    const std::vector<int>& row_parity() const { return row_parity_; }
    std::vector<int>& col_parity() { return col_parity_; }
    const std::vector<int>& col_parity() const { return col_parity_; }

    void set_parity(const std::vector<int>& p) {
        row_parity_ = p;
        col_parity_ = p;
    }

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        t.row_parity_ = col_parity_;
        t.col_parity_ = row_parity_;
        return t;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols_ != b.rows_) throw dimension_error("matrix product shape mismatch");
        QMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const NcPolynomial& x = a.at(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const NcPolynomial& y = b.at(k, j);
                    if (y.is_zero()) continue;
                    r.at(i, j) += x * y;
                }
            }
        r.row_parity_ = a.row_parity_;
        r.col_parity_ = b.col_parity_;
        return r;
    }

    friend QMatrix operator-(const QMatrix& a, const QMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw dimension_error("matrix difference shape mismatch");
        QMatrix r = a;
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] -= b.e_[i];
        return r;
    }

    friend QMatrix operator+(const QMatrix& a, const QMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw dimension_error("matrix sum shape mismatch");
        QMatrix r = a;
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] += b.e_[i];
        return r;
    }

    QMatrix map(const std::function<NcPolynomial(const NcPolynomial&)>& f) const {
        QMatrix r = *this;
        for (auto& x : r.e_) x = f(x);
        return r;
    }

    bool all_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<NcPolynomial> e_;
    std::vector<int> row_parity_, col_parity_;
};

// Graded matrix tensor product:
//   (F (x) G)[(i,j);(k,l)] = (-1)^{p(j)(p(i)+p(k))} F[i,k] G[j,l]
// with composite index (i,j) -> i*dim(G) + j. For all-even parities this is
// the plain Kronecker-style tensor.
inline QMatrix graded_tensor(const QMatrix& F, const QMatrix& G, const std::vector<int>& parity) {
    std::size_t nf = F.rows(), ng = G.rows();
    if (F.cols() != nf || G.cols() != ng) throw dimension_error("graded tensor needs square factors");
    QMatrix r(nf * ng, nf * ng);
    for (std::size_t i = 0; i < nf; ++i)
        for (std::size_t k = 0; k < nf; ++k) {
            const NcPolynomial& fik = F.at(i, k);
            if (fik.is_zero()) continue;
            for (std::size_t j = 0; j < ng; ++j)
                for (std::size_t l = 0; l < ng; ++l) {
                    const NcPolynomial& gjl = G.at(j, l);
                    if (gjl.is_zero()) continue;
                    int sign = (parity[j] & 1) && ((parity[i] ^ parity[k]) & 1) ? -1 : 1;
                    NcPolynomial v = fik * gjl;
                    r.at(i * ng + j, k * ng + l) = sign < 0 ? -v : v;
                }
        }
    std::vector<int> cp(nf * ng, 0);
    for (std::size_t i = 0; i < nf; ++i)
        for (std::size_t j = 0; j < ng; ++j) cp[i * ng + j] = (parity[i] + parity[j]) & 1;
    r.set_parity(cp);
    return r;
}

}  // namespace qg
