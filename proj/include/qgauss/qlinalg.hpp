#pragma once

// Quantum determinants, minors, inverses and symplectic determinants over
// noncommutative entries.

#include <functional>
#include <numeric>
#include <vector>

#include "qgauss/qmatrix.hpp"
#include "qgauss/rewrite.hpp"

namespace qg {

struct Permutation {
    std::vector<int> image;  // sigma(1..k) as 1-based positions into the column set

    // inversion count
    int length() const {
        int l = 0;
        for (std::size_t i = 0; i < image.size(); ++i)
            for (std::size_t j = i + 1; j < image.size(); ++j)
                if (image[i] > image[j]) ++l;
        return l;
    }

    // Number of inverted pairs whose values are primed partners: i < j with
    // sigma(i) > sigma(j) and sigma(i) = sigma(j)' where x' = N + 1 - x on
    // the global index range. `values` maps positions to actual indices.
    static int transposition_index(const std::vector<int>& values, int global_n) {
        int l = 0;
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t j = i + 1; j < values.size(); ++j)
                if (values[i] > values[j] && values[i] == global_n + 1 - values[j]) ++l;
        return l;
    }
};

namespace detail {

template <typename Fn>
void for_each_permutation(int k, Fn&& fn) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        fn(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

// Row-ordered quantum determinant of the submatrix selected by `rows` and
// `cols` (1-based index lists, taken in the given order):
//   sum_sigma (-q)^{l(sigma)} t[r1, c_sigma(1)] ... t[rk, c_sigma(k)]
inline NcPolynomial qminor(const QMatrix& T, const std::vector<int>& rows,
                           const std::vector<int>& cols, Reducer& red) {
    if (rows.size() != cols.size()) throw dimension_error("minor needs square index sets");
    int k = static_cast<int>(rows.size());
    NcPolynomial sum;
    detail::for_each_permutation(k, [&](const std::vector<int>& perm) {
        Permutation sigma{perm};
        NcPolynomial prod = NcPolynomial::constant(QCoeff::minus_q_pow(sigma.length()));
        for (int i = 0; i < k; ++i)
            prod = prod * T.at(rows[i] - 1, cols[perm[i] - 1] - 1);
        sum += prod;
    });
    return red.normal_form(sum);
}

inline NcPolynomial qdet(const QMatrix& T, Reducer& red) {
    if (T.rows() != T.cols()) throw dimension_error("determinant of a non-square matrix");
    std::vector<int> idx(T.rows());
    std::iota(idx.begin(), idx.end(), 1);
    return qminor(T, idx, idx, red);
}

// Symplectic variant with the extra factor q^{l'(sigma)}; `global_n` fixes
// the primed pairing i' = N + 1 - i.
inline NcPolynomial sp_qminor(const QMatrix& T, const std::vector<int>& rows,
                              const std::vector<int>& cols, int global_n, Reducer& red) {
    if (rows.size() != cols.size()) throw dimension_error("minor needs square index sets");
    int k = static_cast<int>(rows.size());
    NcPolynomial sum;
    detail::for_each_permutation(k, [&](const std::vector<int>& perm) {
        Permutation sigma{perm};
        std::vector<int> values(k);
        for (int i = 0; i < k; ++i) values[i] = cols[perm[i] - 1];
        QCoeff c = QCoeff::minus_q_pow(sigma.length()) *
                   QCoeff::q_pow(Permutation::transposition_index(values, global_n));
        NcPolynomial prod = NcPolynomial::constant(c);
        for (int i = 0; i < k; ++i)
            prod = prod * T.at(rows[i] - 1, cols[perm[i] - 1] - 1);
        sum += prod;
    });
    return red.normal_form(sum);
}

inline NcPolynomial sp_qdet(const QMatrix& T, int global_n, Reducer& red) {
    std::vector<int> idx(T.rows());
    std::iota(idx.begin(), idx.end(), 1);
    return sp_qminor(T, idx, idx, global_n, red);
}

// Quantum inverse. Convention, fixed by verifying T X = X T = 1 on the
// two-generator case and then frozen:
//   X[i,j] = (-q)^{i-j} * det_inverse * M(j, i)
// where M(j, i) omits row j and column i (note the transposition relative
// to a naive reading) and the determinant inverse sits on the left.
struct QInverseError : error {
    explicit QInverseError(const std::string& msg) : error(msg) {}
};

inline QMatrix qinverse(const QMatrix& T, Reducer& red, const NcPolynomial& det_inverse,
                        const std::function<bool(const NcPolynomial&)>& is_zero = nullptr) {
    std::size_t n = T.rows();
    if (n != T.cols()) throw dimension_error("inverse of a non-square matrix");
    QMatrix X(n, n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            std::vector<int> rows, cols;
            for (std::size_t r = 1; r <= n; ++r)
                if (r != j) rows.push_back(static_cast<int>(r));
            for (std::size_t c = 1; c <= n; ++c)
                if (c != i) cols.push_back(static_cast<int>(c));
            NcPolynomial minor =
                rows.empty() ? NcPolynomial::one() : qminor(T, rows, cols, red);
            QCoeff sign = QCoeff::minus_q_pow(static_cast<int>(i) - static_cast<int>(j));
            X.at(i - 1, j - 1) = red.normal_form(sign * (det_inverse * minor));
        }
    auto zero = is_zero ? is_zero : [&red](const NcPolynomial& p) { return red.is_zero(p); };
    QMatrix lhs = T * X - QMatrix::identity(n);
    QMatrix rhs = X * T - QMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!zero(lhs.at(i, j)))
                throw QInverseError("inverse convention failed at T*X entry (" +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            if (!zero(rhs.at(i, j)))
                throw QInverseError("inverse convention failed at X*T entry (" +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    return X;
}

// True iff z commutes with every listed generator.
inline bool centrality_check(const NcPolynomial& z, Reducer& red,
                             const std::vector<SymbolId>& gens,
                             const std::function<bool(const NcPolynomial&)>& is_zero = nullptr) {
    auto zero = is_zero ? is_zero : [&red](const NcPolynomial& p) { return red.is_zero(p); };
    for (SymbolId g : gens) {
        NcPolynomial gs = NcPolynomial::symbol(g);
        if (!zero(z * gs - gs * z)) return false;
    }
    return true;
}

}  // namespace qg
