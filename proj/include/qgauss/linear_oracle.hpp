#pragma once

// Degree-graded linear-algebra oracle. The degree-d slice of the two-sided
// relation ideal is spanned by single-step rewrite differences w - w' over
// all words w of degree <= d; exact row reduction of that span gives a
// normal form that does not depend on rewrite strategy. Used to cross-check
// normal_form and as the fallback when a rule set is not confluent.

#include <map>
#include <vector>

#include "qgauss/rewrite.hpp"

namespace qg {

class LinearBasis {
public:
    LinearBasis(const RelationSet& rel, int degree, const Budget& budget = Budget{})
        : rel_(rel), degree_(degree) {
        std::size_t symbol_count = rel.syms.size();
        // enumerate words of degree <= degree_, depth-first in lex order
        Word w;
        std::size_t emitted = 0;
        enumerate(w, symbol_count, emitted, budget);
        ech_.back_substitute();
    }

    NcPolynomial reduce(const NcPolynomial& p) const {
        if (static_cast<int>(p.degree()) > degree_)
            throw budget_exceeded("linear oracle degree " + std::to_string(degree_));
        return row_to_poly(ech_.reduce(to_row(p)));
    }

    bool is_zero(const NcPolynomial& p) const { return reduce(p).is_zero(); }

    std::size_t rank() const { return ech_.rank(); }

private:
    void enumerate(Word& w, std::size_t n, std::size_t& emitted, const Budget& budget) {
        if (!w.empty()) {
            if (++emitted > budget.max_linear_words)
                throw budget_exceeded("linear oracle word count (" +
                                      std::to_string(budget.max_linear_words) + ")");
            emit_rows(w);
        }
        if (static_cast<int>(w.size()) == degree_) return;
        for (SymbolId s = 0; s < n; ++s) {
            w.push_back(s);
            enumerate(w, n, emitted, budget);
            w.pop_back();
        }
    }

    void emit_rows(const Word& w) {
        for (std::size_t p = 0; p < w.size(); ++p) {
            for (const RewriteRule* r : rel_.match_all_at(w, p)) {
                // row: w - (w with lhs at p replaced by rhs)
                SparseRow row;
                row.emplace(w, QCoeff::one());
                for (const auto& m : r->rhs.terms()) {
                    Word c(w.begin(), w.begin() + p);
                    c.insert(c.end(), m.word.begin(), m.word.end());
                    c.insert(c.end(), w.begin() + p + r->lhs.size(), w.end());
                    auto it = row.find(c);
                    if (it == row.end()) {
                        if (!m.coeff.is_zero()) row.emplace(std::move(c), -m.coeff);
                    } else {
                        it->second -= m.coeff;
                        if (it->second.is_zero()) row.erase(it);
                    }
                }
                if (!row.empty()) ech_.insert(std::move(row));
            }
        }
    }

    const RelationSet& rel_;
    int degree_;
    Echelon ech_;
};

inline NcPolynomial linear_normal_form(const NcPolynomial& p, const RelationSet& rel, int degree,
                                       const Budget& budget = Budget{}) {
    return LinearBasis(rel, degree, budget).reduce(p);
}

}  // namespace qg
