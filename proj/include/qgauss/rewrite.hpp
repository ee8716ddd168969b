#pragma once

// Rewriting engine: oriented relation sets, canonical normal forms, the
// diamond check on overlap words, and sparse exact linear algebra over
// word coordinates (used for orientation and as the fallback oracle).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgauss/ncpoly.hpp"

namespace qg {

struct Budget {
    long long max_reduction_steps = 1'000'000;
    int max_linear_degree = 6;
    std::size_t max_linear_words = 400'000;
};

struct RewriteRule {
    Word lhs;
    NcPolynomial rhs;
};

// A presentation of a quantized algebra: generators plus oriented rules.
// Every rule strictly decreases the degree-lex order, which is the
// termination witness for reduction.
class RelationSet {
public:
    SymbolTable syms;
    std::vector<NcPolynomial> unresolved;

    const std::vector<RewriteRule>& rules() const { return rules_; }

    void add_rule(RewriteRule r) {
        if (r.lhs.empty()) throw error("rewrite rule with empty left side");
        for (const auto& m : r.rhs.terms())
            if (!word_less(m.word, r.lhs))
                throw error("rewrite rule does not decrease the monomial order");
        for (const auto& ex : rules_)
            if (ex.lhs == r.lhs) throw error("duplicate rewrite rule left side");
        std::size_t idx = rules_.size();
        rules_.push_back(std::move(r));
        const Word& l = rules_.back().lhs;
        auto& bucket = index_[l[0]];
        bucket.push_back(idx);
        // longest lhs first so reduction prefers the longest match at a position
        std::sort(bucket.begin(), bucket.end(), [this](std::size_t a, std::size_t b) {
            if (rules_[a].lhs.size() != rules_[b].lhs.size())
                return rules_[a].lhs.size() > rules_[b].lhs.size();
            return word_less(rules_[a].lhs, rules_[b].lhs);
        });
    }

    // Longest rule whose lhs occurs in w starting at pos; null if none.
    const RewriteRule* match_at(const Word& w, std::size_t pos) const {
        auto it = index_.find(w[pos]);
        if (it == index_.end()) return nullptr;
        for (std::size_t idx : it->second) {
            const Word& l = rules_[idx].lhs;
            if (pos + l.size() > w.size()) continue;
            if (std::equal(l.begin(), l.end(), w.begin() + pos)) return &rules_[idx];
        }
        return nullptr;
    }

    // Every rule whose lhs occurs in w starting at pos.
    std::vector<const RewriteRule*> match_all_at(const Word& w, std::size_t pos) const {
        std::vector<const RewriteRule*> out;
        auto it = index_.find(w[pos]);
        if (it == index_.end()) return out;
        for (std::size_t idx : it->second) {
            const Word& l = rules_[idx].lhs;
            if (pos + l.size() > w.size()) continue;
            if (std::equal(l.begin(), l.end(), w.begin() + pos)) out.push_back(&rules_[idx]);
        }
        return out;
    }

    bool has_redex(const Word& w) const {
        for (std::size_t p = 0; p < w.size(); ++p)
            if (match_at(w, p)) return true;
        return false;
    }

    void sort_rules() {
        std::sort(rules_.begin(), rules_.end(),
                  [](const RewriteRule& a, const RewriteRule& b) { return word_less(a.lhs, b.lhs); });
        rebuild_index();
    }

private:
    void rebuild_index() {
        index_.clear();
        for (std::size_t i = 0; i < rules_.size(); ++i) index_[rules_[i].lhs[0]].push_back(i);
        for (auto& [k, bucket] : index_) {
            std::sort(bucket.begin(), bucket.end(), [this](std::size_t a, std::size_t b) {
                if (rules_[a].lhs.size() != rules_[b].lhs.size())
                    return rules_[a].lhs.size() > rules_[b].lhs.size();
                return word_less(rules_[a].lhs, rules_[b].lhs);
            });
        }
    }

    std::vector<RewriteRule> rules_;
    std::map<SymbolId, std::vector<std::size_t>> index_;
};

// Memoizing reducer. Reduction strategy: leftmost position, longest match.
// Each word's full reduction is deterministic, so results are reproducible.
class Reducer {
public:
    explicit Reducer(const RelationSet& rel, long long max_steps = Budget{}.max_reduction_steps)
        : rel_(rel), max_steps_(max_steps) {}

    const RelationSet& relations() const { return rel_; }
    long long steps() const { return steps_; }

    NcPolynomial normal_form(const NcPolynomial& p) {
        NcPolynomial out;
        for (const auto& m : p.terms()) out += m.coeff * word_nf(m.word);
        return out;
    }

    bool is_zero(const NcPolynomial& p) { return normal_form(p).is_zero(); }
    bool equal(const NcPolynomial& a, const NcPolynomial& b) { return is_zero(a - b); }

private:
    struct Redex {
        std::size_t pos;
        const RewriteRule* rule;
    };

    std::optional<Redex> find_redex(const Word& w) const {
        for (std::size_t p = 0; p < w.size(); ++p)
            if (const RewriteRule* r = rel_.match_at(w, p)) return Redex{p, r};
        return std::nullopt;
    }

    const NcPolynomial& word_nf(const Word& w0) {
        auto hit = cache_.find(w0);
        if (hit != cache_.end()) return hit->second;

        std::vector<Word> stack{w0};
        while (!stack.empty()) {
            const Word& w = stack.back();
            if (cache_.count(w)) {
                stack.pop_back();
                continue;
            }
            auto rd = find_redex(w);
            if (!rd) {
                cache_.emplace(w, NcPolynomial::word(w));
                stack.pop_back();
                continue;
            }
            if (++steps_ > max_steps_)
                throw budget_exceeded("reduction steps (" + std::to_string(max_steps_) + ")");
            // expand w at the redex
            bool ready = true;
            std::vector<std::pair<QCoeff, Word>> children;
            children.reserve(rd->rule->rhs.term_count());
            for (const auto& m : rd->rule->rhs.terms()) {
                Word c;
                c.reserve(w.size() - rd->rule->lhs.size() + m.word.size());
                c.insert(c.end(), w.begin(), w.begin() + rd->pos);
                c.insert(c.end(), m.word.begin(), m.word.end());
                c.insert(c.end(), w.begin() + rd->pos + rd->rule->lhs.size(), w.end());
                children.emplace_back(m.coeff, std::move(c));
            }
            for (const auto& [c, cw] : children)
                if (!cache_.count(cw)) {
                    ready = false;
                    stack.push_back(cw);
                }
            if (ready) {
                NcPolynomial acc;
                for (const auto& [c, cw] : children) acc += c * cache_.at(cw);
                if (cache_.size() > max_cache_) cache_.clear();
                Word key = w;  // w may dangle after push_back; copy before erase
                stack.pop_back();
                cache_.emplace(std::move(key), std::move(acc));
            }
        }
        return cache_.at(w0);
    }

    const RelationSet& rel_;
    long long max_steps_;
    long long steps_ = 0;
    std::size_t max_cache_ = 2'000'000;
    std::map<Word, NcPolynomial, WordLess> cache_;
};

inline NcPolynomial normal_form(const NcPolynomial& p, const RelationSet& rel,
                                long long max_steps = Budget{}.max_reduction_steps) {
    Reducer red(rel, max_steps);
    return red.normal_form(p);
}

inline bool equals_mod(const NcPolynomial& p, const NcPolynomial& r, const RelationSet& rel) {
    Reducer red(rel);
    return red.is_zero(p - r);
}

// ---- sparse exact linear algebra over word coordinates ------------------

using SparseRow = std::map<Word, QCoeff, WordLess>;

inline SparseRow to_row(const NcPolynomial& p) {
    SparseRow r;
    for (const auto& m : p.terms()) r.emplace(m.word, m.coeff);
    return r;
}

inline NcPolynomial row_to_poly(const SparseRow& r) {
    std::vector<Monomial> ts;
    ts.reserve(r.size());
    for (const auto& [w, c] : r) ts.push_back({c, w});
    return NcPolynomial::from_terms(std::move(ts));
}

// Row echelon structure with pivots on the largest word of each row.
class Echelon {
public:
    // Reduce `row` against the installed pivots until no pivot word remains.
    SparseRow reduce(SparseRow row) const {
        for (;;) {
            bool hit = false;
            for (auto it = row.rbegin(); it != row.rend(); ++it) {
                auto piv = rows_.find(it->first);
                if (piv == rows_.end()) continue;
                QCoeff f = it->second;
                axpy(row, -f, piv->second);
                hit = true;
                break;
            }
            if (!hit) return row;
        }
    }

    // Returns false if the row reduced to zero (was dependent).
    bool insert(SparseRow row) {
        row = reduce(std::move(row));
        if (row.empty()) return false;
        Word pivot = row.rbegin()->first;
        QCoeff inv = row.rbegin()->second.inverse();
        for (auto& [w, c] : row) c = c * inv;
        rows_.emplace(std::move(pivot), std::move(row));
        return true;
    }

    // Full back-substitution: eliminate every pivot word from the other rows.
    void back_substitute() {
        for (auto it = rows_.begin(); it != rows_.end(); ++it) {
            bool changed = true;
            while (changed) {
                changed = false;
                for (auto jt = it->second.begin(); jt != it->second.end(); ++jt) {
                    if (jt->first == it->first) continue;
                    auto piv = rows_.find(jt->first);
                    if (piv == rows_.end()) continue;
                    axpy(it->second, -jt->second, piv->second);
                    changed = true;
                    break;
                }
            }
        }
    }

    std::size_t rank() const { return rows_.size(); }
    const std::map<Word, SparseRow, WordLess>& rows() const { return rows_; }

private:
    static void axpy(SparseRow& dst, const QCoeff& f, const SparseRow& src) {
        for (const auto& [w, c] : src) {
            auto it = dst.find(w);
            if (it == dst.end()) {
                QCoeff v = f * c;
                if (!v.is_zero()) dst.emplace(w, std::move(v));
            } else {
                it->second += f * c;
                if (it->second.is_zero()) dst.erase(it);
            }
        }
    }

    std::map<Word, SparseRow, WordLess> rows_;
};

// Orient a list of relations (read as "element = 0") into an inter-reduced
// rule set over the given symbols. Linearly dependent relations drop out.
// A relation whose leading coefficient could not be inverted would land in
// `unresolved`; over the coefficient field this cannot happen.
inline RelationSet orient_relations(const SymbolTable& syms, std::vector<NcPolynomial> relations) {
    std::sort(relations.begin(), relations.end(), [](const NcPolynomial& a, const NcPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return b.is_zero() < a.is_zero();
        return word_less(a.leading().word, b.leading().word);
    });
    Echelon ech;
    for (const auto& r : relations) {
        if (r.is_zero()) continue;
        ech.insert(to_row(r));
    }
    ech.back_substitute();
    RelationSet rel;
    rel.syms = syms;
    for (const auto& [pivot, row] : ech.rows()) {
        std::vector<Monomial> rest;
        for (const auto& [w, c] : row)
            if (w != pivot) rest.push_back({-c, w});
        rel.add_rule({pivot, NcPolynomial::from_terms(std::move(rest))});
    }
    rel.sort_rules();
    return rel;
}

// ---- confluence ----------------------------------------------------------

struct ConfluenceViolation {
    Word overlap;
    NcPolynomial left_nf;
    NcPolynomial right_nf;
};

struct ConfluenceReport {
    std::vector<ConfluenceViolation> violations;
    std::size_t overlaps_checked = 0;
    bool ok() const { return violations.empty(); }
};

// Diamond check: every overlap word of two rule left sides (bounded by
// max_degree) must reach the same normal form along both reduction orders.
inline ConfluenceReport check_confluence(const RelationSet& rel, int max_degree = 3,
                                         long long max_steps = Budget{}.max_reduction_steps) {
    ConfluenceReport report;
    Reducer red(rel, max_steps);
    auto check = [&](const Word& w, std::size_t pos1, const RewriteRule& r1, std::size_t pos2,
                     const RewriteRule& r2) {
        auto apply = [&](std::size_t pos, const RewriteRule& r) {
            NcPolynomial acc;
            for (const auto& m : r.rhs.terms()) {
                Word c(w.begin(), w.begin() + pos);
                c.insert(c.end(), m.word.begin(), m.word.end());
                c.insert(c.end(), w.begin() + pos + r.lhs.size(), w.end());
                acc += m.coeff * NcPolynomial::word(std::move(c));
            }
            return acc;
        };
        NcPolynomial a = red.normal_form(apply(pos1, r1));
        NcPolynomial b = red.normal_form(apply(pos2, r2));
        ++report.overlaps_checked;
        if (a != b) report.violations.push_back({w, a, b});
    };

    const auto& rules = rel.rules();
    for (const auto& r1 : rules) {
        for (const auto& r2 : rules) {
            // proper overlap: a nonempty proper suffix of r1.lhs equals a
            // proper prefix of r2.lhs
            for (std::size_t ov = 1; ov < r1.lhs.size() && ov < r2.lhs.size(); ++ov) {
                if (!std::equal(r1.lhs.end() - ov, r1.lhs.end(), r2.lhs.begin())) continue;
                Word w = r1.lhs;
                w.insert(w.end(), r2.lhs.begin() + ov, r2.lhs.end());
                if (static_cast<int>(w.size()) > max_degree) continue;
                check(w, 0, r1, r1.lhs.size() - ov, r2);
            }
            // containment: r2.lhs strictly inside r1.lhs
            if (r2.lhs.size() < r1.lhs.size() &&
                static_cast<int>(r1.lhs.size()) <= max_degree) {
                for (std::size_t p = 0; p + r2.lhs.size() <= r1.lhs.size(); ++p) {
                    if (!std::equal(r2.lhs.begin(), r2.lhs.end(), r1.lhs.begin() + p)) continue;
                    check(r1.lhs, 0, r1, p, r2);
                }
            }
        }
    }
    return report;
}

}  // namespace qg
