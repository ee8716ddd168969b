#pragma once

// Free associative algebra over QCoeff with Z2-graded generators.
// Words are sequences of symbol ordinals; the global monomial order is
// degree-lexicographic on ordinals, fixed at algebra construction.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qgauss/errors.hpp"
#include "qgauss/qcoeff.hpp"

namespace qg {

using SymbolId = std::uint32_t;
inline constexpr SymbolId no_symbol = 0xffffffffu;

struct GeneratorSymbol {
    std::string label;
    int parity = 0;
    bool invertible = false;
    // For an inverse symbol of a single generator: the base symbol id.
    SymbolId inverse_of = no_symbol;
};

class SymbolTable {
public:
    SymbolId add(GeneratorSymbol s) {
        if (by_label_.count(s.label)) throw error("duplicate symbol label: " + s.label);
        SymbolId id = static_cast<SymbolId>(syms_.size());
        by_label_.emplace(s.label, id);
        syms_.push_back(std::move(s));
        return id;
    }

    std::size_t size() const { return syms_.size(); }
    const GeneratorSymbol& operator[](SymbolId id) const { return syms_[id]; }
    GeneratorSymbol& mutate(SymbolId id) { return syms_[id]; }

    SymbolId find(const std::string& label) const {
        auto it = by_label_.find(label);
        return it == by_label_.end() ? no_symbol : it->second;
    }

    const std::vector<GeneratorSymbol>& all() const { return syms_; }

private:
    std::vector<GeneratorSymbol> syms_;
    std::map<std::string, SymbolId> by_label_;
};

using Word = std::vector<SymbolId>;

// degree-lexicographic order
inline int word_cmp(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

inline bool word_less(const Word& a, const Word& b) { return word_cmp(a, b) < 0; }

struct WordLess {
    bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};
struct WordGreater {
    bool operator()(const Word& a, const Word& b) const { return word_cmp(a, b) > 0; }
};

inline int word_parity(const Word& w, const SymbolTable& syms) {
    int p = 0;
    for (SymbolId s : w) p ^= (syms[s].parity & 1);
    return p;
}

struct Monomial {
    QCoeff coeff;
    Word word;
};

// Canonical formal sum of coefficient-weighted words: terms sorted ascending
// in degree-lex order, unique words, no zero coefficients.
class NcPolynomial {
public:
    NcPolynomial() = default;

    static NcPolynomial zero() { return NcPolynomial(); }
    static NcPolynomial constant(const QCoeff& c) {
        NcPolynomial p;
        if (!c.is_zero()) p.t_.push_back({c, {}});
        return p;
    }
    static NcPolynomial one() { return constant(QCoeff::one()); }
    static NcPolynomial symbol(SymbolId s, const QCoeff& c = QCoeff::one()) {
        NcPolynomial p;
        if (!c.is_zero()) p.t_.push_back({c, {s}});
        return p;
    }
    static NcPolynomial word(Word w, const QCoeff& c = QCoeff::one()) {
        NcPolynomial p;
        if (!c.is_zero()) p.t_.push_back({c, std::move(w)});
        return p;
    }
    static NcPolynomial from_terms(std::vector<Monomial> terms) {
        NcPolynomial p;
        p.t_ = std::move(terms);
        p.normalize();
        return p;
    }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].word.empty()); }
    bool is_one() const { return t_.size() == 1 && t_[0].word.empty() && t_[0].coeff.is_one(); }

    std::size_t term_count() const { return t_.size(); }
    const std::vector<Monomial>& terms() const { return t_; }
    const Monomial& leading() const { return t_.back(); }
    std::size_t degree() const { return t_.empty() ? 0 : t_.back().word.size(); }

    QCoeff coeff_of(const Word& w) const {
        auto it = std::lower_bound(t_.begin(), t_.end(), w, [](const Monomial& m, const Word& x) {
            return word_less(m.word, x);
        });
        if (it != t_.end() && it->word == w) return it->coeff;
        return QCoeff::zero();
    }

    friend bool operator==(const NcPolynomial& a, const NcPolynomial& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (std::size_t i = 0; i < a.t_.size(); ++i)
            if (a.t_[i].word != b.t_[i].word || a.t_[i].coeff != b.t_[i].coeff) return false;
        return true;
    }
    friend bool operator!=(const NcPolynomial& a, const NcPolynomial& b) { return !(a == b); }

    NcPolynomial operator-() const {
        NcPolynomial p(*this);
        for (auto& m : p.t_) m.coeff = -m.coeff;
        return p;
    }

    friend NcPolynomial operator+(const NcPolynomial& a, const NcPolynomial& b) {
        // merge of two sorted term lists
        NcPolynomial r;
        r.t_.reserve(a.t_.size() + b.t_.size());
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() && j < b.t_.size()) {
            int c = word_cmp(a.t_[i].word, b.t_[j].word);
            if (c < 0) {
                r.t_.push_back(a.t_[i++]);
            } else if (c > 0) {
                r.t_.push_back(b.t_[j++]);
            } else {
                QCoeff s = a.t_[i].coeff + b.t_[j].coeff;
                if (!s.is_zero()) r.t_.push_back({s, a.t_[i].word});
                ++i, ++j;
            }
        }
        for (; i < a.t_.size(); ++i) r.t_.push_back(a.t_[i]);
        for (; j < b.t_.size(); ++j) r.t_.push_back(b.t_[j]);
        return r;
    }

    friend NcPolynomial operator-(const NcPolynomial& a, const NcPolynomial& b) { return a + (-b); }

    NcPolynomial& operator+=(const NcPolynomial& b) { return *this = *this + b; }
    NcPolynomial& operator-=(const NcPolynomial& b) { return *this = *this - b; }

    // Free product: concatenation of words, no reduction, no sign rules.
    friend NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b) {
        std::vector<Monomial> out;
        out.reserve(a.t_.size() * b.t_.size());
        for (const auto& ma : a.t_)
            for (const auto& mb : b.t_) {
                QCoeff c = ma.coeff * mb.coeff;
                if (c.is_zero()) continue;
                Word w = ma.word;
                w.insert(w.end(), mb.word.begin(), mb.word.end());
                out.push_back({std::move(c), std::move(w)});
            }
        return from_terms(std::move(out));
    }

    friend NcPolynomial operator*(const QCoeff& c, const NcPolynomial& p) {
        if (c.is_zero()) return NcPolynomial();
        NcPolynomial r(p);
        for (auto& m : r.t_) m.coeff = c * m.coeff;
        return r;
    }

    NcPolynomial& operator*=(const NcPolynomial& b) { return *this = *this * b; }

    NcPolynomial pow(int k) const {
        if (k < 0) throw error("negative power of a polynomial");
        NcPolynomial r = one();
        for (int i = 0; i < k; ++i) r = r * (*this);
        return r;
    }

    // True when every term has the same word parity; sets `parity` if so.
    bool parity_homogeneous(const SymbolTable& syms, int& parity) const {
        if (t_.empty()) {
            parity = 0;
            return true;
        }
        parity = word_parity(t_[0].word, syms);
        for (const auto& m : t_)
            if (word_parity(m.word, syms) != parity) return false;
        return true;
    }

    // Replace each occurrence of `s` by `value` (word-by-word product rebuild).
    NcPolynomial substituted(SymbolId s, const NcPolynomial& value) const {
        NcPolynomial out;
        for (const auto& m : t_) {
            NcPolynomial acc = constant(m.coeff);
            for (SymbolId g : m.word)
                acc = (g == s) ? acc * value : acc * symbol(g);
            out += acc;
        }
        return out;
    }

    std::string str(const SymbolTable& syms) const;

private:
    void normalize() {
        std::sort(t_.begin(), t_.end(), [](const Monomial& a, const Monomial& b) {
            return word_less(a.word, b.word);
        });
        std::vector<Monomial> out;
        out.reserve(t_.size());
        for (auto& m : t_) {
            if (m.coeff.is_zero()) continue;
            if (!out.empty() && out.back().word == m.word) {
                out.back().coeff += m.coeff;
                if (out.back().coeff.is_zero()) out.pop_back();
            } else {
                out.push_back(std::move(m));
            }
        }
        t_.swap(out);
    }

    std::vector<Monomial> t_;
};

// ---- printing ----------------------------------------------------------

namespace detail {

inline void append_word(std::string& out, const Word& w, const SymbolTable& syms) {
    std::size_t i = 0;
    bool first = true;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        const GeneratorSymbol& g = syms[w[i]];
        if (!first) out += "*";
        first = false;
        if (g.inverse_of != no_symbol) {
            // inverse of a single generator prints as base^-1, base^-2, ...
            std::size_t k = j - i;
            out += syms[g.inverse_of].label;
            out += (k == 1) ? "^-1" : "^-" + std::to_string(k);
        } else {
            out += g.label;
            if (j - i > 1) out += "^" + std::to_string(j - i);
        }
        i = j;
    }
}

}  // namespace detail

inline std::string NcPolynomial::str(const SymbolTable& syms) const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& m : t_) {
        QCoeff c = m.coeff;
        bool neg = c.print_negative();
        if (neg) c = -c;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string cs = c.str();
        bool needs_parens = !c.is_polynomial() || c.num().span() > 1;
        if (cs == "lambda" || cs == "omega") needs_parens = false;
        if (m.word.empty()) {
            out += needs_parens && t_.size() > 1 ? "(" + cs + ")" : cs;
        } else {
            if (!c.is_one()) {
                out += (needs_parens ? "(" + cs + ")" : cs) + "*";
            }
            detail::append_word(out, m.word, syms);
        }
    }
    return out;
}

}  // namespace qg
