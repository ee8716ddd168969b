#pragma once

// Localization: formal adjunction of inverse symbols for elements that
// quasi-commute (commute up to a power of q) with the generators they need
// to cross. For a composite element X the pair identities X X^{-1} = 1 and
// X^{-1} X = 1 are installed as folding rules on the leading word of X, so
// both orders reduce by rewriting alone.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qgauss/linear_oracle.hpp"
#include "qgauss/rewrite.hpp"

namespace qg {

class Localization {
public:
    struct Inverted {
        NcPolynomial element;  // normal form at adjunction time
        SymbolId inv;
    };

    explicit Localization(RelationSet base) : rel_(std::move(base)) {}

    const RelationSet& rel() const { return rel_; }
    const std::vector<Inverted>& inverted() const { return inv_; }

    // Quasi-commutation exponents found for inverse symbols: (inv, g) -> e
    // meaning X g = q^{e/2} g X.
    const std::map<std::pair<SymbolId, SymbolId>, int>& exponents() const { return exp_; }

    // Adjoin a formal inverse of X. Returns a polynomial representing X^{-1}
    // (a fresh symbol, or a scalar multiple of an existing inverse when X is
    // a scalar multiple of an already inverted element). For every symbol g
    // in `required` a quasi-commutation exponent must exist; other symbols
    // are probed opportunistically.
    NcPolynomial adjoin_inverse(const NcPolynomial& X, const std::string& label,
                                const std::vector<SymbolId>& required = {},
                                long long max_steps = Budget{}.max_reduction_steps) {
        Reducer red(rel_, max_steps);
        NcPolynomial xn = red.normal_form(X);
        if (xn.is_zero()) throw localization_error("cannot invert zero");
        int parity = 0;
        if (!xn.parity_homogeneous(rel_.syms, parity) || parity != 0)
            throw localization_error("cannot invert an odd or parity-mixed element");

        // reuse: X equal to (a scalar multiple of) an already inverted element
        for (const auto& e : inv_) {
            if (xn.term_count() != e.element.term_count()) continue;
            QCoeff ratio = xn.leading().coeff / e.element.leading().coeff;
            if ((xn - ratio * e.element).is_zero())
                return ratio.inverse() * NcPolynomial::symbol(e.inv);
        }

        bool single = xn.term_count() == 1 && xn.leading().word.size() == 1 &&
                      xn.leading().coeff.is_one();
        SymbolId base_sym = single ? xn.leading().word[0] : no_symbol;

        GeneratorSymbol gs;
        gs.label = label;
        gs.parity = 0;
        gs.invertible = true;
        gs.inverse_of = base_sym;
        SymbolId xhat = rel_.syms.add(gs);

        // quasi-commutation search against every existing symbol
        std::vector<SymbolId> missing;
        std::vector<std::pair<SymbolId, int>> found;
        for (SymbolId g = 0; g + 1 < rel_.syms.size(); ++g) {
            NcPolynomial gp = NcPolynomial::symbol(g);
            std::optional<int> expo;
            for (int e = -8; e <= 8; ++e) {
                if (red.is_zero(xn * gp - QCoeff::s_pow(e) * (gp * xn))) {
                    expo = e;
                    break;
                }
            }
            if (expo) {
                found.emplace_back(g, *expo);
            } else {
                missing.push_back(g);
            }
        }
        for (SymbolId r : required)
            for (SymbolId m : missing)
                if (m == r)
                    throw localization_error("element '" + label +
                                             "' does not quasi-commute with generator '" +
                                             rel_.syms[r].label + "'");

        // install rules
        if (single) {
            rel_.add_rule({{base_sym, xhat}, NcPolynomial::one()});
            rel_.add_rule({{xhat, base_sym}, NcPolynomial::one()});
        } else {
            const Word& lead = xn.leading().word;
            QCoeff cl = xn.leading().coeff.inverse();
            NcPolynomial right_rest, left_rest;
            for (const auto& m : xn.terms()) {
                if (m.word == lead) continue;
                Word wr = m.word;
                wr.push_back(xhat);
                right_rest += m.coeff * NcPolynomial::word(std::move(wr));
                Word wl;
                wl.push_back(xhat);
                wl.insert(wl.end(), m.word.begin(), m.word.end());
                left_rest += m.coeff * NcPolynomial::word(std::move(wl));
            }
            Word rl = lead;
            rl.push_back(xhat);
            rel_.add_rule({std::move(rl), cl * (NcPolynomial::one() - right_rest)});
            Word ll;
            ll.push_back(xhat);
            ll.insert(ll.end(), lead.begin(), lead.end());
            rel_.add_rule({std::move(ll), cl * (NcPolynomial::one() - left_rest)});
        }
        for (const auto& [g, e] : found) {
            if (single && g == base_sym) continue;
            // X g = q^{e/2} g X  =>  X^{-1} g = q^{-e/2} g X^{-1}
            Word lhs{xhat, g};
            rel_.add_rule({std::move(lhs),
                           QCoeff::s_pow(-e) * (NcPolynomial::symbol(g) * NcPolynomial::symbol(xhat))});
            exp_[{xhat, g}] = e;
        }
        if (base_sym != no_symbol) rel_.syms.mutate(base_sym).invertible = true;
        rel_.sort_rules();
        inv_.push_back({xn, xhat});
        return NcPolynomial::symbol(xhat);
    }

private:
    RelationSet rel_;
    std::vector<Inverted> inv_;
    std::map<std::pair<SymbolId, SymbolId>, int> exp_;
};

// Tiered zero test over a localized algebra:
//   1. rewrite to normal form;
//   2. clear denominators by right multiplication with the inverted elements
//      (ascending adjunction order), reducing after each pass;
//   3. decide the residue with the degree-bounded linear oracle.
// Tier 2 is sound because inverted elements are regular in the localization.
class Prover {
public:
    struct Options {
        int clearing_passes = 12;
        int linear_degree_cap = 5;
        std::size_t linear_word_cap = 400'000;
        long long max_steps = Budget{}.max_reduction_steps;
    };

    explicit Prover(const Localization& loc) : Prover(loc, Options{}) {}
    Prover(const Localization& loc, Options opt)
        : loc_(loc), opt_(opt), red_(loc.rel(), opt.max_steps) {}

    Reducer& reducer() { return red_; }

    const NcPolynomial& residual() const { return residual_; }
    const std::string& method() const { return method_; }

    // `allow_linear = false` gives a cheap sound-but-incomplete test for use
    // inside search loops.
    bool is_zero(const NcPolynomial& p, bool allow_linear = true) {
        NcPolynomial d = red_.normal_form(p);
        if (d.is_zero()) {
            method_ = "rewrite";
            return true;
        }
        // Clear denominators while the count of inverse-symbol occurrences
        // strictly drops; multiplication by an inverted element is sound
        // because inverted elements are regular.
        for (int pass = 0; pass < opt_.clearing_passes; ++pass) {
            std::size_t occ = inverse_occurrences(d);
            if (occ == 0) break;
            bool progressed = false;
            for (const auto& inv : loc_.inverted()) {
                if (!contains_symbol(d, inv.inv)) continue;
                NcPolynomial next = red_.normal_form(d * inv.element);
                if (next.is_zero()) {
                    method_ = "denominator-clearing";
                    return true;
                }
                if (inverse_occurrences(next) < occ) {
                    d = std::move(next);
                    progressed = true;
                    break;
                }
            }
            if (!progressed) break;
        }
        std::size_t deg = d.degree();
        if (allow_linear && static_cast<int>(deg) <= opt_.linear_degree_cap && fits_linear(deg)) {
            try {
                const LinearBasis& basis = basis_for(static_cast<int>(deg));
                if (basis.is_zero(d)) {
                    method_ = "linear-oracle";
                    return true;
                }
            } catch (const budget_exceeded&) {
                // fall through to failure with the residual we have
            }
        }
        residual_ = d;
        method_ = "undecided";
        return false;
    }

    bool equal(const NcPolynomial& a, const NcPolynomial& b) { return is_zero(a - b); }

private:
    using Inverse = Localization::Inverted;

    static bool contains_symbol(const NcPolynomial& p, SymbolId s) {
        for (const auto& m : p.terms())
            for (SymbolId g : m.word)
                if (g == s) return true;
        return false;
    }

    std::size_t inverse_occurrences(const NcPolynomial& p) const {
        std::size_t count = 0;
        for (const auto& m : p.terms())
            for (SymbolId g : m.word)
                for (const auto& inv : loc_.inverted())
                    if (g == inv.inv) ++count;
        return count;
    }

    bool fits_linear(std::size_t degree) const {
        double words = 1;
        double total = 0;
        for (std::size_t i = 0; i <= degree; ++i) {
            total += words;
            words *= static_cast<double>(loc_.rel().syms.size());
            if (total + words > static_cast<double>(opt_.linear_word_cap)) return false;
        }
        return true;
    }

    const LinearBasis& basis_for(int degree) {
        auto it = bases_.lower_bound(degree);
        if (it != bases_.end()) return *it->second;
        Budget b;
        b.max_linear_words = opt_.linear_word_cap;
        auto basis = std::make_unique<LinearBasis>(loc_.rel(), degree, b);
        return *bases_.emplace(degree, std::move(basis)).first->second;
    }

    const Localization& loc_;
    Options opt_;
    Reducer red_;
    NcPolynomial residual_;
    std::string method_;
    std::map<int, std::unique_ptr<LinearBasis>> bases_;
};

}  // namespace qg
