#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qgauss/linear_oracle.hpp"
#include "qgauss/ncpoly.hpp"
#include "qgauss/rewrite.hpp"

#include "glq_expected.hpp"

using namespace qg;

namespace {

struct Glq2 {
    SymbolTable syms;
    SymbolId a, b, c, d;
    RelationSet rel;

    Glq2(bool corrupt = false) {
        a = syms.add({"a"});
        b = syms.add({"b"});
        c = syms.add({"c"});
        d = syms.add({"d"});
        QCoeff qi = QCoeff::q_pow(-1);
        rel.syms = syms;
        rel.add_rule({{b, a}, qi * NcPolynomial::word({a, b})});
        rel.add_rule({{c, a}, qi * NcPolynomial::word({a, c})});
        rel.add_rule({{c, b}, NcPolynomial::word({b, c})});
        rel.add_rule({{d, b}, qi * NcPolynomial::word({b, d})});
        rel.add_rule({{d, c}, qi * NcPolynomial::word({c, d})});
        NcPolynomial da = NcPolynomial::word({a, d});
        if (!corrupt) da -= QCoeff::lambda() * NcPolynomial::word({b, c});
        rel.add_rule({{d, a}, da});
        rel.sort_rules();
    }

    NcPolynomial w(std::initializer_list<SymbolId> ids) const {
        return NcPolynomial::word(Word(ids));
    }
};

NcPolynomial random_poly(const SymbolTable& syms, std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<SymbolId> pick(0, static_cast<SymbolId>(syms.size() - 1));
    std::vector<Monomial> ts;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Word w;
        int d = deg(rng);
        for (int j = 0; j < d; ++j) w.push_back(pick(rng));
        int c = coef(rng);
        if (c == 0) c = 1;
        ts.push_back({QCoeff::of(c) * QCoeff::s_pow(coef(rng)), std::move(w)});
    }
    return NcPolynomial::from_terms(std::move(ts));
}

}  // namespace

TEST_CASE("free product is plain concatenation") {
    Glq2 g;
    CHECK(g.w({g.a}) * g.w({g.b}) == g.w({g.a, g.b}));
    NcPolynomial sum = g.w({g.a}) + g.w({g.b});
    CHECK(sum * g.w({g.c}) == g.w({g.a, g.c}) + g.w({g.b, g.c}));
    NcPolynomial lhs = (QCoeff::lambda() * g.w({g.a})) * (QCoeff::q() * g.w({g.b}));
    CHECK(lhs == (QCoeff::lambda() * QCoeff::q()) * g.w({g.a, g.b}));
}

TEST_CASE("normal forms for the four-generator algebra") {
    Glq2 g;
    Reducer red(g.rel);
    CHECK(red.normal_form(g.w({g.d, g.a})) ==
          g.w({g.a, g.d}) - QCoeff::lambda() * g.w({g.b, g.c}));
    CHECK(red.normal_form(g.w({g.b, g.a})) == QCoeff::q_pow(-1) * g.w({g.a, g.b}));
}

TEST_CASE("equality modulo relations") {
    Glq2 g;
    NcPolynomial p = g.w({g.a, g.d}) - QCoeff::q() * g.w({g.b, g.c});
    NcPolynomial r = g.w({g.d, g.a}) - QCoeff::q_pow(-1) * g.w({g.b, g.c});
    CHECK(equals_mod(p, p, g.rel));
    CHECK(equals_mod(p, r, g.rel));
    CHECK_FALSE(equals_mod(g.w({g.a, g.b}), g.w({g.b, g.a}), g.rel));
}

TEST_CASE("nilpotent square rule") {
    SymbolTable syms;
    SymbolId beta = syms.add({"beta", 1});
    RelationSet rel;
    rel.syms = syms;
    rel.add_rule({{beta, beta}, NcPolynomial::zero()});
    CHECK(normal_form(NcPolynomial::word({beta, beta}), rel).is_zero());
}

TEST_CASE("confluence of the quadratic rules") {
    Glq2 good;
    auto rep = check_confluence(good.rel, 3);
    CHECK(rep.ok());
    CHECK(rep.overlaps_checked > 0);

    qgtest::GlqExpected g3(3);
    CHECK(check_confluence(g3.rel, 3).ok());

    // dropping one lambda term leaves an overlap that no longer closes
    qgtest::GlqExpected mutated(3, /*drop_lambda_term=*/true);
    CHECK_FALSE(check_confluence(mutated.rel, 3).ok());
}

TEST_CASE("normal form is idempotent and sound on rule ideals") {
    Glq2 g;
    Reducer red(g.rel);
    std::mt19937 rng(5);
    for (int i = 0; i < 60; ++i) {
        NcPolynomial p = random_poly(g.syms, rng, 4);
        NcPolynomial n = red.normal_form(p);
        CHECK(red.normal_form(n) == n);
    }
    for (const auto& rule : g.rel.rules()) {
        CHECK(red.is_zero(NcPolynomial::word(rule.lhs) - rule.rhs));
    }
}

TEST_CASE("parity is conserved by reduction") {
    SymbolTable syms;
    SymbolId a = syms.add({"a", 0});
    SymbolId beta = syms.add({"beta", 1});
    RelationSet rel;
    rel.syms = syms;
    rel.add_rule({{beta, a}, QCoeff::q_pow(-1) * NcPolynomial::word({a, beta})});
    rel.add_rule({{beta, beta}, NcPolynomial::zero()});
    Reducer red(rel);
    std::mt19937 rng(9);
    for (int i = 0; i < 40; ++i) {
        NcPolynomial p = random_poly(syms, rng, 4);
        for (const auto& m : p.terms()) {
            NcPolynomial n = red.normal_form(NcPolynomial::word(m.word));
            int pin = word_parity(m.word, syms);
            int pout;
            CHECK(n.parity_homogeneous(syms, pout));
            if (!n.is_zero()) CHECK(pin == pout);
        }
    }
}

TEST_CASE("linear oracle agrees with rewriting on confluent rules") {
    Glq2 g;
    Reducer red(g.rel);
    LinearBasis oracle(g.rel, 3);

    // a relation element reduces to zero both ways
    NcPolynomial rel_elem = g.w({g.d, g.a}) - g.w({g.a, g.d}) + QCoeff::lambda() * g.w({g.b, g.c});
    CHECK(oracle.is_zero(rel_elem));
    CHECK(red.is_zero(rel_elem));

    std::mt19937 rng(17);
    for (int i = 0; i < 100; ++i) {
        NcPolynomial p = random_poly(g.syms, rng, 3);
        CHECK(oracle.reduce(p) == red.normal_form(p));
    }
}

TEST_CASE("normal form honors the step budget") {
    Glq2 g;
    NcPolynomial big = g.w({g.d, g.c, g.b, g.a}) * g.w({g.d, g.c, g.b, g.a});
    CHECK_THROWS_AS(normal_form(big, g.rel, /*max_steps=*/2), budget_exceeded);
}

TEST_CASE("canonical printing") {
    Glq2 g;
    Reducer red(g.rel);
    NcPolynomial n = red.normal_form(g.w({g.d, g.a}));
    CHECK(n.str(g.syms) == "a*d - lambda*b*c");
    CHECK(NcPolynomial::zero().str(g.syms) == "0");
    NcPolynomial sq = g.w({g.b, g.b});
    CHECK(sq.str(g.syms) == "b^2");
}

TEST_CASE("orientation turns relations into inter-reduced rules") {
    Glq2 g;
    // feed the six relations as raw polynomials, scrambled and duplicated
    std::vector<NcPolynomial> rels;
    for (const auto& r : g.rel.rules()) rels.push_back(NcPolynomial::word(r.lhs) - r.rhs);
    rels.push_back(QCoeff::q() * rels[0]);
    rels.push_back(rels[5] - rels[1]);
    RelationSet out = orient_relations(g.syms, rels);
    REQUIRE(out.rules().size() == g.rel.rules().size());
    for (std::size_t i = 0; i < out.rules().size(); ++i) {
        CHECK(out.rules()[i].lhs == g.rel.rules()[i].lhs);
        CHECK(out.rules()[i].rhs == g.rel.rules()[i].rhs);
    }
}
