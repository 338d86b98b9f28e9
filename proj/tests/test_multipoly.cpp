#include <doctest.h>

#include "eulertop/multipoly.hpp"
#include "eulertop/rng.hpp"

using namespace eulertop;

namespace {

MultiPoly var(PAdicContext ctx, Var v) { return MultiPoly::variable(ctx, v); }

MultiPoly random_poly(Rng& rng, PAdicContext ctx, uint32_t max_deg, uint32_t terms,
                      std::initializer_list<Var> vars) {
    std::vector<MultiPoly::Term> out;
    for (uint32_t i = 0; i < terms; ++i) {
        MultiPoly::Term t;
        for (Var v : vars)
            t.exp[static_cast<size_t>(v)] = static_cast<uint16_t>(rng.below(max_deg + 1));
        t.coeff = rng.below(ctx.modulus);
        out.push_back(t);
    }
    return MultiPoly::from_terms(ctx, std::move(out));
}

} // namespace

TEST_SUITE_BEGIN("multipoly");

TEST_CASE("basic arithmetic and canonical form") {
    const PAdicContext ctx = PAdicContext::make(3, 2);
    const MultiPoly x1 = var(ctx, Var::x1), x2 = var(ctx, Var::x2);
    const MultiPoly f = x1 * x1 + x2;

    CHECK(f + MultiPoly::zero(ctx) == f);
    CHECK(f.pow(0) == MultiPoly::constant(ctx, 1));

    // (x1 + x2)^3 = x1^3 + 3 x1^2 x2 + 3 x1 x2^2 + x2^3 mod 9
    const MultiPoly cube = (x1 + x2).pow(3);
    MultiPoly expected = x1.pow(3) + x2.pow(3) +
                         MultiPoly::constant(ctx, 3) * (x1.pow(2) * x2 + x1 * x2.pow(2));
    CHECK(cube == expected);

    // mixing contexts is rejected
    const PAdicContext other = PAdicContext::make(5, 2);
    CHECK_THROWS_AS(f + MultiPoly::constant(other, 1), ContextMismatch);
}

TEST_CASE("ring axioms on random triples") {
    const PAdicContext ctx = PAdicContext::make(5, 3);
    Rng rng(11);
    for (int i = 0; i < 15; ++i) {
        const MultiPoly f = random_poly(rng, ctx, 3, 4, {Var::x1, Var::x2, Var::x3});
        const MultiPoly g = random_poly(rng, ctx, 3, 4, {Var::x1, Var::x2, Var::x3});
        const MultiPoly h = random_poly(rng, ctx, 3, 4, {Var::x1, Var::x2, Var::x3});
        CHECK((f + g) * h == f * h + g * h);
        CHECK(f * g == g * f);
        CHECK((f * g) * h == f * (g * h));
    }
}

TEST_CASE("substitute") {
    const PAdicContext ctx = PAdicContext::make(3, 2);
    const MultiPoly z1 = var(ctx, Var::z1), z2 = var(ctx, Var::z2);
    const MultiPoly h1 = var(ctx, Var::x2).pow(2) + MultiPoly::constant(ctx, 2) * var(ctx, Var::x3).pow(2);

    CHECK(z1.substitute({{Var::z1, h1}}) == h1);
    CHECK((z1 * z2).substitute({{Var::z1, var(ctx, Var::x1)}, {Var::z2, var(ctx, Var::x1)}}) ==
          var(ctx, Var::x1).pow(2));

    // partial substitution leaves unbound variables alone
    const MultiPoly mixed = z1 * var(ctx, Var::x);
    CHECK(mixed.substitute({{Var::z1, MultiPoly::constant(ctx, 2)}}) ==
          MultiPoly::constant(ctx, 2) * var(ctx, Var::x));
}

TEST_CASE("substitute is a ring homomorphism") {
    const PAdicContext ctx = PAdicContext::make(5, 2);
    Rng rng(12);
    const std::map<Var, MultiPoly> bind = {
        {Var::z1, random_poly(rng, ctx, 2, 3, {Var::x1, Var::x3})},
        {Var::z2, random_poly(rng, ctx, 2, 3, {Var::x2})}};
    for (int i = 0; i < 10; ++i) {
        const MultiPoly f = random_poly(rng, ctx, 2, 4, {Var::z1, Var::z2});
        const MultiPoly g = random_poly(rng, ctx, 2, 4, {Var::z1, Var::z2});
        CHECK((f * g).substitute(bind) == f.substitute(bind) * g.substitute(bind));
        CHECK((f + g).substitute(bind) == f.substitute(bind) + g.substitute(bind));
    }
}

TEST_CASE("partial derivatives") {
    const PAdicContext ctx = PAdicContext::make(5, 2);
    CHECK(MultiPoly::constant(ctx, 7).partial(Var::x1).is_zero());
    // d/dx3 of x3^p has the p survive at precision 2
    const MultiPoly x3 = var(ctx, Var::x3);
    CHECK(x3.pow(5).partial(Var::x3) == MultiPoly::constant(ctx, 5) * x3.pow(4));

    // Leibniz rule on random pairs
    Rng rng(13);
    for (int i = 0; i < 12; ++i) {
        const MultiPoly f = random_poly(rng, ctx, 3, 4, {Var::x1, Var::x2, Var::x3});
        const MultiPoly g = random_poly(rng, ctx, 3, 4, {Var::x1, Var::x2, Var::x3});
        for (Var v : {Var::x1, Var::x2, Var::x3})
            CHECK((f * g).partial(v) == f.partial(v) * g + f * g.partial(v));
    }
}

TEST_CASE("coefficient extraction") {
    const PAdicContext ctx = PAdicContext::make(3, 2);
    const MultiPoly x = var(ctx, Var::x);
    CHECK(x.pow(2).coefficient_of(Var::x, 2) == MultiPoly::constant(ctx, 1));
    CHECK(x.pow(2).coefficient_of(Var::x, 1).is_zero());

    // reconstruction: sum_k coeff(f, v, k) v^k = f
    Rng rng(14);
    for (int i = 0; i < 10; ++i) {
        const MultiPoly f = random_poly(rng, ctx, 4, 6, {Var::z1, Var::z2, Var::x});
        MultiPoly back = MultiPoly::zero(ctx);
        for (uint32_t k = 0; k <= f.degree_in(Var::x); ++k)
            back = back + f.coefficient_of(Var::x, k) * x.pow(k);
        CHECK(back == f);
    }
}

TEST_CASE("weighted homogeneity") {
    const PAdicContext ctx = PAdicContext::make(3, 2);
    const ExponentWeights w221 = ExponentWeights{}.set(Var::z1, 2).set(Var::z2, 2).set(Var::x, 1);
    CHECK(MultiPoly::zero(ctx).weighted_homogeneous(w221, 4));
    CHECK_FALSE((var(ctx, Var::x) + var(ctx, Var::z1)).weighted_homogeneous(w221, 4));
    CHECK((var(ctx, Var::x).pow(2) * var(ctx, Var::z1)).weighted_homogeneous(w221, 4));
}

TEST_CASE("mod-p reduction") {
    const PAdicContext ctx = PAdicContext::make(3, 2);
    const MultiPoly f = MultiPoly::constant(ctx, 3) * var(ctx, Var::z1) +
                        MultiPoly::constant(ctx, 7) * var(ctx, Var::z2); // 3 z1 - 2 z2
    const MultiPoly fbar = f.reduce_mod_p();
    CHECK(fbar == MultiPoly::variable(PAdicContext::make(3, 1), Var::z2));
    CHECK(f.scaled(PAdicScalar(ctx, 3)).reduce_mod_p().is_zero());
}

TEST_CASE("evaluate requires full bindings") {
    const PAdicContext ctx = PAdicContext::make(5, 2);
    const MultiPoly f = var(ctx, Var::x1) * var(ctx, Var::x2);
    CHECK(f.evaluate({{Var::x1, PAdicScalar(ctx, 3)}, {Var::x2, PAdicScalar(ctx, 4)}}).residue() == 12);
    CHECK_THROWS_AS(f.evaluate({{Var::x1, PAdicScalar(ctx, 3)}}), UnboundVariable);
}

TEST_SUITE_END();
