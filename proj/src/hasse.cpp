#include "eulertop/hasse.hpp"

namespace eulertop {

MultiPoly hasse_invariant(const MultiPoly& f, Var x) {
    const uint32_t p = f.context().prime;
    return f.pow((p - 1) / 2).coefficient_of(x, p - 1);
}

HasseData hasse_expansion(const SystemParams& params) {
    const PAdicContext ctx = params.ctx;
    const uint32_t p = ctx.prime;
    const MultiPoly f = isogeny_quartic(params);
    const MultiPoly f_half = f.pow((p - 1) / 2);
    const MultiPoly a = f_half.coefficient_of(Var::x, p - 1);

    HasseData data{a, {}, MultiPoly::zero(ctx), 1};
    data.remainder_num.reserve(2 * p - 1);
    for (uint32_t i = 0; i <= 2 * p - 2; ++i) {
        MultiPoly num = f_half.coefficient_of(Var::x, i);
        if (i == p - 1) num = num - a; // zero by the definition of the invariant
        data.remainder_num.push_back(std::move(num));
    }
    if (!data.remainder_num[p - 1].is_zero())
        throw std::logic_error("hasse_expansion: slot p-1 of the remainder is nonzero");

    for (uint32_t i = 0; i <= 2 * p - 2; ++i) {
        if (data.remainder_num[i].is_zero()) continue;
        const PAdicScalar step(ctx, i + 1);
        if (!step.is_unit())
            throw NonUnitDenominator("hasse_expansion: antiderivative needs p | i+1 with R_i != 0");
        MultiPoly::Exponents e{};
        e[static_cast<size_t>(Var::x)] = static_cast<uint16_t>(i + 1);
        data.primitive_num = data.primitive_num +
                             MultiPoly::monomial(ctx, e, 1) * data.remainder_num[i].scaled(step.inv());
    }
    return data;
}

uint64_t count_affine(const MultiPoly& f_bar) {
    const PAdicContext& ctx = f_bar.context();
    if (ctx.precision != 1)
        throw Error("count_affine: polynomial must live at precision 1");
    if (ctx.prime > 101)
        throw Error("count_affine: exhaustive counting is supported for p <= 101 only");
    if (!f_bar.uses_only({Var::x}))
        throw Error("count_affine: polynomial must be univariate in x");
    const uint64_t p = ctx.prime;
    uint64_t count = 0;
    for (uint64_t x = 0; x < p; ++x) {
        const PAdicScalar v = f_bar.evaluate({{Var::x, PAdicScalar(ctx, x)}});
        for (uint64_t y = 0; y < p; ++y)
            if (y * y % p == v.residue()) ++count;
    }
    return count;
}

namespace {

// distinct roots in the algebraic closure <=> gcd(f, f') constant, over F_p
bool has_distinct_roots(const MultiPoly& f_bar) {
    const PAdicContext& ctx = f_bar.context();
    const uint64_t p = ctx.prime;
    // dense univariate gcd
    const auto to_dense = [&](const MultiPoly& g) {
        std::vector<uint64_t> c(g.degree_in(Var::x) + 1, 0);
        for (const auto& t : g.terms()) c[t.exp[static_cast<size_t>(Var::x)]] = t.coeff;
        while (c.size() > 1 && c.back() == 0) c.pop_back();
        return c;
    };
    std::vector<uint64_t> a = to_dense(f_bar);
    std::vector<uint64_t> b = to_dense(f_bar.partial(Var::x));
    const auto is_zero_poly = [](const std::vector<uint64_t>& v) {
        return v.size() == 1 && v[0] == 0;
    };
    while (!is_zero_poly(b)) {
        // a mod b
        const uint64_t lead_inv = pow_mod(b.back(), p - 2, p);
        while (a.size() >= b.size() && !is_zero_poly(a)) {
            const uint64_t q = mul_mod(a.back(), lead_inv, p);
            const size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                a[i + shift] = sub_mod(a[i + shift], mul_mod(q, b[i], p), p);
            while (a.size() > 1 && a.back() == 0) a.pop_back();
            if (a.size() < b.size()) break;
        }
        std::swap(a, b);
    }
    return a.size() == 1 && a[0] != 0;
}

} // namespace

PointCountReport point_count_congruences(const MultiPoly& f) {
    if (!f.uses_only({Var::x}))
        throw Error("point_count_congruences: polynomial must be univariate in x");
    const PAdicContext& ctx = f.context();
    const uint32_t p = ctx.prime;
    const uint32_t deg = f.degree_in(Var::x);
    if (deg != 3 && deg != 4)
        throw UnsupportedDegree("point_count_congruences: degree must be 3 or 4");
    const MultiPoly f_bar = f.reduce_mod_p();
    if (f_bar.degree_in(Var::x) != deg)
        throw UnsupportedDegree("point_count_congruences: leading coefficient vanishes mod p");

    PointCountReport r;
    r.prime = p;
    r.degree = deg;
    r.poly.assign(deg + 1, 0);
    for (const auto& t : f.terms()) r.poly[t.exp[static_cast<size_t>(Var::x)]] = t.coeff;
    r.invariant_mod_p = hasse_invariant(f, Var::x).constant_term().residue() % p;
    r.affine_count = count_affine(f_bar);

    uint64_t expected = (p - r.affine_count % p) % p; // -N_p mod p
    if (deg == 4) {
        const uint64_t lead = f_bar.coefficient_of(Var::x, 4).constant_term().residue();
        r.lead_symbol = legendre(lead, p);
        expected = sub_mod(expected, static_cast<uint64_t>((r.lead_symbol + int(p)) % int(p)), p);
    }
    r.affine_delta = sub_mod(r.invariant_mod_p, expected, p);

    r.smooth_model = has_distinct_roots(f_bar);
    if (r.smooth_model) {
        // points at infinity: one for a cubic, 1 + (lead/p) for a quartic
        r.projective_count = r.affine_count + (deg == 3 ? 1 : 1 + r.lead_symbol);
        const uint64_t rhs = sub_mod(1, r.invariant_mod_p, p); // 1 - A mod p
        r.projective_delta = sub_mod(r.projective_count % p, rhs, p);
    }
    return r;
}

bool is_supersingular(const SystemParams& params, uint64_t c1_bar, uint64_t c2_bar) {
    const SystemParams pbar = params.reduce_to(1);
    const PAdicContext ctx = pbar.ctx;
    const std::map<Var, PAdicScalar> at = {{Var::z1, PAdicScalar(ctx, c1_bar)},
                                           {Var::z2, PAdicScalar(ctx, c2_bar)}};
    if (level_discriminant(pbar).evaluate(at).is_zero())
        throw DegenerateFiber("is_supersingular: level discriminant vanishes at c");
    return hasse_invariant(isogeny_quartic(pbar), Var::x).evaluate(at).is_zero();
}

} // namespace eulertop
