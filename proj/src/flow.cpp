#include "eulertop/flow.hpp"

namespace eulertop {

namespace {

MultiPoly power_monomial(PAdicContext ctx, Var v, uint32_t e, uint64_t coeff = 1) {
    MultiPoly::Exponents mono{};
    mono[static_cast<size_t>(v)] = static_cast<uint16_t>(e);
    return MultiPoly::monomial(ctx, mono, coeff);
}

} // namespace

LocalizedElement canonical_delta_x3(const XRingPtr& ring) {
    return canonical_delta_x3(ring, hasse_expansion(ring->params()));
}

LocalizedElement canonical_delta_x3(const XRingPtr& ring, const HasseData& data) {
    const PAdicContext ctx = ring->context();
    const std::map<Var, MultiPoly> at_h = {{Var::z1, ring->energy()},
                                           {Var::z2, ring->casimir()},
                                           {Var::x, MultiPoly::variable(ctx, Var::x3)}};
    MultiPoly numerator = data.primitive_num.substitute(at_h);
    if (!numerator.weighted_homogeneous(
            ExponentWeights{}.set(Var::x1, 1).set(Var::x2, 1).set(Var::x3, 1), 2 * ctx.prime - 1))
        throw std::logic_error("canonical_delta_x3: numerator is not homogeneous of degree 2p-1");
    return {ring, std::move(numerator), DenomExponents{data.denominator_power, 0, 0, 0}};
}

LocalizedElement phi_x3_from_delta(const LocalizedElement& delta_x3) {
    const PAdicContext ctx = delta_x3.context();
    const LocalizedElement x3p =
        LocalizedElement::from_poly(delta_x3.ring(), power_monomial(ctx, Var::x3, ctx.prime));
    return x3p + delta_x3.times_p();
}

std::pair<LocalizedElement, LocalizedElement> solve_phi_squares(const XRingPtr& ring,
                                                                const LocalizedElement& delta_x3) {
    const SystemParams& pr = ring->params();
    const PAdicContext ctx = ring->context();
    const PAdicScalar det = pr.a1 - pr.a2; // phi is the identity on constants
    if (!det.is_unit())
        throw SingularSystem("solve_phi_squares: a1 - a2 is not a unit");
    const PAdicScalar det_inv = det.inv();

    const LocalizedElement phi3 = phi_x3_from_delta(delta_x3);
    const LocalizedElement phi3_sq = phi3 * phi3;
    const LocalizedElement h1_p = LocalizedElement::from_poly(ring, ring->energy().pow(ctx.prime));
    const LocalizedElement h2_p = LocalizedElement::from_poly(ring, ring->casimir().pow(ctx.prime));

    const LocalizedElement rhs1 = h1_p - phi3_sq.scaled(pr.a3);
    const LocalizedElement rhs2 = h2_p - phi3_sq;
    LocalizedElement phi1_sq = (rhs1 - rhs2.scaled(pr.a2)).scaled(det_inv);
    LocalizedElement phi2_sq = (rhs2.scaled(pr.a1) - rhs1).scaled(det_inv);
    return {std::move(phi1_sq), std::move(phi2_sq)};
}

UnitCofactors unit_cofactors(const XRingPtr& ring, const LocalizedElement& phi1_squared,
                             const LocalizedElement& phi2_squared) {
    const PAdicContext ctx = ring->context();
    const uint32_t p = ctx.prime;
    const auto cofactor = [&](const LocalizedElement& phi_sq, Var v) {
        const LocalizedElement target =
            LocalizedElement::from_poly(ring, power_monomial(ctx, v, 2 * p));
        if (!equal_mod(phi_sq, target, 1))
            throw NotCongruent("unit_cofactors: Phi^2 is not x^(2p) mod p");
        const LocalizedElement one = LocalizedElement::from_scalar(ring, PAdicScalar(ctx, 1));
        return (phi_sq.over(DenomExponents{0, 0, v == Var::x1 ? 2 * p : 0,
                                           v == Var::x2 ? 2 * p : 0}) -
                one)
            .divide_exact_by_p();
    };
    return {cofactor(phi1_squared, Var::x1), cofactor(phi2_squared, Var::x2)};
}

namespace {

// Newton iteration for (1 + pG)^(1/2) written on the unit parts: with
// z = 1 + p w the inverse-root update z <- z(3 - u z^2)/2 becomes
//   w <- -(1/2) [G + p(3w^2 + 3Gw) + p^2(3Gw^2 + w^3) + p^3 Gw^3]
// exactly. Quadratic convergence from w = 0.
LocalizedElement principal_root_of_unit(const XRingPtr& ring, const LocalizedElement& g_lifted) {
    const PAdicContext ctx = ring->context();
    const PAdicScalar inv2 = PAdicScalar(ctx, 2).inv();
    const PAdicScalar three(ctx, 3);
    const LocalizedElement one = LocalizedElement::from_scalar(ring, PAdicScalar(ctx, 1));
    const LocalizedElement u = one + g_lifted.times_p();

    LocalizedElement w = g_lifted.scaled(-inv2);
    uint32_t cap = 2;
    while ((uint32_t(1) << (cap - 1)) < ctx.precision) ++cap;
    ++cap;
    for (uint32_t i = 0; i < cap; ++i) {
        const LocalizedElement z = one + w.times_p();
        if (z * z * u == one) return u * z; // sqrt(u) = u * u^(-1/2)
        const LocalizedElement gw = g_lifted * w;
        const LocalizedElement w2 = w * w;
        const LocalizedElement gw2 = g_lifted * w2;
        const LocalizedElement inner = (gw + w2).scaled(three) + (gw2.scaled(three) + w2 * w).times_p() +
                                       (gw2 * w).times_p().times_p();
        w = (g_lifted + inner.times_p()).scaled(-inv2);
    }
    throw std::logic_error("principal_root_of_unit: Newton iteration failed to converge");
}

} // namespace

std::pair<LocalizedElement, LocalizedElement> principal_phi_roots(const XRingPtr& ring,
                                                                  const UnitCofactors& g) {
    const PAdicContext ctx = ring->context();
    const auto root = [&](const LocalizedElement& cof, Var v) {
        // the cofactor lives one precision lower; its canonical lift
        // multiplied by p recovers Phi^2/x^(2p) - 1 exactly
        const LocalizedElement g_lifted = cof.lift_into(ring);
        const LocalizedElement sqrt_u = principal_root_of_unit(ring, g_lifted);
        return LocalizedElement::from_poly(ring, power_monomial(ctx, v, ctx.prime)) * sqrt_u;
    };
    return {root(g.g1, Var::x1), root(g.g2, Var::x2)};
}

FlowDescriptor make_flow(const XRingPtr& ring, std::optional<LocalizedElement> delta_x3,
                         bool extract_roots) {
    LocalizedElement delta = delta_x3 ? std::move(*delta_x3) : canonical_delta_x3(ring);
    LocalizedElement phi3 = phi_x3_from_delta(delta);
    auto [p1, p2] = solve_phi_squares(ring, delta);
    FlowDescriptor flow{ring, std::move(delta), std::move(phi3), std::move(p1), std::move(p2),
                        std::nullopt, std::nullopt};
    if (extract_roots) return with_roots(std::move(flow));
    return flow;
}

FlowDescriptor with_roots(FlowDescriptor flow) {
    const UnitCofactors g = unit_cofactors(flow.ring, flow.phi1_squared, flow.phi2_squared);
    auto [r1, r2] = principal_phi_roots(flow.ring, g);
    if (!(r1 * r1 == flow.phi1_squared) || !(r2 * r2 == flow.phi2_squared))
        throw std::logic_error("with_roots: extracted roots do not square back");
    flow.phi1 = std::move(r1);
    flow.phi2 = std::move(r2);
    return flow;
}

LocalizedElement flow_apply_phi(const FlowDescriptor& flow, const MultiPoly& f) {
    if (!flow.has_roots())
        throw RootsUnavailable("flow_apply_phi: roots have not been extracted");
    if (!f.uses_only({Var::x1, Var::x2, Var::x3}))
        throw Error("flow_apply_phi: input must be a polynomial in x1, x2, x3");
    const XRingPtr& ring = flow.ring;
    const PAdicContext ctx = flow.context();
    std::array<std::vector<LocalizedElement>, 3> powers;
    const LocalizedElement one = LocalizedElement::from_scalar(ring, PAdicScalar(ctx, 1));
    for (auto& cache : powers) cache.push_back(one);
    powers[0].push_back(*flow.phi1);
    powers[1].push_back(*flow.phi2);
    powers[2].push_back(flow.phi_x3);
    const auto power_of = [&](size_t i, uint16_t e) -> const LocalizedElement& {
        auto& cache = powers[i];
        while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
        return cache[e];
    };
    LocalizedElement out = LocalizedElement::zero(ring);
    for (const auto& t : f.terms()) {
        LocalizedElement piece = LocalizedElement::from_scalar(ring, PAdicScalar(ctx, t.coeff));
        for (size_t i = 0; i < 3; ++i) {
            const uint16_t e = t.exp[i];
            if (e) piece = piece * power_of(i, e);
        }
        out = out + piece;
    }
    return out;
}

LocalizedElement flow_delta(const FlowDescriptor& flow, const MultiPoly& f) {
    const LocalizedElement fp = LocalizedElement::from_poly(flow.ring, f.pow(flow.context().prime));
    return (flow_apply_phi(flow, f) - fp).divide_exact_by_p();
}

PrimeIntegralOutcome prime_integral_differences(const FlowDescriptor& flow) {
    const SystemParams& pr = flow.ring->params();
    const uint32_t p = flow.context().prime;
    const LocalizedElement phi3_sq = flow.phi_x3 * flow.phi_x3;
    const LocalizedElement lhs1 = flow.phi1_squared.scaled(pr.a1) + flow.phi2_squared.scaled(pr.a2) +
                                  phi3_sq.scaled(pr.a3);
    const LocalizedElement lhs2 = flow.phi1_squared + flow.phi2_squared + phi3_sq;
    const LocalizedElement rhs1 = LocalizedElement::from_poly(flow.ring, flow.ring->energy().pow(p));
    const LocalizedElement rhs2 = LocalizedElement::from_poly(flow.ring, flow.ring->casimir().pow(p));
    PrimeIntegralOutcome out{false, lhs1 - rhs1, lhs2 - rhs2};
    out.holds = out.difference_h1.is_zero() && out.difference_h2.is_zero();
    return out;
}

bool verify_prime_integrals(const FlowDescriptor& flow) {
    return prime_integral_differences(flow).holds;
}

bool phi_mod_p_congruences(const FlowDescriptor& flow) {
    const PAdicContext ctx = flow.context();
    const uint32_t p = ctx.prime;
    const auto target = [&](Var v, uint32_t e) {
        return LocalizedElement::from_poly(flow.ring, power_monomial(ctx, v, e));
    };
    return equal_mod(flow.phi1_squared, target(Var::x1, 2 * p), 1) &&
           equal_mod(flow.phi2_squared, target(Var::x2, 2 * p), 1) &&
           equal_mod(flow.phi_x3, target(Var::x3, p), 1);
}

std::vector<LevelSpec> sample_admissible_levels(const SystemParams& params, size_t count) {
    const SystemParams pbar = params.reduce_to(1);
    const PAdicContext ctx1 = pbar.ctx;
    const MultiPoly n_bar = level_discriminant(pbar);
    const MultiPoly a_bar = hasse_invariant(isogeny_quartic(pbar), Var::x);
    std::vector<LevelSpec> out;
    for (uint64_t c1 = 0; c1 < ctx1.prime; ++c1) {
        for (uint64_t c2 = 0; c2 < ctx1.prime; ++c2) {
            const std::map<Var, PAdicScalar> at = {{Var::z1, PAdicScalar(ctx1, c1)},
                                                   {Var::z2, PAdicScalar(ctx1, c2)}};
            if (n_bar.evaluate(at).is_zero() || a_bar.evaluate(at).is_zero()) continue;
            if (out.size() < count)
                out.push_back(LevelSpec::make(params, teichmuller(params.ctx, c1),
                                              teichmuller(params.ctx, c2)));
            else
                return out;
        }
    }
    if (out.empty())
        throw NoAdmissibleLevel("no level value in F_p^2 keeps N(c) A(c) invertible");
    return out;
}

namespace {

// lhs - rhs of the cleared linearization identity carried at precision k.
LevelSetElement linearization_difference(const FlowDescriptor& flow, const LevelSpec& spec,
                                         uint32_t k) {
    const SystemParams params = flow.ring->params().reduce_to(k);
    const PAdicContext ctx = params.ctx;
    const uint32_t p = ctx.prime;
    const LevelSpec spec_k = spec.reduce_to(k);
    const LevelFramePtr frame = LevelFrame::make(params, spec_k);

    const LocalizedElement delta = flow.delta_x3.reduce_to_precision(k);
    const DenomExponents& den = delta.denominator();

    // scalar part of the restricted denominator, via the z-polynomials
    const std::map<Var, PAdicScalar> at_c = {{Var::z1, spec_k.c1}, {Var::z2, spec_k.c2}};
    const PAdicScalar a_c = hasse_invariant(isogeny_quartic(params), Var::x).evaluate(at_c);
    const PAdicScalar n_c = level_discriminant(params).evaluate(at_c);
    const PAdicScalar scalar_den = a_c.pow(den.hasse) * n_c.pow(den.disc);
    if (!scalar_den.is_unit())
        throw DegenerateFiber("verify_linearization: restricted denominator is not a unit");

    const LevelSetElement u = level_reduce(frame, delta.numerator()).scaled(scalar_den.inv());
    const LevelSetElement du = form_coefficient_of_differential(u);

    const MultiPoly x1 = MultiPoly::variable(ctx, Var::x1);
    const MultiPoly x2 = MultiPoly::variable(ctx, Var::x2);
    const PAdicScalar lead = params.a1 - params.a2;
    // x3^{p-1} (a1-a2) x1 x2, the derivative of the x3^p part of phi(x3)
    const LevelSetElement base =
        level_reduce(frame, power_monomial(ctx, Var::x3, p - 1, 1) * (lead * (x1 * x2)));
    // rewriting route: (a1-a2) x1^p x2^p
    const LevelSetElement rhs_core =
        level_reduce(frame, (lead * (power_monomial(ctx, Var::x1, p) *
                                     power_monomial(ctx, Var::x2, p))));

    if (den.x1 == 0 && den.x2 == 0)
        return (base + du).scaled(a_c) - rhs_core;

    // x-monomial denominators: clear by T^2 through the quotient rule
    MultiPoly::Exponents mono{};
    mono[static_cast<size_t>(Var::x1)] = static_cast<uint16_t>(den.x1);
    mono[static_cast<size_t>(Var::x2)] = static_cast<uint16_t>(den.x2);
    const LevelSetElement t_nf = level_reduce(frame, MultiPoly::monomial(ctx, mono, 1));
    const LevelSetElement dt = form_coefficient_of_differential(t_nf);
    const LevelSetElement lhs = (t_nf * t_nf * base + t_nf * du - u * dt).scaled(a_c);
    return lhs - t_nf * t_nf * rhs_core;
}

} // namespace

LinearizationOutcome verify_linearization(const FlowDescriptor& flow, const LevelSpec& spec) {
    LinearizationOutcome out;
    LevelSetElement diff = linearization_difference(flow, spec, 1);
    out.holds = diff.is_zero();
    out.cleared_difference = std::move(diff);
    if (flow.context().precision >= 2)
        out.defect_mod_p_squared = linearization_difference(flow, spec, 2);
    return out;
}

} // namespace eulertop
