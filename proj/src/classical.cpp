#include "eulertop/classical.hpp"

#include <cmath>

namespace eulertop {

MultiPoly classical_delta(const SystemParams& params, const MultiPoly& f) {
    if (!f.uses_only({Var::x1, Var::x2, Var::x3}))
        throw Error("classical_delta: input must be a polynomial in x1, x2, x3");
    const PAdicContext ctx = params.ctx;
    const MultiPoly x1 = MultiPoly::variable(ctx, Var::x1);
    const MultiPoly x2 = MultiPoly::variable(ctx, Var::x2);
    const MultiPoly x3 = MultiPoly::variable(ctx, Var::x3);
    return f.partial(Var::x1) * ((params.a2 - params.a3) * (x2 * x3)) +
           f.partial(Var::x2) * ((params.a3 - params.a1) * (x3 * x1)) +
           f.partial(Var::x3) * ((params.a1 - params.a2) * (x1 * x2));
}

LocalizedElement classical_delta(const LocalizedElement& f) {
    const XRingPtr& ring = f.ring();
    const SystemParams& params = ring->params();
    const MultiPoly den = ring->denominator_poly(f.denominator());
    const MultiPoly num_image = classical_delta(params, f.numerator()) * den -
                                f.numerator() * classical_delta(params, den);
    return {ring, num_image, f.denominator().plus(f.denominator())};
}

bool duality_check(const LevelFramePtr& frame) {
    const SystemParams& pr = frame->params();
    const PAdicContext ctx = frame->context();
    const MultiPoly x1 = MultiPoly::variable(ctx, Var::x1);
    const MultiPoly x2 = MultiPoly::variable(ctx, Var::x2);
    const MultiPoly x3 = MultiPoly::variable(ctx, Var::x3);
    // pairing against each chart expression of the canonical form:
    // delta(x_i) must reduce to the chart denominator (a_j - a_k) x_j x_k
    const struct {
        MultiPoly generator_image;
        MultiPoly chart_denominator;
    } charts[3] = {
        {classical_delta(pr, x1), (pr.a2 - pr.a3) * (x2 * x3)},
        {classical_delta(pr, x2), (pr.a3 - pr.a1) * (x3 * x1)},
        {classical_delta(pr, x3), (pr.a1 - pr.a2) * (x1 * x2)},
    };
    for (const auto& c : charts)
        if (!(level_reduce(frame, c.generator_image) == level_reduce(frame, c.chart_denominator)))
            return false;
    return true;
}

bool lie_identity_check(const LevelFramePtr& frame, const MultiPoly& k_bar) {
    const LevelSetElement lhs = form_coefficient_of_differential(level_reduce(frame, k_bar));
    const LevelSetElement rhs = level_reduce(frame, classical_delta(frame->params(), k_bar));
    return lhs == rhs;
}

bool is_prime_integral(const SystemParams& params, const MultiPoly& k_bar) {
    return classical_delta(params, k_bar).is_zero();
}

bool is_prime_integral(const LocalizedElement& k_bar) {
    const SystemParams& params = k_bar.ring()->params();
    const MultiPoly den = k_bar.ring()->denominator_poly(k_bar.denominator());
    const MultiPoly cleared = classical_delta(params, k_bar.numerator()) * den -
                              k_bar.numerator() * classical_delta(params, den);
    return cleared.is_zero();
}

FlowDescriptor torsor_shift(const FlowDescriptor& flow, const LocalizedElement& k_bar) {
    if (k_bar.context().precision != 1)
        throw Error("torsor_shift: the shift must be given mod p");
    if (!(k_bar.ring()->params() == flow.ring->params().reduce_to(1)))
        throw ParamsMismatch("torsor_shift: shift and flow parameters differ");
    if (!is_prime_integral(k_bar))
        throw NotPrimeIntegral("torsor_shift: candidate is not killed by the classical flow");
    // coefficient-wise lift with residues in [0, p)
    const LocalizedElement lift{flow.ring, k_bar.numerator().lift_to_precision(flow.context().precision),
                                k_bar.denominator()};
    return make_flow(flow.ring, flow.delta_x3 + lift, false);
}

FlowDifference flow_difference(const FlowDescriptor& a, const FlowDescriptor& b,
                               const std::vector<LevelSpec>& specs) {
    if (!(a.ring->params() == b.ring->params()))
        throw ParamsMismatch("flow_difference: flows live over different parameters");
    const LocalizedElement k_bar = (a.delta_x3 - b.delta_x3).reduce_mod_p();
    FlowDifference out{k_bar, is_prime_integral(k_bar), {}};
    const SystemParams pbar = a.ring->params().reduce_to(1);
    for (const LevelSpec& spec : specs) {
        const LevelFramePtr frame = LevelFrame::make(pbar, spec.reduce_to(1));
        // restrict: scalar denominators become units, x-monomials go through
        // the quotient rule d(v/T) = (T dv - v dT)/T^2, cleared by T^2
        const std::map<Var, PAdicScalar> at_c = {{Var::z1, spec.reduce_to(1).c1},
                                                 {Var::z2, spec.reduce_to(1).c2}};
        const PAdicScalar a_c = hasse_invariant(isogeny_quartic(pbar), Var::x).evaluate(at_c);
        const PAdicScalar n_c = level_discriminant(pbar).evaluate(at_c);
        const DenomExponents& den = k_bar.denominator();
        const PAdicScalar scalar_den = a_c.pow(den.hasse) * n_c.pow(den.disc);
        if (!scalar_den.is_unit())
            throw DegenerateFiber("flow_difference: restricted denominator is not a unit");
        const LevelSetElement v = level_reduce(frame, k_bar.numerator()).scaled(scalar_den.inv());
        const LevelSetElement dv = form_coefficient_of_differential(v);
        if (den.x1 == 0 && den.x2 == 0) {
            out.differential_vanishes.push_back(dv.is_zero());
        } else {
            MultiPoly::Exponents mono{};
            mono[static_cast<size_t>(Var::x1)] = static_cast<uint16_t>(den.x1);
            mono[static_cast<size_t>(Var::x2)] = static_cast<uint16_t>(den.x2);
            const LevelSetElement t_nf = level_reduce(frame, MultiPoly::monomial(pbar.ctx, mono, 1));
            const LevelSetElement dt = form_coefficient_of_differential(t_nf);
            out.differential_vanishes.push_back((t_nf * dv - v * dt).is_zero());
        }
    }
    return out;
}

namespace {

std::array<double, 3> euler_rhs(const std::array<double, 3>& a, const std::array<double, 3>& x) {
    return {(a[1] - a[2]) * x[1] * x[2], (a[2] - a[0]) * x[2] * x[0], (a[0] - a[1]) * x[0] * x[1]};
}

std::array<double, 3> axpy(const std::array<double, 3>& x, double h, const std::array<double, 3>& d) {
    return {x[0] + h * d[0], x[1] + h * d[1], x[2] + h * d[2]};
}

} // namespace

DemoResult integrate_demo(const DemoConfig& cfg) {
    if (cfg.dt <= 0) throw Error("integrate_demo: dt must be positive");
    if (cfg.steps < 0) throw Error("integrate_demo: steps must be nonnegative");
    const auto h1 = [&](const std::array<double, 3>& x) {
        return cfg.a[0] * x[0] * x[0] + cfg.a[1] * x[1] * x[1] + cfg.a[2] * x[2] * x[2];
    };
    const auto h2 = [&](const std::array<double, 3>& x) {
        return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    };
    DemoResult out;
    std::array<double, 3> x = cfg.x0;
    const double h1_0 = h1(x), h2_0 = h2(x);
    const long thin = cfg.sample_every > 0 ? cfg.sample_every : 1;
    const auto record = [&](long step) {
        const double t = step * cfg.dt;
        out.rows.push_back({t, x[0], x[1], x[2], h1(x), h2(x)});
        out.max_drift_h1 = std::max(out.max_drift_h1, std::fabs(h1(x) - h1_0));
        out.max_drift_h2 = std::max(out.max_drift_h2, std::fabs(h2(x) - h2_0));
    };
    record(0);
    for (long step = 1; step <= cfg.steps; ++step) {
        const auto k1 = euler_rhs(cfg.a, x);
        const auto k2 = euler_rhs(cfg.a, axpy(x, cfg.dt / 2, k1));
        const auto k3 = euler_rhs(cfg.a, axpy(x, cfg.dt / 2, k2));
        const auto k4 = euler_rhs(cfg.a, axpy(x, cfg.dt, k3));
        for (int i = 0; i < 3; ++i)
            x[i] += cfg.dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        if (step % thin == 0 || step == cfg.steps) record(step);
    }
    out.final_state = x;
    return out;
}

} // namespace eulertop
