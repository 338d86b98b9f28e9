#include "eulertop/geometry.hpp"

#include <algorithm>

#include "eulertop/hasse.hpp"

namespace eulertop {

SystemParams SystemParams::make(PAdicContext ctx, const PAdicScalar& a1,
                                const PAdicScalar& a2, const PAdicScalar& a3) {
    require_same_context(ctx, a1.context());
    require_same_context(ctx, a2.context());
    require_same_context(ctx, a3.context());
    const PAdicScalar prod = (a1 - a2) * (a2 - a3) * (a3 - a1);
    if (!prod.is_unit())
        throw Error("SystemParams: (a1-a2)(a2-a3)(a3-a1) must be a unit");
    return SystemParams{ctx, a1, a2, a3};
}

SystemParams SystemParams::make(PAdicContext ctx, uint64_t a1, uint64_t a2, uint64_t a3) {
    return make(ctx, PAdicScalar(ctx, a1), PAdicScalar(ctx, a2), PAdicScalar(ctx, a3));
}

SystemParams SystemParams::reduce_to(uint32_t prec) const {
    return SystemParams{ctx.lowered(prec), a1.reduce_to(prec), a2.reduce_to(prec), a3.reduce_to(prec)};
}

namespace {

MultiPoly square_of(PAdicContext ctx, Var v) {
    MultiPoly::Exponents e{};
    e[static_cast<size_t>(v)] = 2;
    return MultiPoly::monomial(ctx, e, 1);
}

} // namespace

MultiPoly energy_form(const SystemParams& p) {
    const PAdicContext ctx = p.ctx;
    return p.a1 * square_of(ctx, Var::x1) + p.a2 * square_of(ctx, Var::x2) +
           p.a3 * square_of(ctx, Var::x3);
}

MultiPoly casimir_form(const SystemParams& p) {
    const PAdicContext ctx = p.ctx;
    return square_of(ctx, Var::x1) + square_of(ctx, Var::x2) + square_of(ctx, Var::x3);
}

MultiPoly level_discriminant(const SystemParams& p) {
    const PAdicContext ctx = p.ctx;
    const MultiPoly z1 = MultiPoly::variable(ctx, Var::z1);
    const MultiPoly z2 = MultiPoly::variable(ctx, Var::z2);
    return (z1 - p.a1 * z2) * (z1 - p.a2 * z2) * (z1 - p.a3 * z2);
}

MultiPoly isogeny_quartic(const SystemParams& p) {
    const PAdicContext ctx = p.ctx;
    const MultiPoly xsq = square_of(ctx, Var::x);
    const MultiPoly z1 = MultiPoly::variable(ctx, Var::z1);
    const MultiPoly z2 = MultiPoly::variable(ctx, Var::z2);
    const MultiPoly lhs = (p.a2 - p.a3) * xsq + z1 - p.a2 * z2;
    const MultiPoly rhs = (p.a3 - p.a1) * xsq - z1 + p.a1 * z2;
    return lhs * rhs;
}

MultiPoly localization_poly(const SystemParams& p) {
    const PAdicContext ctx = p.ctx;
    const MultiPoly h1 = energy_form(p);
    const MultiPoly h2 = casimir_form(p);
    const std::map<Var, MultiPoly> at_h = {{Var::z1, h1}, {Var::z2, h2}};
    const MultiPoly n_h = level_discriminant(p).substitute(at_h);
    const MultiPoly a_h = hasse_invariant(isogeny_quartic(p), Var::x).substitute(at_h);
    MultiPoly::Exponents e{};
    e[static_cast<size_t>(Var::x1)] = 1;
    e[static_cast<size_t>(Var::x2)] = 1;
    return MultiPoly::monomial(ctx, e, 1) * n_h * a_h;
}

LevelSpec LevelSpec::make(const SystemParams& params, const PAdicScalar& c1,
                          const PAdicScalar& c2) {
    require_same_context(params.ctx, c1.context());
    require_same_context(params.ctx, c2.context());
    const uint32_t p = params.ctx.prime;
    if (!(c1.pow(p) == c1) || !(c2.pow(p) == c2))
        throw Error("LevelSpec: level values must be Teichmuller lifts (c^p = c)");
    const std::map<Var, PAdicScalar> at_c = {{Var::z1, c1}, {Var::z2, c2}};
    const PAdicScalar n_c = level_discriminant(params).evaluate(at_c);
    const PAdicScalar a_c = hasse_invariant(isogeny_quartic(params), Var::x).evaluate(at_c);
    if (!(n_c * a_c).is_unit())
        throw DegenerateFiber("LevelSpec: N(c) * A(c) is not a unit");
    return LevelSpec{c1, c2};
}

LevelFramePtr LevelFrame::make(const SystemParams& params, const LevelSpec& spec) {
    const PAdicContext ctx = params.ctx;
    require_same_context(ctx, spec.c1.context());
    const PAdicScalar inv_d = (params.a1 - params.a2).inv();
    const MultiPoly x3sq = MultiPoly::variable(ctx, Var::x3).pow(2);
    const MultiPoly r1 =
        inv_d * ((params.a2 - params.a3) * x3sq + MultiPoly::constant(spec.c1 - params.a2 * spec.c2));
    const MultiPoly r2 =
        inv_d * ((params.a3 - params.a1) * x3sq + MultiPoly::constant(params.a1 * spec.c2 - spec.c1));
    return std::make_shared<const LevelFrame>(params, spec, r1, r2);
}

LevelFramePtr LevelFrame::reduce_to(uint32_t prec) const {
    return std::make_shared<const LevelFrame>(params_.reduce_to(prec), spec_.reduce_to(prec),
                                              r1_.reduce_to_precision(prec), r2_.reduce_to_precision(prec));
}

LevelSetElement::LevelSetElement(LevelFramePtr frame, MultiPoly b0, MultiPoly b1, MultiPoly b2,
                                 MultiPoly b12)
    : frame_(std::move(frame)), b0_(std::move(b0)), b1_(std::move(b1)), b2_(std::move(b2)),
      b12_(std::move(b12)) {
    for (const MultiPoly* f : {&b0_, &b1_, &b2_, &b12_}) {
        require_same_context(frame_->context(), f->context());
        if (!f->uses_only({Var::x3}))
            throw Error("LevelSetElement: basis coefficients must be univariate in x3");
    }
}

LevelSetElement LevelSetElement::zero(LevelFramePtr frame) {
    const MultiPoly z = MultiPoly::zero(frame->context());
    return LevelSetElement(std::move(frame), z, z, z, z);
}

LevelSetElement LevelSetElement::from_univariate(LevelFramePtr frame, const MultiPoly& b0) {
    const MultiPoly z = MultiPoly::zero(frame->context());
    return LevelSetElement(std::move(frame), b0, z, z, z);
}

namespace {

void require_same_frame(const LevelSetElement& a, const LevelSetElement& b) {
    if (!(a.frame()->params() == b.frame()->params() && a.frame()->spec() == b.frame()->spec()))
        throw ParamsMismatch("level-set elements live on different level sets");
}

} // namespace

LevelSetElement LevelSetElement::scaled(const PAdicScalar& c) const {
    return {frame_, b0_.scaled(c), b1_.scaled(c), b2_.scaled(c), b12_.scaled(c)};
}

LevelSetElement operator+(const LevelSetElement& a, const LevelSetElement& b) {
    require_same_frame(a, b);
    return {a.frame_, a.b0_ + b.b0_, a.b1_ + b.b1_, a.b2_ + b.b2_, a.b12_ + b.b12_};
}

LevelSetElement operator-(const LevelSetElement& a, const LevelSetElement& b) {
    require_same_frame(a, b);
    return {a.frame_, a.b0_ - b.b0_, a.b1_ - b.b1_, a.b2_ - b.b2_, a.b12_ - b.b12_};
}

LevelSetElement operator*(const LevelSetElement& a, const LevelSetElement& b) {
    require_same_frame(a, b);
    const MultiPoly& r1 = a.frame_->x1sq_image();
    const MultiPoly& r2 = a.frame_->x2sq_image();
    const MultiPoly r12 = r1 * r2;
    MultiPoly d0 = a.b0_ * b.b0_ + r1 * (a.b1_ * b.b1_) + r2 * (a.b2_ * b.b2_) + r12 * (a.b12_ * b.b12_);
    MultiPoly d1 = a.b0_ * b.b1_ + a.b1_ * b.b0_ + r2 * (a.b2_ * b.b12_ + a.b12_ * b.b2_);
    MultiPoly d2 = a.b0_ * b.b2_ + a.b2_ * b.b0_ + r1 * (a.b1_ * b.b12_ + a.b12_ * b.b1_);
    MultiPoly d12 = a.b0_ * b.b12_ + a.b12_ * b.b0_ + a.b1_ * b.b2_ + a.b2_ * b.b1_;
    return {a.frame_, std::move(d0), std::move(d1), std::move(d2), std::move(d12)};
}

bool operator==(const LevelSetElement& a, const LevelSetElement& b) {
    require_same_frame(a, b);
    return a.b0_ == b.b0_ && a.b1_ == b.b1_ && a.b2_ == b.b2_ && a.b12_ == b.b12_;
}

LevelSetElement level_reduce(const LevelFramePtr& frame, const MultiPoly& f) {
    if (!f.uses_only({Var::x1, Var::x2, Var::x3}))
        throw Error("level_reduce: input must be a polynomial in x1, x2, x3");
    const PAdicContext ctx = frame->context();
    // power caches for the two rewriting images
    std::vector<MultiPoly> p1{MultiPoly::constant(ctx, 1), frame->x1sq_image()};
    std::vector<MultiPoly> p2{MultiPoly::constant(ctx, 1), frame->x2sq_image()};
    const auto power = [](std::vector<MultiPoly>& cache, uint32_t e) -> const MultiPoly& {
        while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
        return cache[e];
    };
    MultiPoly b[2][2] = {{MultiPoly::zero(ctx), MultiPoly::zero(ctx)},
                         {MultiPoly::zero(ctx), MultiPoly::zero(ctx)}};
    for (const auto& t : f.terms()) {
        const uint16_t e1 = t.exp[static_cast<size_t>(Var::x1)];
        const uint16_t e2 = t.exp[static_cast<size_t>(Var::x2)];
        const uint16_t e3 = t.exp[static_cast<size_t>(Var::x3)];
        MultiPoly::Exponents rest{};
        rest[static_cast<size_t>(Var::x3)] = e3;
        const MultiPoly piece = MultiPoly::monomial(ctx, rest, t.coeff) *
                                power(p1, e1 / 2) * power(p2, e2 / 2);
        b[e1 % 2][e2 % 2] = b[e1 % 2][e2 % 2] + piece;
    }
    return {frame, std::move(b[0][0]), std::move(b[1][0]), std::move(b[0][1]), std::move(b[1][1])};
}

LevelSetElement cleared_form_coefficient(const LevelFramePtr& frame, const MultiPoly& p_dx1,
                                         const MultiPoly& q_dx2, const MultiPoly& r_dx3) {
    const SystemParams& pr = frame->params();
    const PAdicContext ctx = frame->context();
    const MultiPoly x1 = MultiPoly::variable(ctx, Var::x1);
    const MultiPoly x2 = MultiPoly::variable(ctx, Var::x2);
    const MultiPoly x3 = MultiPoly::variable(ctx, Var::x3);
    const MultiPoly conv = p_dx1 * ((pr.a2 - pr.a3) * (x2 * x3)) +
                           q_dx2 * ((pr.a3 - pr.a1) * (x3 * x1)) +
                           r_dx3 * ((pr.a1 - pr.a2) * (x1 * x2));
    return level_reduce(frame, conv);
}

LevelSetElement form_coefficient_of_differential(const LevelSetElement& w) {
    const LevelFramePtr& frame = w.frame();
    const PAdicContext ctx = frame->context();
    const MultiPoly x1 = MultiPoly::variable(ctx, Var::x1);
    const MultiPoly x2 = MultiPoly::variable(ctx, Var::x2);
    // dw = P dx1 + Q dx2 + R dx3 with
    const MultiPoly p = w.b1() + w.b12() * x2;
    const MultiPoly q = w.b2() + w.b12() * x1;
    const MultiPoly r = w.b0().partial(Var::x3) + w.b1().partial(Var::x3) * x1 +
                        w.b2().partial(Var::x3) * x2 + w.b12().partial(Var::x3) * (x1 * x2);
    return cleared_form_coefficient(frame, p, q, r);
}

bool canonical_form_identity_check(const LevelFramePtr& frame) {
    const SystemParams& pr = frame->params();
    const PAdicContext ctx = frame->context();
    const MultiPoly x1 = MultiPoly::variable(ctx, Var::x1);
    const MultiPoly x2 = MultiPoly::variable(ctx, Var::x2);
    const MultiPoly x3 = MultiPoly::variable(ctx, Var::x3);
    const MultiPoly zero = MultiPoly::zero(ctx);
    const MultiPoly w1 = (pr.a2 - pr.a3) * (x2 * x3);
    const MultiPoly w2 = (pr.a3 - pr.a1) * (x3 * x1);
    const MultiPoly w3 = (pr.a1 - pr.a2) * (x1 * x2);
    // pairwise cross-multiplied chart identities for the canonical form
    const bool charts = cleared_form_coefficient(frame, w2, -w1, zero).is_zero() &&
                        cleared_form_coefficient(frame, zero, w3, -w2).is_zero() &&
                        cleared_form_coefficient(frame, -w3, zero, w1).is_zero();
    // the defining relations dH1 = dH2 = 0 themselves (halved)
    const bool relations =
        cleared_form_coefficient(frame, pr.a1 * x1, pr.a2 * x2, pr.a3 * x3).is_zero() &&
        cleared_form_coefficient(frame, x1, x2, x3).is_zero();
    return charts && relations;
}

MultiPoly quartic_on_level(const SystemParams& params, const LevelSpec& spec) {
    const std::map<Var, MultiPoly> at = {{Var::z1, MultiPoly::constant(spec.c1)},
                                         {Var::z2, MultiPoly::constant(spec.c2)},
                                         {Var::x, MultiPoly::variable(params.ctx, Var::x3)}};
    return isogeny_quartic(params).substitute(at);
}

bool squared_y_matches_quartic(const LevelFramePtr& frame, const MultiPoly& y_image) {
    const MultiPoly f_c = quartic_on_level(frame->params(), frame->spec());
    return level_reduce(frame, y_image * y_image) ==
           LevelSetElement::from_univariate(frame, f_c);
}

bool pullback_matches_canonical_form(const LevelFramePtr& frame, const MultiPoly& y_image) {
    const SystemParams& pr = frame->params();
    const PAdicContext ctx = frame->context();
    const MultiPoly x2 = MultiPoly::variable(ctx, Var::x2);
    const MultiPoly x3 = MultiPoly::variable(ctx, Var::x3);
    const MultiPoly zero = MultiPoly::zero(ctx);
    // pullback of dx is dx3 and of y is y_image; dx = y * omega becomes,
    // with omega read off the dx1 chart and cleared by (a2-a3) x2 x3:
    //   (a2-a3) x2 x3 dx3 = y_image dx1
    const MultiPoly w1 = (pr.a2 - pr.a3) * (x2 * x3);
    const LevelSetElement lhs = cleared_form_coefficient(frame, zero, zero, w1);
    const LevelSetElement rhs = cleared_form_coefficient(frame, y_image, zero, zero);
    return lhs == rhs;
}

bool isogeny_identity_check(const LevelFramePtr& frame) {
    const SystemParams& pr = frame->params();
    const PAdicContext ctx = frame->context();
    const MultiPoly y = (pr.a1 - pr.a2) *
                        (MultiPoly::variable(ctx, Var::x1) * MultiPoly::variable(ctx, Var::x2));
    return squared_y_matches_quartic(frame, y) && pullback_matches_canonical_form(frame, y);
}

} // namespace eulertop
