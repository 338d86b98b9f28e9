#include "eulertop/localized.hpp"

#include <algorithm>

#include "eulertop/hasse.hpp"

namespace eulertop {

DenomExponents DenomExponents::max_with(const DenomExponents& o) const {
    return {std::max(hasse, o.hasse), std::max(disc, o.disc), std::max(x1, o.x1), std::max(x2, o.x2)};
}

DenomExponents DenomExponents::minus(const DenomExponents& o) const {
    if (o.hasse > hasse || o.disc > disc || o.x1 > x1 || o.x2 > x2)
        throw std::logic_error("DenomExponents::minus would underflow");
    return {hasse - o.hasse, disc - o.disc, x1 - o.x1, x2 - o.x2};
}

DenomExponents DenomExponents::plus(const DenomExponents& o) const {
    return {hasse + o.hasse, disc + o.disc, x1 + o.x1, x2 + o.x2};
}

XRingPtr XRingData::make(const SystemParams& params) {
    const MultiPoly h1 = energy_form(params);
    const MultiPoly h2 = casimir_form(params);
    const std::map<Var, MultiPoly> at_h = {{Var::z1, h1}, {Var::z2, h2}};
    MultiPoly hasse_h = hasse_invariant(isogeny_quartic(params), Var::x).substitute(at_h);
    MultiPoly disc_h = level_discriminant(params).substitute(at_h);
    return std::make_shared<const XRingData>(params, h1, h2, std::move(hasse_h), std::move(disc_h));
}

MultiPoly XRingData::denominator_poly(const DenomExponents& e) const {
    MultiPoly::Exponents mono{};
    mono[static_cast<size_t>(Var::x1)] = static_cast<uint16_t>(e.x1);
    mono[static_cast<size_t>(Var::x2)] = static_cast<uint16_t>(e.x2);
    MultiPoly out = MultiPoly::monomial(context(), mono, 1);
    if (e.hasse) out = out * hasse_h_.pow(e.hasse);
    if (e.disc) out = out * disc_h_.pow(e.disc);
    return out;
}

XRingPtr XRingData::reduce_to(uint32_t prec) const {
    return std::make_shared<const XRingData>(params_.reduce_to(prec), h1_.reduce_to_precision(prec),
                                             h2_.reduce_to_precision(prec),
                                             hasse_h_.reduce_to_precision(prec),
                                             disc_h_.reduce_to_precision(prec));
}

LocalizedElement::LocalizedElement(XRingPtr ring, MultiPoly numerator, DenomExponents den)
    : ring_(std::move(ring)), num_(std::move(numerator)), den_(den) {
    require_same_context(ring_->context(), num_.context());
    if (!num_.uses_only({Var::x1, Var::x2, Var::x3}))
        throw Error("LocalizedElement: numerator must be a polynomial in x1, x2, x3");
    normalize();
}

void LocalizedElement::normalize() {
    if (num_.is_zero()) {
        den_ = {};
        return;
    }
    // cancel shared monomial content in x1, x2
    uint32_t m1 = UINT32_MAX, m2 = UINT32_MAX;
    for (const auto& t : num_.terms()) {
        m1 = std::min<uint32_t>(m1, t.exp[static_cast<size_t>(Var::x1)]);
        m2 = std::min<uint32_t>(m2, t.exp[static_cast<size_t>(Var::x2)]);
    }
    const uint32_t c1 = std::min(m1, den_.x1);
    const uint32_t c2 = std::min(m2, den_.x2);
    if (c1 == 0 && c2 == 0) return;
    std::vector<MultiPoly::Term> shifted;
    shifted.reserve(num_.terms().size());
    for (auto t : num_.terms()) {
        t.exp[static_cast<size_t>(Var::x1)] -= static_cast<uint16_t>(c1);
        t.exp[static_cast<size_t>(Var::x2)] -= static_cast<uint16_t>(c2);
        shifted.push_back(t);
    }
    num_ = MultiPoly::from_terms(num_.context(), std::move(shifted));
    den_.x1 -= c1;
    den_.x2 -= c2;
}

void require_same_ring(const LocalizedElement& a, const LocalizedElement& b) {
    if (!(a.ring()->params() == b.ring()->params()))
        throw ParamsMismatch("localized elements live over different parameters");
}

LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b) {
    require_same_ring(a, b);
    const DenomExponents common = a.den_.max_with(b.den_);
    const MultiPoly fa = a.ring_->denominator_poly(common.minus(a.den_));
    const MultiPoly fb = a.ring_->denominator_poly(common.minus(b.den_));
    return {a.ring_, a.num_ * fa + b.num_ * fb, common};
}

LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b) { return a + (-b); }

LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b) {
    require_same_ring(a, b);
    return {a.ring_, a.num_ * b.num_, a.den_.plus(b.den_)};
}

LocalizedElement LocalizedElement::pow(uint32_t k) const {
    LocalizedElement out = from_scalar(ring_, PAdicScalar(context(), 1));
    LocalizedElement base = *this;
    while (k) {
        if (k & 1) out = out * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return out;
}

LocalizedElement LocalizedElement::times_p() const {
    return {ring_, num_.scaled(PAdicScalar(context(), context().prime)), den_};
}

LocalizedElement LocalizedElement::divide_exact_by_p() const {
    const PAdicContext& ctx = context();
    if (ctx.precision < 2)
        throw PrecisionExhausted("divide_exact_by_p needs precision >= 2");
    const XRingPtr low = ring_->reduce_to(ctx.precision - 1);
    std::vector<MultiPoly::Term> terms;
    terms.reserve(num_.terms().size());
    for (const auto& t : num_.terms()) {
        if (t.coeff % ctx.prime != 0)
            throw Error("divide_exact_by_p: numerator is not divisible by p");
        terms.push_back({t.exp, t.coeff / ctx.prime});
    }
    return {low, MultiPoly::from_terms(low->context(), std::move(terms)), den_};
}

LocalizedElement LocalizedElement::reduce_to_precision(uint32_t k) const {
    return {ring_->reduce_to(k), num_.reduce_to_precision(k), den_};
}

LocalizedElement LocalizedElement::lift_into(const XRingPtr& target) const {
    const PAdicContext& tctx = target->context();
    if (tctx.prime != context().prime || tctx.precision < context().precision)
        throw Error("lift_into: target ring is not a higher-precision view of this one");
    if (!(target->params().reduce_to(context().precision) == ring_->params()))
        throw ParamsMismatch("lift_into: target parameters do not reduce to these");
    return {target, num_.lift_to_precision(tctx.precision), den_};
}

bool operator==(const LocalizedElement& a, const LocalizedElement& b) {
    require_same_ring(a, b);
    const DenomExponents common = a.den_.max_with(b.den_);
    const MultiPoly fa = a.ring_->denominator_poly(common.minus(a.den_));
    const MultiPoly fb = a.ring_->denominator_poly(common.minus(b.den_));
    return a.num_ * fa == b.num_ * fb;
}

bool equal_mod(const LocalizedElement& a, const LocalizedElement& b, uint32_t k) {
    return a.reduce_to_precision(k) == b.reduce_to_precision(k);
}

} // namespace eulertop
