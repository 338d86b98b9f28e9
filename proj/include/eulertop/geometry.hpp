#pragma once

#include <memory>

#include "eulertop/multipoly.hpp"

namespace eulertop {

/*
 * Geometry of the Euler top: the conserved quadrics H1 = a1 x1^2 + a2 x2^2
 * + a3 x3^2 and H2 = x1^2 + x2^2 + x3^2, their joint level sets E_c, the
 * cubic whose non-vanishing keeps a fiber smooth, and the plane quartic
 * y^2 = F(x, c1, c2) that E_c double-covers.
 *
 * Quotient-ring arithmetic on a level set works by confluent rewriting:
 * the two defining quadrics are diagonal in x1^2, x2^2, and since a1 - a2
 * is a unit they can be solved as
 *
 *   x1^2 -> ((a2-a3) x3^2 + c1 - a2 c2) / (a1-a2)
 *   x2^2 -> ((a3-a1) x3^2 - c1 + a1 c2) / (a1-a2)
 *
 * which makes the coordinate ring a free module of rank 4 over
 * polynomials in x3 with basis {1, x1, x2, x1 x2}. LevelSetElement stores
 * the four basis coefficients; that normal form is canonical.
 */

struct SystemParams {
    PAdicContext ctx;
    PAdicScalar a1, a2, a3;

    // Validates (a1-a2)(a2-a3)(a3-a1) unit.
    static SystemParams make(PAdicContext ctx, const PAdicScalar& a1,
                             const PAdicScalar& a2, const PAdicScalar& a3);
    static SystemParams make(PAdicContext ctx, uint64_t a1, uint64_t a2, uint64_t a3);

    SystemParams reduce_to(uint32_t prec) const;
    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

MultiPoly energy_form(const SystemParams& p);   // H1, in x1,x2,x3
MultiPoly casimir_form(const SystemParams& p);  // H2, in x1,x2,x3

// prod_i (z1 - a_i z2); a level (c1,c2) with this a unit has a smooth fiber.
MultiPoly level_discriminant(const SystemParams& p);

// ((a2-a3)x^2 + z1 - a2 z2)((a3-a1)x^2 - z1 + a1 z2), the quartic in
// z1,z2,x; weighted homogeneous of degree 4 for weights (2,2,1).
MultiPoly isogeny_quartic(const SystemParams& p);

// x1 x2 * N(H1,H2) * A(H1,H2): the polynomial inverted on the open set
// where flows live. The Hasse factor comes from the hasse module.
MultiPoly localization_poly(const SystemParams& p);

// A level value c = (c1, c2): both coordinates Teichmuller (c^p = c) and
// N(c) * A(c) a unit. Construction throws DegenerateFiber otherwise.
struct LevelSpec {
    PAdicScalar c1, c2;

    static LevelSpec make(const SystemParams& params, const PAdicScalar& c1,
                          const PAdicScalar& c2);
    LevelSpec reduce_to(uint32_t prec) const { return LevelSpec{c1.reduce_to(prec), c2.reduce_to(prec)}; }
    friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

// Precomputed rewriting data for one level set.
class LevelFrame {
public:
    static std::shared_ptr<const LevelFrame> make(const SystemParams& params, const LevelSpec& spec);

    const SystemParams& params() const { return params_; }
    const LevelSpec& spec() const { return spec_; }
    const PAdicContext& context() const { return params_.ctx; }
    const MultiPoly& x1sq_image() const { return r1_; }
    const MultiPoly& x2sq_image() const { return r2_; }

    std::shared_ptr<const LevelFrame> reduce_to(uint32_t prec) const;

    LevelFrame(SystemParams params, LevelSpec spec, MultiPoly r1, MultiPoly r2)
        : params_(std::move(params)), spec_(std::move(spec)), r1_(std::move(r1)), r2_(std::move(r2)) {}

private:
    SystemParams params_;
    LevelSpec spec_;
    MultiPoly r1_, r2_; // univariate in x3
};

using LevelFramePtr = std::shared_ptr<const LevelFrame>;

// b0 + b1 x1 + b2 x2 + b12 x1 x2 with coefficients univariate in x3.
class LevelSetElement {
public:
    LevelSetElement(LevelFramePtr frame, MultiPoly b0, MultiPoly b1, MultiPoly b2, MultiPoly b12);

    static LevelSetElement zero(LevelFramePtr frame);
    static LevelSetElement from_univariate(LevelFramePtr frame, const MultiPoly& b0);

    const LevelFramePtr& frame() const { return frame_; }
    const MultiPoly& b0() const { return b0_; }
    const MultiPoly& b1() const { return b1_; }
    const MultiPoly& b2() const { return b2_; }
    const MultiPoly& b12() const { return b12_; }

    bool is_zero() const { return b0_.is_zero() && b1_.is_zero() && b2_.is_zero() && b12_.is_zero(); }
    bool is_univariate() const { return b1_.is_zero() && b2_.is_zero() && b12_.is_zero(); }

    LevelSetElement scaled(const PAdicScalar& c) const;

    friend LevelSetElement operator+(const LevelSetElement& a, const LevelSetElement& b);
    friend LevelSetElement operator-(const LevelSetElement& a, const LevelSetElement& b);
    friend LevelSetElement operator*(const LevelSetElement& a, const LevelSetElement& b);
    friend bool operator==(const LevelSetElement& a, const LevelSetElement& b);

private:
    LevelFramePtr frame_;
    MultiPoly b0_, b1_, b2_, b12_;
};

// Canonical image of f in A[x1,x2,x3] under restriction to the level set.
// Ring homomorphism; idempotent on normal forms.
LevelSetElement level_reduce(const LevelFramePtr& frame, const MultiPoly& f);

// The dx3 coefficient, in normal form, of (a1-a2) x1 x2 * (P dx1 + Q dx2
// + R dx3) restricted to the level set. The conversion substitutes the
// relations obtained from dH1 = dH2 = 0 by solving for x1 dx1 and x2 dx2.
LevelSetElement cleared_form_coefficient(const LevelFramePtr& frame, const MultiPoly& p_dx1,
                                         const MultiPoly& q_dx2, const MultiPoly& r_dx3);

// For w a function on the level set in normal form, the g such that
// dw = g * omega, where omega = dx3 / ((a1-a2) x1 x2) is the canonical
// 1-form. Computed by formal d/dx3 plus the chain terms of the basis.
LevelSetElement form_coefficient_of_differential(const LevelSetElement& w);

// Checks that the three chart expressions dx_i / ((a_j - a_k) x_j x_k)
// of the canonical 1-form agree after clearing denominators, and that
// the dH relations themselves reduce to zero in normal form.
bool canonical_form_identity_check(const LevelFramePtr& frame);

// Verifies the degree-2 cover onto y^2 = F(x, c1, c2): the square of the
// y-image equals F(x3, c1, c2) in normal form, and the pullback of dx/y
// equals the canonical 1-form in cleared form. y_image defaults to
// (a1-a2) x1 x2.
bool isogeny_identity_check(const LevelFramePtr& frame);
bool squared_y_matches_quartic(const LevelFramePtr& frame, const MultiPoly& y_image);
bool pullback_matches_canonical_form(const LevelFramePtr& frame, const MultiPoly& y_image);

// F(x3, c1, c2) as a univariate polynomial in x3.
MultiPoly quartic_on_level(const SystemParams& params, const LevelSpec& spec);

} // namespace eulertop
