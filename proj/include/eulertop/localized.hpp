#pragma once

#include <memory>

#include "eulertop/geometry.hpp"

namespace eulertop {

/*
 * Elements of the coordinate ring of the open set where x1 x2, the level
 * discriminant at (H1, H2) and the Hasse invariant at (H1, H2) are all
 * invertible. A value is a polynomial numerator over a denominator that
 * is restricted to products of exactly those four factors, tracked as
 * exponents and never expanded. Equality is decided by cross-multiplying
 * numerators, so it is exact at the working precision.
 */

struct DenomExponents {
    uint32_t hasse = 0; // power of A(H1,H2)
    uint32_t disc = 0;  // power of N(H1,H2)
    uint32_t x1 = 0;
    uint32_t x2 = 0;

    DenomExponents max_with(const DenomExponents& o) const;
    DenomExponents minus(const DenomExponents& o) const;
    DenomExponents plus(const DenomExponents& o) const;
    bool trivial() const { return hasse == 0 && disc == 0 && x1 == 0 && x2 == 0; }
    friend bool operator==(const DenomExponents&, const DenomExponents&) = default;
};

class XRingData {
public:
    static std::shared_ptr<const XRingData> make(const SystemParams& params);

    const SystemParams& params() const { return params_; }
    const PAdicContext& context() const { return params_.ctx; }
    const MultiPoly& energy() const { return h1_; }
    const MultiPoly& casimir() const { return h2_; }
    const MultiPoly& hasse_at_h() const { return hasse_h_; }
    const MultiPoly& disc_at_h() const { return disc_h_; }

    // The denominator polynomial A^eA * N^eN * x1^e1 * x2^e2.
    MultiPoly denominator_poly(const DenomExponents& e) const;

    std::shared_ptr<const XRingData> reduce_to(uint32_t prec) const;

    XRingData(SystemParams params, MultiPoly h1, MultiPoly h2, MultiPoly hasse_h, MultiPoly disc_h)
        : params_(std::move(params)), h1_(std::move(h1)), h2_(std::move(h2)),
          hasse_h_(std::move(hasse_h)), disc_h_(std::move(disc_h)) {}

private:
    SystemParams params_;
    MultiPoly h1_, h2_;
    MultiPoly hasse_h_, disc_h_;
};

using XRingPtr = std::shared_ptr<const XRingData>;

class LocalizedElement {
public:
    LocalizedElement(XRingPtr ring, MultiPoly numerator, DenomExponents den = {});

    static LocalizedElement from_poly(XRingPtr ring, MultiPoly f) { return {std::move(ring), std::move(f)}; }
    static LocalizedElement from_scalar(const XRingPtr& ring, const PAdicScalar& c) {
        return {ring, MultiPoly::constant(c)};
    }
    static LocalizedElement zero(const XRingPtr& ring) {
        return {ring, MultiPoly::zero(ring->context())};
    }

    const XRingPtr& ring() const { return ring_; }
    const MultiPoly& numerator() const { return num_; }
    const DenomExponents& denominator() const { return den_; }
    const PAdicContext& context() const { return ring_->context(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.trivial(); }

    LocalizedElement operator-() const { return {ring_, -num_, den_}; }
    LocalizedElement scaled(const PAdicScalar& c) const { return {ring_, num_.scaled(c), den_}; }
    LocalizedElement pow(uint32_t k) const;
    // Shift the denominator by extra factors (divides by them).
    LocalizedElement over(const DenomExponents& extra) const { return {ring_, num_, den_.plus(extra)}; }

    LocalizedElement times_p() const;
    // Exact division by p; every numerator coefficient must be divisible.
    // The result lives one precision lower.
    LocalizedElement divide_exact_by_p() const;

    LocalizedElement reduce_to_precision(uint32_t k) const;
    LocalizedElement reduce_mod_p() const { return reduce_to_precision(1); }
    // Canonical numerator lift into a higher-precision ring over the same
    // parameters.
    LocalizedElement lift_into(const XRingPtr& target) const;

    friend LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b);
    friend LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b);
    friend LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b);

    // Cross-multiplied equality at full precision.
    friend bool operator==(const LocalizedElement& a, const LocalizedElement& b);

private:
    void normalize();

    XRingPtr ring_;
    MultiPoly num_;
    DenomExponents den_;
};

// Cross-multiplied equality after reducing both sides mod p^k.
bool equal_mod(const LocalizedElement& a, const LocalizedElement& b, uint32_t k);

void require_same_ring(const LocalizedElement& a, const LocalizedElement& b);

} // namespace eulertop
