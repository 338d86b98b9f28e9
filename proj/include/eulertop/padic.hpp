#pragma once

#include <cstdint>

#include "eulertop/errors.hpp"

namespace eulertop {

/*
 * Exact arithmetic in Z/p^N for an odd prime p: the truncation of the
 * p-adic integers at precision N. Every residue is kept reduced into
 * [0, p^N) and all products go through 128-bit intermediates, so results
 * are bit-exact as long as p^N < 2^62 (enforced at context construction).
 */

struct PAdicContext {
    uint32_t prime = 0;      // odd prime >= 3
    uint32_t precision = 0;  // N >= 1; values known mod prime^precision
    uint64_t modulus = 0;    // prime^precision

    // Validates primality, p >= 3, N >= 1 and the 2^62 modulus cap.
    static PAdicContext make(uint32_t p, uint32_t n);

    // Same prime at precision k <= N.
    PAdicContext lowered(uint32_t k) const;

    friend bool operator==(const PAdicContext&, const PAdicContext&) = default;
};

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m);
bool is_prime_u32(uint32_t n);

class PAdicScalar {
public:
    PAdicScalar(PAdicContext ctx, uint64_t value)
        : residue_(value % ctx.modulus), ctx_(ctx) {}

    uint64_t residue() const { return residue_; }
    const PAdicContext& context() const { return ctx_; }

    bool is_zero() const { return residue_ == 0; }
    bool is_unit() const { return residue_ % ctx_.prime != 0; }

    PAdicScalar operator-() const { return {ctx_, sub_mod(0, residue_, ctx_.modulus)}; }
    PAdicScalar pow(uint64_t e) const { return {ctx_, pow_mod(residue_, e, ctx_.modulus)}; }

    // Multiplicative inverse; throws NotAUnit when p divides the residue.
    PAdicScalar inv() const;

    // (a - a^p)/p, the unique p-derivation of Z_p on this truncation.
    // The result is only determined mod p^(N-1), so it comes back in the
    // lowered context; throws PrecisionExhausted at N = 1.
    PAdicScalar fermat_quotient() const;

    PAdicScalar reduce_to(uint32_t prec) const;
    // Canonical lift: same representative viewed at a higher precision.
    PAdicScalar lift_to(uint32_t prec) const;

    friend PAdicScalar operator+(const PAdicScalar& a, const PAdicScalar& b);
    friend PAdicScalar operator-(const PAdicScalar& a, const PAdicScalar& b);
    friend PAdicScalar operator*(const PAdicScalar& a, const PAdicScalar& b);
    friend bool operator==(const PAdicScalar& a, const PAdicScalar& b) {
        return a.ctx_ == b.ctx_ && a.residue_ == b.residue_;
    }

private:
    uint64_t residue_;
    PAdicContext ctx_;
};

// The unique lift of r mod p fixed by x -> x^p.
PAdicScalar teichmuller(PAdicContext ctx, uint64_t r);

// 0 if p | a, +1 for nonzero squares mod p, -1 otherwise.
int legendre(uint64_t a, uint32_t p);

// The square root of u congruent to 1 mod p, for u = 1 mod p. Newton
// iteration on the inverse root z <- z(3 - u z^2)/2 from z = 1, then
// root = u z; ceil(log2 N)+1 steps. Throws NotPrincipalUnit otherwise.
PAdicScalar sqrt_principal(const PAdicScalar& u);

void require_same_context(const PAdicContext& a, const PAdicContext& b);

} // namespace eulertop
