#include "eulertop/padic.hpp"

#include <string>

namespace eulertop {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t m) { return (a + b) % m; }
uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t m) { return (a + m - b % m) % m; }

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

PAdicContext PAdicContext::make(uint32_t p, uint32_t n) {
    if (p < 3 || !is_prime_u32(p))
        throw Error("PAdicContext: prime must be an odd prime >= 3, got " + std::to_string(p));
    if (n < 1)
        throw Error("PAdicContext: precision must be >= 1");
    // cap so that residues fit u64 and products fit u128
    constexpr uint64_t kCap = uint64_t(1) << 62;
    uint64_t m = 1;
    for (uint32_t i = 0; i < n; ++i) {
        if (m > kCap / p)
            throw Error("PAdicContext: p^N exceeds the supported 2^62 range");
        m *= p;
    }
    return PAdicContext{p, n, m};
}

PAdicContext PAdicContext::lowered(uint32_t k) const {
    if (k < 1 || k > precision)
        throw Error("PAdicContext: invalid precision change");
    return PAdicContext::make(prime, k);
}

void require_same_context(const PAdicContext& a, const PAdicContext& b) {
    if (!(a == b))
        throw ContextMismatch("operands live in different p-adic contexts");
}

PAdicScalar operator+(const PAdicScalar& a, const PAdicScalar& b) {
    require_same_context(a.ctx_, b.ctx_);
    return {a.ctx_, add_mod(a.residue_, b.residue_, a.ctx_.modulus)};
}

PAdicScalar operator-(const PAdicScalar& a, const PAdicScalar& b) {
    require_same_context(a.ctx_, b.ctx_);
    return {a.ctx_, sub_mod(a.residue_, b.residue_, a.ctx_.modulus)};
}

PAdicScalar operator*(const PAdicScalar& a, const PAdicScalar& b) {
    require_same_context(a.ctx_, b.ctx_);
    return {a.ctx_, mul_mod(a.residue_, b.residue_, a.ctx_.modulus)};
}

namespace {

// extended Euclid on int128 to stay exact near the 2^62 cap
uint64_t inverse_mod(uint64_t a, uint64_t m) {
    using i128 = __int128;
    i128 old_r = a, r = m;
    i128 old_s = 1, s = 0;
    while (r != 0) {
        i128 q = old_r / r;
        i128 t = old_r - q * r; old_r = r; r = t;
        t = old_s - q * s; old_s = s; s = t;
    }
    if (old_r != 1)
        throw NotAUnit("residue divisible by p has no inverse mod p^N");
    i128 x = old_s % static_cast<i128>(m);
    if (x < 0) x += m;
    return static_cast<uint64_t>(x);
}

} // namespace

PAdicScalar PAdicScalar::inv() const {
    if (!is_unit())
        throw NotAUnit("residue divisible by p has no inverse mod p^N");
    return {ctx_, inverse_mod(residue_, ctx_.modulus)};
}

PAdicScalar PAdicScalar::fermat_quotient() const {
    if (ctx_.precision < 2)
        throw PrecisionExhausted("fermat quotient needs precision >= 2");
    const uint64_t ap = pow_mod(residue_, ctx_.prime, ctx_.modulus);
    const uint64_t diff = sub_mod(residue_, ap, ctx_.modulus); // divisible by p
    return {ctx_.lowered(ctx_.precision - 1), diff / ctx_.prime};
}

PAdicScalar PAdicScalar::reduce_to(uint32_t prec) const {
    const PAdicContext low = ctx_.lowered(prec);
    return {low, residue_ % low.modulus};
}

PAdicScalar PAdicScalar::lift_to(uint32_t prec) const {
    if (prec < ctx_.precision)
        throw Error("lift_to: target precision below current");
    return {PAdicContext::make(ctx_.prime, prec), residue_};
}

PAdicScalar teichmuller(PAdicContext ctx, uint64_t r) {
    if (r >= ctx.prime)
        throw Error("teichmuller: representative must lie in [0, p)");
    uint64_t t = r;
    for (uint32_t i = 0; i <= ctx.precision; ++i) {
        const uint64_t next = pow_mod(t, ctx.prime, ctx.modulus);
        if (next == t) break;
        t = next;
    }
    return {ctx, t};
}

int legendre(uint64_t a, uint32_t p) {
    if (p < 3 || !is_prime_u32(p))
        throw Error("legendre: p must be an odd prime");
    const uint64_t v = pow_mod(a % p, (p - 1) / 2, p);
    if (v == 0) return 0;
    return v == 1 ? 1 : -1;
}

PAdicScalar sqrt_principal(const PAdicScalar& u) {
    const PAdicContext& ctx = u.context();
    if (u.residue() % ctx.prime != 1)
        throw NotPrincipalUnit("principal square root requires u = 1 mod p");
    const PAdicScalar inv2 = PAdicScalar(ctx, 2).inv();
    const PAdicScalar three(ctx, 3);
    PAdicScalar z(ctx, 1);
    uint32_t steps = 1;
    while ((uint32_t(1) << (steps - 1)) < ctx.precision) ++steps;
    ++steps;
    for (uint32_t i = 0; i < steps; ++i)
        z = z * (three - u * z * z) * inv2;
    const PAdicScalar root = u * z;
    if (!(root * root == u))
        throw std::logic_error("sqrt_principal: Newton iteration failed to converge");
    return root;
}

} // namespace eulertop
