#include <doctest.h>

#include <vector>

#include "eulertop/padic.hpp"
#include "eulertop/rng.hpp"

using namespace eulertop;

namespace {

// independent oracle: exhaustive search for the inverse
uint64_t brute_inverse(uint64_t a, uint64_t m) {
    for (uint64_t x = 0; x < m; ++x)
        if (a * x % m == 1) return x;
    throw std::logic_error("no inverse");
}

} // namespace

TEST_SUITE_BEGIN("padic");

TEST_CASE("context validation") {
    CHECK_THROWS_AS(PAdicContext::make(4, 2), Error);  // not prime
    CHECK_THROWS_AS(PAdicContext::make(2, 2), Error);  // p must be odd
    CHECK_THROWS_AS(PAdicContext::make(5, 0), Error);  // precision >= 1
    CHECK_THROWS_AS(PAdicContext::make(3, 60), Error); // 2^62 cap
    const PAdicContext ctx = PAdicContext::make(5, 2);
    CHECK(ctx.modulus == 25);
}

TEST_CASE("inverse") {
    const PAdicContext ctx = PAdicContext::make(5, 2);
    CHECK(PAdicScalar(ctx, 1).inv().residue() == 1);
    CHECK(PAdicScalar(ctx, 7).inv().residue() == 18); // 7*18 = 126 = 1 mod 25
    CHECK_THROWS_AS(PAdicScalar(ctx, 5).inv(), NotAUnit);

    // oracle comparison over a few moduli
    for (uint32_t p : {3u, 5u, 7u}) {
        const PAdicContext c = PAdicContext::make(p, 3);
        Rng rng(42 + p);
        for (int i = 0; i < 25; ++i) {
            uint64_t a = rng.below(c.modulus);
            if (a % p == 0) a += 1;
            const PAdicScalar s(c, a);
            CHECK(s.inv().residue() == brute_inverse(a % c.modulus, c.modulus));
            CHECK((s * s.inv()).residue() == 1);
        }
    }
}

TEST_CASE("teichmuller") {
    const PAdicContext ctx = PAdicContext::make(5, 2);
    CHECK(teichmuller(ctx, 0).residue() == 0);
    CHECK(teichmuller(ctx, 1).residue() == 1);
    CHECK(teichmuller(ctx, 2).residue() == 7); // 7^5 = 7 mod 25

    // oracle: the unique x = r mod p with x^p = x, by exhaustive scan
    for (uint32_t p : {3u, 5u, 7u}) {
        const PAdicContext c = PAdicContext::make(p, 3);
        for (uint64_t r = 0; r < p; ++r) {
            const PAdicScalar t = teichmuller(c, r);
            CHECK(t.residue() % p == r);
            CHECK(t.pow(p) == t);
            uint64_t found = 0, count = 0;
            for (uint64_t x = 0; x < c.modulus; ++x)
                if (x % p == r && pow_mod(x, p, c.modulus) == x) {
                    found = x;
                    ++count;
                }
            CHECK(count == 1);
            CHECK(t.residue() == found);
        }
    }
}

TEST_CASE("fermat quotient") {
    const PAdicContext ctx = PAdicContext::make(5, 3);
    const PAdicScalar q = PAdicScalar(ctx, 2).fermat_quotient();
    CHECK(q.context().precision == 2);
    CHECK(q.residue() == 19); // (2 - 32)/5 = -6 = 19 mod 25
    CHECK(PAdicScalar(ctx, 0).fermat_quotient().is_zero());
    for (uint64_t r = 0; r < 5; ++r)
        CHECK(teichmuller(ctx, r).fermat_quotient().is_zero());
    CHECK_THROWS_AS(PAdicScalar(PAdicContext::make(5, 1), 2).fermat_quotient(),
                    PrecisionExhausted);
}

TEST_CASE("fermat quotient sum rule") {
    // phi(a+b) = phi(a) + phi(b) where phi(a) = a^p + p * delta(a), exact mod p^N
    for (uint32_t p : {3u, 5u, 7u}) {
        const PAdicContext ctx = PAdicContext::make(p, 3);
        Rng rng(7 * p);
        const auto phi = [&](const PAdicScalar& a) {
            const uint64_t lifted = a.fermat_quotient().residue(); // canonical lift
            return a.pow(p) + PAdicScalar(ctx, lifted * p);
        };
        for (int i = 0; i < 30; ++i) {
            const PAdicScalar a(ctx, rng.below(ctx.modulus));
            const PAdicScalar b(ctx, rng.below(ctx.modulus));
            CHECK(phi(a + b) == phi(a) + phi(b));
        }
    }
}

TEST_CASE("legendre") {
    CHECK(legendre(1, 7) == 1);
    CHECK(legendre(0, 7) == 0);
    CHECK(legendre(2, 5) == -1); // squares mod 5 are {1, 4}

    // oracle: exhaustive squaring
    for (uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        std::vector<bool> is_square(p, false);
        for (uint64_t y = 1; y < p; ++y) is_square[y * y % p] = true;
        for (uint64_t a = 0; a < p; ++a) {
            const int expected = a % p == 0 ? 0 : (is_square[a] ? 1 : -1);
            CHECK(legendre(a, p) == expected);
        }
    }
}

TEST_CASE("principal square root") {
    const PAdicContext ctx = PAdicContext::make(5, 2);
    CHECK(sqrt_principal(PAdicScalar(ctx, 1)).residue() == 1);
    CHECK(sqrt_principal(PAdicScalar(ctx, 6)).residue() == 16); // 16^2 = 256 = 6 mod 25
    CHECK_THROWS_AS(sqrt_principal(PAdicScalar(ctx, 2)), NotPrincipalUnit);
}

TEST_CASE("principal square root is the unique root = 1 mod p") {
    // exhaustive for p^N up to 10^6
    for (auto [p, n] : {std::pair<uint32_t, uint32_t>{3, 6}, {5, 4}, {7, 3}, {97, 2}}) {
        const PAdicContext ctx = PAdicContext::make(p, n);
        REQUIRE(ctx.modulus <= 1000000);
        Rng rng(p * 1000 + n);
        for (int i = 0; i < 20; ++i) {
            const uint64_t u_val = 1 + p * rng.below(ctx.modulus / p);
            const PAdicScalar u(ctx, u_val);
            const PAdicScalar r = sqrt_principal(u);
            CHECK(r * r == u);
            CHECK(r.residue() % p == 1);
            uint64_t matches = 0;
            for (uint64_t x = 1; x < ctx.modulus; x += p) // only x = 1 mod p
                if (mul_mod(x, x, ctx.modulus) == u.residue()) ++matches;
            CHECK(matches == 1);
        }
    }
}

TEST_SUITE_END();
