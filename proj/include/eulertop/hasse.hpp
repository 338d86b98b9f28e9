#pragma once

#include <cstdint>
#include <vector>

#include "eulertop/geometry.hpp"
#include "eulertop/multipoly.hpp"

namespace eulertop {

/*
 * The Hasse invariant of a one-variable polynomial F over a ring: the
 * coefficient of x^(p-1) in F^((p-1)/2). For the quartic attached to the
 * Euler top it detects supersingular reduction of a level set, and its
 * inverse scales the linearized arithmetic flow.
 */

// coefficient_of(f^((p-1)/2), x, p-1); p is the context prime.
MultiPoly hasse_invariant(const MultiPoly& f, Var x);

// Expansion data for A^{-1} F^((p-1)/2) - x^(p-1) = sum_i R_i x^i and its
// termwise antiderivative S = sum_i R_i x^(i+1)/(i+1). Everything is
// stored as a numerator over one explicit power of the invariant, which
// never gets expanded.
struct HasseData {
    MultiPoly invariant;                  // A, in z1,z2
    std::vector<MultiPoly> remainder_num; // A*R_i for i in [0, 2p-2], in z1,z2
    MultiPoly primitive_num;              // A*S, in z1,z2,x
    uint32_t denominator_power = 1;       // power of A under every entry
};

// Throws NonUnitDenominator if some nonzero R_i had p | (i+1); the slot
// i = p-1 is zero by construction so this cannot happen for valid params.
HasseData hasse_expansion(const SystemParams& params);

// |{(x, y) in F_p^2 : y^2 = f(x)}| by exhaustive enumeration of both
// coordinates; this is the oracle, so no counting shortcuts. f must live
// at precision 1. Supported for p <= 101.
uint64_t count_affine(const MultiPoly& f_bar);

// Congruence report for one curve y^2 = f(x), deg f in {3, 4}: the
// invariant against the exhaustive point count, and the projective count
// against 1 - A when f has distinct roots. All deltas must be 0 mod p.
struct PointCountReport {
    uint32_t prime = 0;
    uint32_t degree = 0;
    std::vector<uint64_t> poly;     // dense coefficients of f, low degree first
    uint64_t invariant_mod_p = 0;   // A mod p
    uint64_t affine_count = 0;      // N_p
    int lead_symbol = 0;            // Legendre symbol of the leading coefficient (degree 4)
    uint64_t affine_delta = 0;      // (A + N_p [+ (lead/p)]) mod p
    bool smooth_model = false;      // distinct roots in the algebraic closure
    uint64_t projective_count = 0;  // valid when smooth_model
    uint64_t projective_delta = 0;  // (|C-bar| - (1 - A)) mod p, when smooth_model
    bool all_hold() const { return affine_delta == 0 && (!smooth_model || projective_delta == 0); }
};

// f is univariate in Var::x over any precision; congruences are mod p.
PointCountReport point_count_congruences(const MultiPoly& f);

// True iff the reduced invariant vanishes at (c1, c2) in F_p^2; throws
// DegenerateFiber when the level discriminant vanishes there.
bool is_supersingular(const SystemParams& params, uint64_t c1_bar, uint64_t c2_bar);

} // namespace eulertop
