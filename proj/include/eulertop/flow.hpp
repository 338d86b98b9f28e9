#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "eulertop/hasse.hpp"
#include "eulertop/localized.hpp"

namespace eulertop {

/*
 * Arithmetic analogues of the Euler flow: p-derivations delta on the
 * completed coordinate ring of the open set X, with Frobenius lift
 * phi(f) = f^p + p delta(f), that kill both conserved quadrics. Such a
 * flow is pinned down by its value on x3; the images of x1, x2 are then
 * forced through the 2x2 linear system
 *
 *   a1 Phi1^2 + a2 Phi2^2 = H1^p - a3 Phi3^2
 *      Phi1^2 +    Phi2^2 = H2^p -    Phi3^2
 *
 * solved by Cramer's rule (a1 - a2 is a unit), and the square roots are
 * recovered as the principal roots of Phi_i^2 / x_i^(2p) = 1 + p G_i.
 */

struct FlowDescriptor {
    XRingPtr ring;
    LocalizedElement delta_x3;                 // value of the p-derivation on x3
    LocalizedElement phi_x3;                   // x3^p + p * delta_x3
    LocalizedElement phi1_squared, phi2_squared;
    std::optional<LocalizedElement> phi1, phi2; // principal roots, when extracted

    const PAdicContext& context() const { return ring->context(); }
    bool has_roots() const { return phi1.has_value() && phi2.has_value(); }
};

struct UnitCofactors {
    LocalizedElement g1, g2; // Phi_i^2 = x_i^(2p) (1 + p g_i), at precision N-1
};

// The canonical flow value on x3: the antiderivative S of the Hasse
// expansion evaluated at (H1, H2, x3), a homogeneous numerator of degree
// 2p-1 over one power of A(H1, H2).
LocalizedElement canonical_delta_x3(const XRingPtr& ring);
LocalizedElement canonical_delta_x3(const XRingPtr& ring, const HasseData& data);

// phi applied to x3 for a given flow value on x3.
LocalizedElement phi_x3_from_delta(const LocalizedElement& delta_x3);

// Cramer solution of the defining linear system for (Phi1^2, Phi2^2);
// total in delta_x3. Throws SingularSystem if a1 = a2 mod p (excluded by
// parameter validation).
std::pair<LocalizedElement, LocalizedElement> solve_phi_squares(const XRingPtr& ring,
                                                                const LocalizedElement& delta_x3);

// G_i = (Phi_i^2 / x_i^(2p) - 1)/p; throws NotCongruent when the mod-p
// congruence Phi_i^2 = x_i^(2p) fails.
UnitCofactors unit_cofactors(const XRingPtr& ring, const LocalizedElement& phi1_squared,
                             const LocalizedElement& phi2_squared);

// Principal square roots Phi_i = x_i^p (1 + p G_i)^(1/2), exact at the
// working precision. Newton iteration on the inverse root written on the
// unit part 1 + p w, so denominators stay manageable.
std::pair<LocalizedElement, LocalizedElement> principal_phi_roots(const XRingPtr& ring,
                                                                  const UnitCofactors& g);

// Full pipeline; delta_x3 defaults to the canonical one.
FlowDescriptor make_flow(const XRingPtr& ring,
                         std::optional<LocalizedElement> delta_x3 = std::nullopt,
                         bool extract_roots = false);
FlowDescriptor with_roots(FlowDescriptor flow);

// Ring-homomorphic image of f under phi: substitute x_i -> Phi_i.
// Requires extracted roots.
LocalizedElement flow_apply_phi(const FlowDescriptor& flow, const MultiPoly& f);

// (phi(f) - f^p)/p at precision N-1.
LocalizedElement flow_delta(const FlowDescriptor& flow, const MultiPoly& f);

// Exact check of the defining system: sum_j phi(a_ij) Phi_j^2 = H_i^p
// mod p^N for i = 1,2. Works at the squares level, no roots needed.
bool verify_prime_integrals(const FlowDescriptor& flow);

// The two sides' cleared differences; both must be identically zero.
struct PrimeIntegralOutcome {
    bool holds = false;
    LocalizedElement difference_h1, difference_h2;
};
PrimeIntegralOutcome prime_integral_differences(const FlowDescriptor& flow);

// Phi_i^2 = x_i^(2p) and Phi3 = x3^p mod p.
bool phi_mod_p_congruences(const FlowDescriptor& flow);

// Up to `count` Teichmuller level values with N(c) A(c) nonzero mod p,
// found by exhaustive lexicographic scan of F_p^2. Throws
// NoAdmissibleLevel when the scan comes back empty.
std::vector<LevelSpec> sample_admissible_levels(const SystemParams& params, size_t count);

struct LinearizationOutcome {
    bool holds = false;
    // lhs - rhs of the cleared mod-p identity; must be identically zero.
    std::optional<LevelSetElement> cleared_difference;
    // The same difference carried at two p-adic digits: recorded as data,
    // not interpreted (it is generally nonzero).
    std::optional<LevelSetElement> defect_mod_p_squared;
};

// The linearization congruence on one level set: the cleared mod-p
// identity comparing the formal derivative of the stored phi(x3) route
// against the pure rewriting route A(c)^{-1} (a1-a2)^{p-1} x1^{p-1} x2^{p-1}.
LinearizationOutcome verify_linearization(const FlowDescriptor& flow, const LevelSpec& spec);

} // namespace eulertop
