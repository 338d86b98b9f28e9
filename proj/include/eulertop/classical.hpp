#pragma once

#include <array>
#include <vector>

#include "eulertop/flow.hpp"

namespace eulertop {

/*
 * The classical Euler flow: the derivation
 *
 *   delta x1 = (a2-a3) x2 x3,  delta x2 = (a3-a1) x3 x1,  delta x3 = (a1-a2) x1 x2
 *
 * over any coefficient ring, its prime integrals, its duality with the
 * canonical 1-form on a level set, and the torsor structure it induces on
 * arithmetic flows mod p: shifting the flow value on x3 by a prime
 * integral mod p gives another arithmetic flow, and differences of flows
 * reduce to prime integrals.
 */

// Leibniz extension of the generator action to polynomials in x1,x2,x3.
MultiPoly classical_delta(const SystemParams& params, const MultiPoly& f);

// Quotient rule on localized elements with the fixed denominator factors.
LocalizedElement classical_delta(const LocalizedElement& f);

// <delta_c, omega_c> = 1 on a level set, checked through all three chart
// expressions of the canonical form in cleared normal form.
bool duality_check(const LevelFramePtr& frame);

// d(i* K) = i*(delta K) omega as 1-forms on the reduced level set: the
// left side from the formal differential of the normal form, the right
// side from the derivation, both cleared by (a1-a2) x1 x2.
bool lie_identity_check(const LevelFramePtr& frame, const MultiPoly& k_bar);

// classical_delta(K) = 0, over the given (usually mod-p) coefficients.
bool is_prime_integral(const SystemParams& params, const MultiPoly& k_bar);
bool is_prime_integral(const LocalizedElement& k_bar);

// New flow with the value on x3 shifted by the coefficient-wise lift of a
// certified prime integral mod p; squares recomputed through the linear
// system. Throws NotPrimeIntegral if the candidate is not certified.
FlowDescriptor torsor_shift(const FlowDescriptor& flow, const LocalizedElement& k_bar);

struct FlowDifference {
    LocalizedElement candidate;           // (delta_A - delta_B) mod p
    bool prime_integral = false;          // classical_delta kills it
    std::vector<bool> differential_vanishes; // d(i* K) = 0 per sampled level
};

// Reduction mod p of the difference of two flows on the same parameters,
// with the prime-integral certificate and per-level closedness data.
FlowDifference flow_difference(const FlowDescriptor& a, const FlowDescriptor& b,
                               const std::vector<LevelSpec>& specs);

// Floating-point illustration: fixed-step fourth-order integration of the
// classical system over the reals, reporting conservation drift.
struct DemoConfig {
    std::array<double, 3> a{1.0, 2.0, 3.0};
    std::array<double, 3> x0{1.0, 1.0, 1.0};
    double dt = 1e-3;
    long steps = 10000;
    long sample_every = 1; // thin the stored trajectory
};

struct DemoResult {
    // rows of (t, x1, x2, x3, H1, H2)
    std::vector<std::array<double, 6>> rows;
    double max_drift_h1 = 0.0;
    double max_drift_h2 = 0.0;
    std::array<double, 3> final_state{};
};

DemoResult integrate_demo(const DemoConfig& cfg);

} // namespace eulertop
