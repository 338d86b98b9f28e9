#pragma once

#include <stdexcept>
#include <string>

namespace eulertop {

// Base class for every failure this library raises on bad mathematical
// input. Logic errors in the library itself use std::logic_error instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// padic
struct NotAUnit : Error { using Error::Error; };
struct PrecisionExhausted : Error { using Error::Error; };
struct NotPrincipalUnit : Error { using Error::Error; };
struct ContextMismatch : Error { using Error::Error; };

// polynomials
struct UnboundVariable : Error { using Error::Error; };

// geometry / hasse
struct DegenerateFiber : Error { using Error::Error; };
struct UnsupportedDegree : Error { using Error::Error; };
struct NonUnitDenominator : Error { using Error::Error; };

// flows
struct SingularSystem : Error { using Error::Error; };
struct NotCongruent : Error { using Error::Error; };
struct RootsUnavailable : Error { using Error::Error; };
struct NoAdmissibleLevel : Error { using Error::Error; };
struct NotPrimeIntegral : Error { using Error::Error; };
struct ParamsMismatch : Error { using Error::Error; };

} // namespace eulertop
