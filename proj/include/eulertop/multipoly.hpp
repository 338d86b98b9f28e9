#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eulertop/padic.hpp"

namespace eulertop {

/*
 * Sparse multivariate polynomials over Z/p^N in the fixed variable
 * universe {x1, x2, x3, z1, z2, x}. Terms are kept sorted by ascending
 * lexicographic exponent order with nonzero coefficients only, so equal
 * polynomials have identical term lists and serialization is
 * deterministic.
 */

enum class Var : uint8_t { x1 = 0, x2, x3, z1, z2, x };

inline constexpr size_t kVarCount = 6;

const char* var_name(Var v);
Var var_from_name(const std::string& name);

// Positive weight per variable; 0 marks "no weight declared".
struct ExponentWeights {
    std::array<uint32_t, kVarCount> weight{};
    ExponentWeights& set(Var v, uint32_t w);
};

class MultiPoly {
public:
    using Exponents = std::array<uint16_t, kVarCount>;
    struct Term {
        Exponents exp{};
        uint64_t coeff = 0;
    };

    static MultiPoly zero(PAdicContext ctx) { return MultiPoly(ctx); }
    static MultiPoly constant(const PAdicScalar& c);
    static MultiPoly constant(PAdicContext ctx, uint64_t c) { return constant(PAdicScalar(ctx, c)); }
    static MultiPoly variable(PAdicContext ctx, Var v);
    static MultiPoly monomial(PAdicContext ctx, const Exponents& e, uint64_t coeff);
    // Normalizes: reduces coefficients, merges duplicates, drops zeros.
    static MultiPoly from_terms(PAdicContext ctx, std::vector<Term> terms);

    const PAdicContext& context() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // The coefficient of the zero monomial (the whole value for constants).
    PAdicScalar constant_term() const;

    MultiPoly operator-() const;
    MultiPoly pow(uint32_t k) const; // repeated squaring
    MultiPoly scaled(const PAdicScalar& c) const;

    // Composition. Unbound variables stay in place; a strict full-binding
    // evaluation is provided separately by evaluate().
    MultiPoly substitute(const std::map<Var, MultiPoly>& bindings) const;

    MultiPoly partial(Var v) const;
    MultiPoly coefficient_of(Var v, uint32_t k) const;

    // True iff every term has weighted degree exactly d (zero passes).
    // Every variable occurring in the polynomial must carry a weight.
    bool weighted_homogeneous(const ExponentWeights& w, uint32_t d) const;

    MultiPoly reduce_mod_p() const { return reduce_to_precision(1); }
    MultiPoly reduce_to_precision(uint32_t k) const;
    MultiPoly lift_to_precision(uint32_t k) const;

    // Full evaluation; every occurring variable must be bound, else
    // UnboundVariable.
    PAdicScalar evaluate(const std::map<Var, PAdicScalar>& values) const;

    uint32_t degree_in(Var v) const;
    uint32_t total_degree() const;
    std::vector<Var> variables_used() const;
    bool uses_only(std::initializer_list<Var> allowed) const;

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.ctx_ == b.ctx_ && a.terms_.size() == b.terms_.size() &&
               std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                          [](const Term& s, const Term& t) { return s.exp == t.exp && s.coeff == t.coeff; });
    }

    std::string to_string() const;

private:
    explicit MultiPoly(PAdicContext ctx) : ctx_(ctx) {}
    void normalize();

    PAdicContext ctx_;
    std::vector<Term> terms_;
};

MultiPoly operator*(const PAdicScalar& c, const MultiPoly& f);

} // namespace eulertop
