#include "eulertop/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace eulertop {

namespace {

constexpr const char* kVarNames[kVarCount] = {"x1", "x2", "x3", "z1", "z2", "x"};

struct ExpHash {
    size_t operator()(const MultiPoly::Exponents& e) const {
        uint64_t h = 0xcbf29ce484222325ULL;
        for (uint16_t v : e) {
            h ^= v;
            h *= 0x100000001b3ULL;
        }
        return static_cast<size_t>(h);
    }
};

bool exp_less(const MultiPoly::Exponents& a, const MultiPoly::Exponents& b) {
    return a < b; // lexicographic over the fixed variable order
}

} // namespace

const char* var_name(Var v) { return kVarNames[static_cast<size_t>(v)]; }

Var var_from_name(const std::string& name) {
    for (size_t i = 0; i < kVarCount; ++i)
        if (name == kVarNames[i]) return static_cast<Var>(i);
    throw Error("unknown variable name: " + name);
}

ExponentWeights& ExponentWeights::set(Var v, uint32_t w) {
    if (w == 0) throw Error("exponent weights must be >= 1");
    weight[static_cast<size_t>(v)] = w;
    return *this;
}

void MultiPoly::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return exp_less(a.exp, b.exp); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        const uint64_t c = t.coeff % ctx_.modulus;
        if (!out.empty() && out.back().exp == t.exp) {
            out.back().coeff = add_mod(out.back().coeff, c, ctx_.modulus);
        } else {
            out.push_back({t.exp, c});
        }
    }
    terms_.clear();
    for (const Term& t : out)
        if (t.coeff != 0) terms_.push_back(t);
}

MultiPoly MultiPoly::constant(const PAdicScalar& c) {
    MultiPoly f(c.context());
    if (!c.is_zero()) f.terms_.push_back({Exponents{}, c.residue()});
    return f;
}

MultiPoly MultiPoly::variable(PAdicContext ctx, Var v) {
    Exponents e{};
    e[static_cast<size_t>(v)] = 1;
    return monomial(ctx, e, 1);
}

MultiPoly MultiPoly::monomial(PAdicContext ctx, const Exponents& e, uint64_t coeff) {
    MultiPoly f(ctx);
    coeff %= ctx.modulus;
    if (coeff != 0) f.terms_.push_back({e, coeff});
    return f;
}

MultiPoly MultiPoly::from_terms(PAdicContext ctx, std::vector<Term> terms) {
    MultiPoly f(ctx);
    f.terms_ = std::move(terms);
    f.normalize();
    return f;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == Exponents{});
}

PAdicScalar MultiPoly::constant_term() const {
    for (const Term& t : terms_)
        if (t.exp == Exponents{}) return {ctx_, t.coeff};
    return {ctx_, 0};
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    require_same_context(a.ctx_, b.ctx_);
    MultiPoly out(a.ctx_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    // sorted merge
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() && ib != b.terms_.end()) {
        if (ia->exp == ib->exp) {
            const uint64_t c = add_mod(ia->coeff, ib->coeff, a.ctx_.modulus);
            if (c != 0) out.terms_.push_back({ia->exp, c});
            ++ia; ++ib;
        } else if (exp_less(ia->exp, ib->exp)) {
            out.terms_.push_back(*ia++);
        } else {
            out.terms_.push_back(*ib++);
        }
    }
    out.terms_.insert(out.terms_.end(), ia, a.terms_.end());
    out.terms_.insert(out.terms_.end(), ib, b.terms_.end());
    return out;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(ctx_);
    out.terms_.reserve(terms_.size());
    for (const Term& t : terms_)
        out.terms_.push_back({t.exp, ctx_.modulus - t.coeff});
    return out;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    require_same_context(a.ctx_, b.ctx_);
    MultiPoly out(a.ctx_);
    if (a.is_zero() || b.is_zero()) return out;
    std::unordered_map<MultiPoly::Exponents, uint64_t, ExpHash> acc;
    acc.reserve(a.terms_.size() * 2);
    const uint64_t m = a.ctx_.modulus;
    for (const auto& s : a.terms_) {
        for (const auto& t : b.terms_) {
            MultiPoly::Exponents e;
            for (size_t i = 0; i < kVarCount; ++i) {
                const uint32_t sum = uint32_t(s.exp[i]) + t.exp[i];
                if (sum > 0xffff) throw Error("exponent overflow in polynomial product");
                e[i] = static_cast<uint16_t>(sum);
            }
            uint64_t& slot = acc[e];
            slot = add_mod(slot, mul_mod(s.coeff, t.coeff, m), m);
        }
    }
    out.terms_.reserve(acc.size());
    for (const auto& [e, c] : acc)
        if (c != 0) out.terms_.push_back({e, c});
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const MultiPoly::Term& s, const MultiPoly::Term& t) { return exp_less(s.exp, t.exp); });
    return out;
}

MultiPoly MultiPoly::scaled(const PAdicScalar& c) const {
    require_same_context(ctx_, c.context());
    MultiPoly out(ctx_);
    if (c.is_zero()) return out;
    out.terms_.reserve(terms_.size());
    for (const Term& t : terms_) {
        const uint64_t v = mul_mod(t.coeff, c.residue(), ctx_.modulus);
        if (v != 0) out.terms_.push_back({t.exp, v});
    }
    return out;
}

MultiPoly operator*(const PAdicScalar& c, const MultiPoly& f) { return f.scaled(c); }

MultiPoly MultiPoly::pow(uint32_t k) const {
    MultiPoly result = constant(PAdicScalar(ctx_, 1));
    MultiPoly base = *this;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

MultiPoly MultiPoly::substitute(const std::map<Var, MultiPoly>& bindings) const {
    for (const auto& [v, g] : bindings)
        require_same_context(ctx_, g.context());
    // power caches per bound variable
    std::array<std::vector<MultiPoly>, kVarCount> powers;
    std::array<bool, kVarCount> bound{};
    for (const auto& [v, g] : bindings) {
        const size_t i = static_cast<size_t>(v);
        bound[i] = true;
        powers[i].push_back(constant(PAdicScalar(ctx_, 1)));
        powers[i].push_back(g);
    }
    const auto power_of = [&](size_t i, uint16_t e) -> const MultiPoly& {
        auto& cache = powers[i];
        while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
        return cache[e];
    };
    MultiPoly out(ctx_);
    for (const Term& t : terms_) {
        Exponents residual{};
        MultiPoly piece = constant(PAdicScalar(ctx_, t.coeff));
        for (size_t i = 0; i < kVarCount; ++i) {
            if (t.exp[i] == 0) continue;
            if (bound[i])
                piece = piece * power_of(i, t.exp[i]);
            else
                residual[i] = t.exp[i];
        }
        out = out + piece * monomial(ctx_, residual, 1);
    }
    return out;
}

MultiPoly MultiPoly::partial(Var v) const {
    const size_t i = static_cast<size_t>(v);
    MultiPoly out(ctx_);
    for (const Term& t : terms_) {
        if (t.exp[i] == 0) continue;
        const uint64_t c = mul_mod(t.coeff, t.exp[i] % ctx_.modulus, ctx_.modulus);
        if (c == 0) continue;
        Term d = t;
        d.exp[i] -= 1;
        d.coeff = c;
        out.terms_.push_back(d);
    }
    // term order is preserved by lowering one exponent only within ties;
    // re-sort to stay canonical
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& a, const Term& b) { return exp_less(a.exp, b.exp); });
    return out;
}

MultiPoly MultiPoly::coefficient_of(Var v, uint32_t k) const {
    const size_t i = static_cast<size_t>(v);
    MultiPoly out(ctx_);
    for (const Term& t : terms_) {
        if (t.exp[i] != k) continue;
        Term d = t;
        d.exp[i] = 0;
        out.terms_.push_back(d);
    }
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& a, const Term& b) { return exp_less(a.exp, b.exp); });
    return out;
}

bool MultiPoly::weighted_homogeneous(const ExponentWeights& w, uint32_t d) const {
    for (const Term& t : terms_) {
        uint64_t deg = 0;
        for (size_t i = 0; i < kVarCount; ++i) {
            if (t.exp[i] == 0) continue;
            if (w.weight[i] == 0)
                throw Error(std::string("no weight declared for variable ") + kVarNames[i]);
            deg += uint64_t(t.exp[i]) * w.weight[i];
        }
        if (deg != d) return false;
    }
    return true;
}

MultiPoly MultiPoly::reduce_to_precision(uint32_t k) const {
    const PAdicContext low = ctx_.lowered(k);
    MultiPoly out(low);
    for (const Term& t : terms_) {
        const uint64_t c = t.coeff % low.modulus;
        if (c != 0) out.terms_.push_back({t.exp, c});
    }
    return out;
}

MultiPoly MultiPoly::lift_to_precision(uint32_t k) const {
    if (k < ctx_.precision) throw Error("lift_to_precision: target below current");
    MultiPoly out(PAdicContext::make(ctx_.prime, k));
    out.terms_ = terms_;
    return out;
}

PAdicScalar MultiPoly::evaluate(const std::map<Var, PAdicScalar>& values) const {
    for (const auto& [v, s] : values)
        require_same_context(ctx_, s.context());
    uint64_t acc = 0;
    for (const Term& t : terms_) {
        uint64_t prod = t.coeff;
        for (size_t i = 0; i < kVarCount; ++i) {
            if (t.exp[i] == 0) continue;
            const auto it = values.find(static_cast<Var>(i));
            if (it == values.end())
                throw UnboundVariable(std::string("evaluate: no value for ") + kVarNames[i]);
            prod = mul_mod(prod, pow_mod(it->second.residue(), t.exp[i], ctx_.modulus), ctx_.modulus);
        }
        acc = add_mod(acc, prod, ctx_.modulus);
    }
    return {ctx_, acc};
}

uint32_t MultiPoly::degree_in(Var v) const {
    const size_t i = static_cast<size_t>(v);
    uint32_t d = 0;
    for (const Term& t : terms_) d = std::max<uint32_t>(d, t.exp[i]);
    return d;
}

uint32_t MultiPoly::total_degree() const {
    uint32_t d = 0;
    for (const Term& t : terms_) {
        uint32_t s = 0;
        for (uint16_t e : t.exp) s += e;
        d = std::max(d, s);
    }
    return d;
}

std::vector<Var> MultiPoly::variables_used() const {
    std::array<bool, kVarCount> used{};
    for (const Term& t : terms_)
        for (size_t i = 0; i < kVarCount; ++i)
            if (t.exp[i] > 0) used[i] = true;
    std::vector<Var> out;
    for (size_t i = 0; i < kVarCount; ++i)
        if (used[i]) out.push_back(static_cast<Var>(i));
    return out;
}

bool MultiPoly::uses_only(std::initializer_list<Var> allowed) const {
    std::array<bool, kVarCount> ok{};
    for (Var v : allowed) ok[static_cast<size_t>(v)] = true;
    for (const Term& t : terms_)
        for (size_t i = 0; i < kVarCount; ++i)
            if (t.exp[i] > 0 && !ok[i]) return false;
    return true;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest terms last (iteration order is ascending lex)
    for (const Term& t : terms_) {
        if (!first) os << " + ";
        first = false;
        bool printed = false;
        if (t.coeff != 1) {
            os << t.coeff;
            printed = true;
        }
        for (size_t i = 0; i < kVarCount; ++i) {
            if (t.exp[i] == 0) continue;
            if (printed) os << "*";
            os << kVarNames[i];
            if (t.exp[i] > 1) os << "^" << t.exp[i];
            printed = true;
        }
        if (!printed) os << 1;
    }
    return os.str();
}

} // namespace eulertop
