#include "eulertop/serialize.hpp"

#include <chrono>
#include <ctime>

namespace eulertop {

json to_json(const PAdicScalar& s) {
    return json{{"p", s.context().prime},
                {"precision", s.context().precision},
                {"residue", std::to_string(s.residue())}};
}

PAdicScalar scalar_from_json(const json& j) {
    const PAdicContext ctx =
        PAdicContext::make(j.at("p").get<uint32_t>(), j.at("precision").get<uint32_t>());
    return {ctx, std::stoull(j.at("residue").get<std::string>())};
}

json to_json(const MultiPoly& f) {
    const std::vector<Var> vars = f.variables_used();
    json names = json::array();
    for (Var v : vars) names.push_back(var_name(v));
    json terms = json::array();
    for (const auto& t : f.terms()) {
        json exps = json::array();
        for (Var v : vars) exps.push_back(t.exp[static_cast<size_t>(v)]);
        terms.push_back(json::array({exps, std::to_string(t.coeff)}));
    }
    return json{{"variables", names}, {"terms", terms}};
}

MultiPoly poly_from_json(const json& j, PAdicContext ctx) {
    std::vector<Var> vars;
    for (const auto& name : j.at("variables")) vars.push_back(var_from_name(name.get<std::string>()));
    std::vector<MultiPoly::Term> terms;
    for (const auto& entry : j.at("terms")) {
        MultiPoly::Term t;
        const auto& exps = entry.at(0);
        if (exps.size() != vars.size())
            throw Error("poly_from_json: exponent vector length mismatch");
        for (size_t i = 0; i < vars.size(); ++i)
            t.exp[static_cast<size_t>(vars[i])] = exps.at(i).get<uint16_t>();
        t.coeff = std::stoull(entry.at(1).get<std::string>());
        terms.push_back(t);
    }
    return MultiPoly::from_terms(ctx, std::move(terms));
}

namespace {

// dense coefficient list of a polynomial univariate in x3
json univariate_coefficients(const MultiPoly& f) {
    json out = json::array();
    if (f.is_zero()) return out;
    std::vector<std::string> coeffs(f.degree_in(Var::x3) + 1, "0");
    for (const auto& t : f.terms())
        coeffs[t.exp[static_cast<size_t>(Var::x3)]] = std::to_string(t.coeff);
    for (auto& c : coeffs) out.push_back(std::move(c));
    return out;
}

} // namespace

json to_json(const LevelSetElement& e) {
    return json{{"c1", std::to_string(e.frame()->spec().c1.residue())},
                {"c2", std::to_string(e.frame()->spec().c2.residue())},
                {"b0", univariate_coefficients(e.b0())},
                {"b1", univariate_coefficients(e.b1())},
                {"b2", univariate_coefficients(e.b2())},
                {"b12", univariate_coefficients(e.b12())}};
}

json to_json(const DenomExponents& d) {
    return json{{"hasse", d.hasse}, {"disc", d.disc}, {"x1", d.x1}, {"x2", d.x2}};
}

DenomExponents denom_from_json(const json& j) {
    return DenomExponents{j.at("hasse").get<uint32_t>(), j.at("disc").get<uint32_t>(),
                          j.at("x1").get<uint32_t>(), j.at("x2").get<uint32_t>()};
}

json to_json(const LocalizedElement& e) {
    return json{{"numerator", to_json(e.numerator())}, {"denominator", to_json(e.denominator())}};
}

LocalizedElement localized_from_json(const json& j, const XRingPtr& ring) {
    return {ring, poly_from_json(j.at("numerator"), ring->context()),
            denom_from_json(j.at("denominator"))};
}

json params_to_json(const SystemParams& p) {
    return json{{"p", p.ctx.prime},
                {"precision", p.ctx.precision},
                {"a", json::array({std::to_string(p.a1.residue()), std::to_string(p.a2.residue()),
                                   std::to_string(p.a3.residue())})}};
}

SystemParams params_from_json(const json& j) {
    const PAdicContext ctx =
        PAdicContext::make(j.at("p").get<uint32_t>(), j.at("precision").get<uint32_t>());
    const auto& a = j.at("a");
    return SystemParams::make(ctx, PAdicScalar(ctx, std::stoull(a.at(0).get<std::string>())),
                              PAdicScalar(ctx, std::stoull(a.at(1).get<std::string>())),
                              PAdicScalar(ctx, std::stoull(a.at(2).get<std::string>())));
}

json flow_to_json(const FlowDescriptor& flow, const std::vector<FlowCheckStamp>& checks) {
    json j{{"schema", kFlowSchema},
           {"params", params_to_json(flow.ring->params())},
           {"delta_x3", to_json(flow.delta_x3)},
           {"phi_x3", to_json(flow.phi_x3)},
           {"phi1_squared", to_json(flow.phi1_squared)},
           {"phi2_squared", to_json(flow.phi2_squared)},
           {"phi1", flow.phi1 ? to_json(*flow.phi1) : json(nullptr)},
           {"phi2", flow.phi2 ? to_json(*flow.phi2) : json(nullptr)}};
    json manifest = json::array();
    for (const auto& c : checks)
        manifest.push_back(json{{"name", c.name}, {"passed", c.passed}, {"timestamp", c.timestamp}});
    j["checks"] = manifest;
    return j;
}

FlowDescriptor flow_from_json(const json& j) {
    if (j.at("schema").get<std::string>() != kFlowSchema)
        throw Error("flow_from_json: unsupported schema " + j.at("schema").get<std::string>());
    const SystemParams params = params_from_json(j.at("params"));
    const XRingPtr ring = XRingData::make(params);
    FlowDescriptor flow{ring,
                        localized_from_json(j.at("delta_x3"), ring),
                        localized_from_json(j.at("phi_x3"), ring),
                        localized_from_json(j.at("phi1_squared"), ring),
                        localized_from_json(j.at("phi2_squared"), ring),
                        std::nullopt,
                        std::nullopt};
    if (!j.at("phi1").is_null()) flow.phi1 = localized_from_json(j.at("phi1"), ring);
    if (!j.at("phi2").is_null()) flow.phi2 = localized_from_json(j.at("phi2"), ring);
    return flow;
}

json to_json(const PointCountReport& r) {
    json coeffs = json::array();
    for (uint64_t c : r.poly) coeffs.push_back(std::to_string(c));
    json j{{"p", r.prime},
           {"degree", r.degree},
           {"poly", coeffs},
           {"invariant_mod_p", r.invariant_mod_p},
           {"affine_count", r.affine_count},
           {"affine_delta", r.affine_delta},
           {"smooth_model", r.smooth_model}};
    if (r.degree == 4) j["lead_symbol"] = r.lead_symbol;
    if (r.smooth_model) {
        j["projective_count"] = r.projective_count;
        j["projective_delta"] = r.projective_delta;
    }
    return j;
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace eulertop
