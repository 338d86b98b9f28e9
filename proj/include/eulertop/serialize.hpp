#pragma once

#include <json.hpp>

#include "eulertop/classical.hpp"
#include "eulertop/flow.hpp"
#include "eulertop/hasse.hpp"

namespace eulertop {

using nlohmann::json; // keys sort alphabetically, so dumps are canonical

json to_json(const PAdicScalar& s);
PAdicScalar scalar_from_json(const json& j);

// {"variables": [names...], "terms": [[[exponents...], "coeff"], ...]}
// with exponent vectors relative to the declared variable list.
json to_json(const MultiPoly& f);
MultiPoly poly_from_json(const json& j, PAdicContext ctx);

json to_json(const LevelSetElement& e);

json to_json(const DenomExponents& d);
DenomExponents denom_from_json(const json& j);

json to_json(const LocalizedElement& e);
LocalizedElement localized_from_json(const json& j, const XRingPtr& ring);

json params_to_json(const SystemParams& p);
SystemParams params_from_json(const json& j);

inline constexpr const char* kFlowSchema = "eulertop.flow.v1";

struct FlowCheckStamp {
    std::string name;
    bool passed = false;
    std::string timestamp; // ISO 8601 UTC
};

json flow_to_json(const FlowDescriptor& flow, const std::vector<FlowCheckStamp>& checks = {});
FlowDescriptor flow_from_json(const json& j);

json to_json(const PointCountReport& r);

std::string iso8601_utc_now();

} // namespace eulertop
