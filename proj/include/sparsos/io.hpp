#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "sparsos/abelian.hpp"
#include "sparsos/certify.hpp"
#include "sparsos/covers.hpp"
#include "sparsos/moments.hpp"

namespace sparsos {

using Json = nlohmann::json;

/// "Z6", "Z2^4", "Z4xZ3", "Z2^3xZ5". Throws kInvalidSpec.
GroupSpec parse_group_spec(const std::string& text);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const Json& j);

/// Parses text, throwing kFormat on malformed JSON.
Json parse_json(const std::string& text);

Json to_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j);

Json to_json(const GroupElement& g);
GroupElement element_from_json(const Json& j, const GroupSpec& group);

/// {"group": [...], "coefficients": [{"index": [...], "re": x, "im": y}, ...]}
Json to_json(const FourierFunction& f);
FourierFunction function_from_json(const Json& j);

/// Group, connection set, both graphs, elimination order, cliques with
/// translations and the support. Reading re-validates the cover.
Json to_json(const ChordalCover& c);
ChordalCover cover_from_json(const Json& j);

/// Group, declared support, scale and terms; residual when given.
Json to_json(const SosCertificate& cert, std::optional<double> residual = std::nullopt);
SosCertificate certificate_from_json(const Json& j);

/// Group, S, T, variable_index, pins, matrix_map, mode and the involution.
/// Reading re-checks every structural invariant.
Json to_json(const LiftDescription& lift);
LiftDescription lift_from_json(const Json& j);

/// Moments as [{"index": [...], "re": x, "im": y}, ...].
Json to_json(const MomentMap& y);
MomentMap moments_from_json(const Json& j, const GroupSpec& group);

/// Connection set file: {"group": [...], "support": [[...], ...]}.
std::set<GroupElement> support_from_json(const Json& j, const GroupSpec& group);

}  // namespace sparsos
