#pragma once

#include "p4d/algebra.hpp"

#include <json.hpp>

namespace p4d {

using Json = nlohmann::json;

/// [{"coeff": "p/q", "exps": {"x": 2, ...}}, ...] in canonical term order.
Json to_json(const Polynomial& p);
/// {"num": [...], "den": [...]}
Json to_json(const RationalFunction& f);

Polynomial polynomial_from_json(const Json& j);
RationalFunction rational_from_json(const Json& j);

}  // namespace p4d
