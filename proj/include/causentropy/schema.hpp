#pragma once

#include <string>
#include <vector>

#include "causentropy/serialize.hpp"

namespace causentropy {

/// Validates `instance` against a JSON Schema document. Supports the subset
/// the shipped schemas use: type, enum, const, properties, required,
/// additionalProperties, items, minItems, minimum/maximum (and exclusive
/// forms), local $ref, allOf, oneOf, if/then. Returns one diagnostic per
/// violation as "<dotted.path>: <message>"; empty means valid.
std::vector<std::string> validate_against_schema(const Json& instance, const Json& schema);

/// The scenario configuration schema shipped in schemas/scenario.schema.json.
const Json& scenario_schema();

} // namespace causentropy
