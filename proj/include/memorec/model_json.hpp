#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "memorec/model.hpp"

namespace memorec {

nlohmann::ordered_json metamodelToJson(const Metamodel& m);

/// Builds a metamodel from an already parsed JSON model document. Throws
/// SchemaViolation or CyclicInheritance.
Metamodel metamodelFromJson(const nlohmann::json& doc, std::string id, std::string sourceUri,
                            std::vector<std::string>* warnings = nullptr);

}  // namespace memorec
