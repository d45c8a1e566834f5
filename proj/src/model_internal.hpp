#pragma once

#include <string>
#include <vector>

#include "memorec/model.hpp"

namespace memorec::detail {

// Shared post-parse step for every input format: drops duplicate class names
// within a package, resolves supertypes by name and rejects inheritance cycles.
void finalizeMetamodel(Metamodel& m, std::vector<std::string>* warnings);

inline void warn(std::vector<std::string>* warnings, std::string message) {
    if (warnings != nullptr) warnings->push_back(std::move(message));
}

}  // namespace memorec::detail
