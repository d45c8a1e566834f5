#pragma once

#include <string>
#include <string_view>

namespace memorec {

/// SHA-256 of the exact bytes, lowercase hex. Used as the metamodel id.
std::string contentHash(std::string_view bytes);

}  // namespace memorec
