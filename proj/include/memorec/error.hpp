#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace memorec {

enum class ErrorCode {
    MalformedXml,
    UnsupportedRoot,
    CyclicInheritance,
    MalformedJson,
    SchemaViolation,
    UnknownContext,
    MixedSchemes,
    DuplicateMetamodelId,
    UnknownMetamodel,
    IoFailure,
    VersionMismatch,
    CorruptIndex,
    CorpusTooSmall,
    EmptyCaseSet,
    InvalidArgument,
};

std::string_view toString(ErrorCode code) noexcept;

/// All library failures are reported through this exception; `code()` is stable
/// and is what the CLI and HTTP layers map to exit codes and status codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace memorec
