#include "memorec/error.hpp"

namespace memorec {

std::string_view toString(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MalformedXml: return "MalformedXml";
        case ErrorCode::UnsupportedRoot: return "UnsupportedRoot";
        case ErrorCode::CyclicInheritance: return "CyclicInheritance";
        case ErrorCode::MalformedJson: return "MalformedJson";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::UnknownContext: return "UnknownContext";
        case ErrorCode::MixedSchemes: return "MixedSchemes";
        case ErrorCode::DuplicateMetamodelId: return "DuplicateMetamodelId";
        case ErrorCode::UnknownMetamodel: return "UnknownMetamodel";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::VersionMismatch: return "VersionMismatch";
        case ErrorCode::CorruptIndex: return "CorruptIndex";
        case ErrorCode::CorpusTooSmall: return "CorpusTooSmall";
        case ErrorCode::EmptyCaseSet: return "EmptyCaseSet";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(toString(code)) + ": " + message), code_(code) {}

}  // namespace memorec
