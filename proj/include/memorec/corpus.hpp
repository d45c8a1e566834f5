#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "memorec/encoder.hpp"
#include "memorec/hash.hpp"
#include "memorec/model.hpp"
#include "memorec/simgraph.hpp"

namespace memorec {

enum class SourceStatus { Accepted, Duplicate, Unparsable };

std::string_view toString(SourceStatus status) noexcept;

struct SourceEntry {
    std::string sourceUri;
    SourceStatus status = SourceStatus::Accepted;
    std::string id;  // content hash; empty for unparsable files

    bool operator==(const SourceEntry&) const = default;
};

struct SchemeIndex {
    std::vector<EncodedMetamodel> encoded;  // same order as CorpusIndex::metamodels
    SimilarityGraph graph;

    bool operator==(const SchemeIndex&) const = default;
};

struct CorpusIndex {
    std::vector<Metamodel> metamodels;  // accepted, ordered by sourceUri
    std::map<EncodingScheme, SchemeIndex> schemeIndexes;
    std::vector<SourceEntry> sourceLog;

    const Metamodel* find(std::string_view id) const;
    std::vector<std::string> ids() const;
    const SchemeIndex& scheme(EncodingScheme s) const;  // InvalidArgument if not indexed

    bool operator==(const CorpusIndex&) const = default;
};

/// Indexes already parsed metamodels (ids must be distinct). Every metamodel is
/// logged as accepted.
CorpusIndex buildIndex(std::vector<Metamodel> metamodels, std::span<const EncodingScheme> schemes);

/// Parses by extension: `.ecore` as XMI, `.json` as the JSON model format.
Metamodel parseModelBytes(std::string_view bytes, const std::string& sourceUri);
Metamodel loadModelFile(const std::filesystem::path& path);

/// Recursively scans `root` for `.ecore`/`.json` files in path order.
/// Unparsable files are logged and skipped; byte-identical files after the
/// first are logged as duplicates. Source URIs are paths relative to `root`.
CorpusIndex ingestDirectory(const std::filesystem::path& root,
                            std::span<const EncodingScheme> schemes);

/// `sourceUri,status,id` with a header row.
std::string ingestionReportCsv(const CorpusIndex& index);

inline constexpr std::string_view kIndexMagic = "MEMOREC-IDX";
inline constexpr int kIndexFormatVersion = 1;

void saveIndex(const CorpusIndex& index, const std::filesystem::path& path);
CorpusIndex loadIndex(const std::filesystem::path& path);

}  // namespace memorec
