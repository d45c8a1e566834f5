#include "memorec/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "memorec/error.hpp"
#include "memorec/model_json.hpp"

namespace memorec {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string readFile(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
    return buffer.str();
}

bool isCandidate(const fs::path& path) {
    const auto ext = path.extension();
    return ext == ".ecore" || ext == ".json";
}

void buildSchemes(CorpusIndex& index, std::span<const EncodingScheme> schemes) {
    for (const auto s : schemes) {
        SchemeIndex si;
        si.encoded.reserve(index.metamodels.size());
        for (const auto& m : index.metamodels) si.encoded.push_back(encode(m, s));
        si.graph = SimilarityGraph::build(si.encoded);
        index.schemeIndexes[s] = std::move(si);
    }
}

std::optional<SourceStatus> statusFromString(std::string_view s) {
    for (auto st : {SourceStatus::Accepted, SourceStatus::Duplicate, SourceStatus::Unparsable}) {
        if (toString(st) == s) return st;
    }
    return std::nullopt;
}

}  // namespace

std::string_view toString(SourceStatus status) noexcept {
    switch (status) {
        case SourceStatus::Accepted: return "accepted";
        case SourceStatus::Duplicate: return "duplicate";
        case SourceStatus::Unparsable: return "unparsable";
    }
    return "?";
}

const Metamodel* CorpusIndex::find(std::string_view id) const {
    for (const auto& m : metamodels) {
        if (m.id == id) return &m;
    }
    return nullptr;
}

std::vector<std::string> CorpusIndex::ids() const {
    std::vector<std::string> out;
    out.reserve(metamodels.size());
    for (const auto& m : metamodels) out.push_back(m.id);
    return out;
}

const SchemeIndex& CorpusIndex::scheme(EncodingScheme s) const {
    const auto it = schemeIndexes.find(s);
    if (it == schemeIndexes.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "scheme " + std::string(toString(s)) + " is not indexed");
    }
    return it->second;
}

CorpusIndex buildIndex(std::vector<Metamodel> metamodels, std::span<const EncodingScheme> schemes) {
    CorpusIndex index;
    std::unordered_set<std::string> seen;
    for (const auto& m : metamodels) {
        if (!seen.insert(m.id).second) throw Error(ErrorCode::DuplicateMetamodelId, m.id);
        index.sourceLog.push_back({m.sourceUri, SourceStatus::Accepted, m.id});
    }
    index.metamodels = std::move(metamodels);
    buildSchemes(index, schemes);
    return index;
}

Metamodel parseModelBytes(std::string_view bytes, const std::string& sourceUri) {
    if (fs::path(sourceUri).extension() == ".json") return parseJsonModel(bytes, sourceUri);
    return parseEcoreXmi(bytes, sourceUri);
}

Metamodel loadModelFile(const fs::path& path) {
    return parseModelBytes(readFile(path), path.string());
}

CorpusIndex ingestDirectory(const fs::path& root, std::span<const EncodingScheme> schemes) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw Error(ErrorCode::IoFailure, "not a readable directory: " + root.string());
    }

    std::vector<std::pair<std::string, fs::path>> files;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw Error(ErrorCode::IoFailure, root.string() + ": " + ec.message());
    for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
        if (ec) throw Error(ErrorCode::IoFailure, root.string() + ": " + ec.message());
        if (it->is_regular_file() && isCandidate(it->path())) {
            files.emplace_back(fs::relative(it->path(), root).generic_string(), it->path());
        }
    }
    std::sort(files.begin(), files.end());

    CorpusIndex index;
    std::unordered_set<std::string> seen;
    for (const auto& [uri, path] : files) {
        const std::string bytes = readFile(path);
        try {
            auto m = parseModelBytes(bytes, uri);
            if (!seen.insert(m.id).second) {
                index.sourceLog.push_back({uri, SourceStatus::Duplicate, m.id});
                continue;
            }
            index.sourceLog.push_back({uri, SourceStatus::Accepted, m.id});
            index.metamodels.push_back(std::move(m));
        } catch (const Error&) {
            index.sourceLog.push_back({uri, SourceStatus::Unparsable, ""});
        }
    }
    buildSchemes(index, schemes);
    return index;
}

std::string ingestionReportCsv(const CorpusIndex& index) {
    std::string out = "sourceUri,status,id\n";
    for (const auto& e : index.sourceLog) {
        out += e.sourceUri;
        out += ',';
        out += toString(e.status);
        out += ',';
        out += e.id;
        out += '\n';
    }
    return out;
}

void saveIndex(const CorpusIndex& index, const fs::path& path) {
    nlohmann::ordered_json doc;
    doc["schemes"] = json::array();
    for (const auto& [s, _] : index.schemeIndexes) doc["schemes"].push_back(toString(s));
    doc["sourceLog"] = json::array();
    for (const auto& e : index.sourceLog) {
        doc["sourceLog"].push_back({{"sourceUri", e.sourceUri}, {"status", toString(e.status)}, {"id", e.id}});
    }
    doc["metamodels"] = json::array();
    for (const auto& m : index.metamodels) {
        nlohmann::ordered_json entry;
        entry["id"] = m.id;
        entry["sourceUri"] = m.sourceUri;
        entry["model"] = metamodelToJson(m);
        doc["metamodels"].push_back(std::move(entry));
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    out << kIndexMagic << '\n' << kIndexFormatVersion << '\n' << doc.dump() << '\n';
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
}

CorpusIndex loadIndex(const fs::path& path) {
    const std::string bytes = readFile(path);
    std::istringstream in(bytes);
    std::string magic;
    std::string versionLine;
    if (!std::getline(in, magic) || magic != kIndexMagic) {
        throw Error(ErrorCode::CorruptIndex, path.string() + " has no index header");
    }
    if (!std::getline(in, versionLine)) throw Error(ErrorCode::CorruptIndex, "missing format version");
    int version = 0;
    try {
        std::size_t used = 0;
        version = std::stoi(versionLine, &used);
        if (used != versionLine.size()) throw std::invalid_argument(versionLine);
    } catch (const std::exception&) {
        throw Error(ErrorCode::CorruptIndex, "bad format version: " + versionLine);
    }
    if (version != kIndexFormatVersion) {
        throw Error(ErrorCode::VersionMismatch, "index format version " + std::to_string(version) +
                                                    ", expected " +
                                                    std::to_string(kIndexFormatVersion));
    }

    CorpusIndex index;
    std::vector<EncodingScheme> schemes;
    try {
        const auto rest = std::string_view(bytes).substr(static_cast<std::size_t>(in.tellg()));
        const json doc = json::parse(rest);
        for (const auto& s : doc.at("schemes")) {
            const auto parsed = parseScheme(s.get<std::string>());
            if (!parsed) throw Error(ErrorCode::CorruptIndex, "unknown scheme " + s.dump());
            schemes.push_back(*parsed);
        }
        for (const auto& e : doc.at("sourceLog")) {
            const auto status = statusFromString(e.at("status").get<std::string>());
            if (!status) throw Error(ErrorCode::CorruptIndex, "unknown status " + e.at("status").dump());
            index.sourceLog.push_back({e.at("sourceUri").get<std::string>(), *status,
                                       e.at("id").get<std::string>()});
        }
        for (const auto& m : doc.at("metamodels")) {
            index.metamodels.push_back(metamodelFromJson(m.at("model"), m.at("id").get<std::string>(),
                                                         m.at("sourceUri").get<std::string>()));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::CorruptIndex, e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::CorruptIndex) throw;
        throw Error(ErrorCode::CorruptIndex, e.what());
    }
    buildSchemes(index, schemes);
    return index;
}

}  // namespace memorec
