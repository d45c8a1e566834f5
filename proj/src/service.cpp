#include "memorec/service.hpp"

#include <httplib.h>
#include <json.hpp>

#include "memorec/error.hpp"
#include "memorec/model_json.hpp"

namespace memorec {

using nlohmann::json;

namespace {

HttpResult errorResult(int status, std::string_view code, const std::string& message) {
    json body;
    body["error"] = {{"code", code}, {"message", message}};
    return {status, body.dump()};
}

int statusFor(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownContext: return 404;
        case ErrorCode::MalformedJson:
        case ErrorCode::SchemaViolation:
        case ErrorCode::CyclicInheritance:
        case ErrorCode::InvalidArgument:
        case ErrorCode::MixedSchemes: return 400;
        default: return 500;
    }
}

std::size_t optionalCount(const json& body, const char* key, std::size_t fallback, bool allowZero) {
    const auto it = body.find(key);
    if (it == body.end() || it->is_null()) return fallback;
    if (!it->is_number_integer() || it->get<long long>() < (allowZero ? 0 : 1)) {
        throw Error(ErrorCode::InvalidArgument, std::string("\"") + key + "\" must be a " +
                                                    (allowZero ? "non-negative" : "positive") +
                                                    " integer");
    }
    return it->get<std::size_t>();
}

}  // namespace

void parseListenAddress(std::string_view address, ServiceConfig& config) {
    const auto colon = address.rfind(':');
    if (colon == std::string_view::npos || colon + 1 == address.size()) {
        throw Error(ErrorCode::InvalidArgument, "listen address must be host:port");
    }
    int port = 0;
    try {
        std::size_t used = 0;
        const std::string digits(address.substr(colon + 1));
        port = std::stoi(digits, &used);
        if (used != digits.size()) throw std::invalid_argument(digits);
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "bad port in " + std::string(address));
    }
    if (port < 0 || port > 65535) throw Error(ErrorCode::InvalidArgument, "port out of range");
    config.host = colon == 0 ? "0.0.0.0" : std::string(address.substr(0, colon));
    config.port = port;
}

RecommendationService::RecommendationService(CorpusIndex index, ServiceConfig config)
    : index_(std::move(index)), config_(std::move(config)) {
    for (const auto& [scheme, si] : index_.schemeIndexes) {
        engines_.emplace(scheme, std::make_unique<Recommender>(si.encoded));
    }
}

const Recommender& RecommendationService::engine(EncodingScheme scheme) const {
    const auto it = engines_.find(scheme);
    if (it == engines_.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "scheme " + std::string(toString(scheme)) + " is not indexed");
    }
    return *it->second;
}

RankedList RecommendationService::recommend(const Metamodel& active, EncodingScheme scheme,
                                            ContextKind kind, std::string_view context,
                                            std::size_t k, std::size_t kContexts,
                                            std::size_t n) const {
    const auto& e = engine(scheme);
    return e.recommend(makeQuery(active, scheme, kind, context, k, kContexts, n));
}

HttpResult RecommendationService::health() const {
    json body = {{"status", "ok"}, {"metamodels", index_.metamodels.size()}};
    return {200, body.dump()};
}

HttpResult RecommendationService::corpusStats() const {
    json schemes = json::object();
    for (const auto& [scheme, si] : index_.schemeIndexes) {
        std::size_t pairs = 0;
        for (const auto& e : si.encoded) pairs += e.pairs.size();
        schemes[std::string(toString(scheme))] = {{"metamodels", si.graph.metamodelCount()},
                                                  {"items", si.graph.itemNames().size()},
                                                  {"pairs", pairs}};
    }
    json body = {{"metamodels", index_.metamodels.size()}, {"schemes", schemes}};
    return {200, body.dump()};
}

HttpResult RecommendationService::recommendations(std::string_view requestBody) const {
    try {
        json body;
        try {
            body = json::parse(requestBody.begin(), requestBody.end());
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::MalformedJson, e.what());
        }
        if (!body.is_object()) throw Error(ErrorCode::SchemaViolation, "request must be an object");

        const auto model = body.find("model");
        if (model == body.end()) throw Error(ErrorCode::SchemaViolation, "missing \"model\"");
        const std::string modelBytes = model->dump();
        const auto active = metamodelFromJson(*model, contentHash(modelBytes), "request");

        EncodingScheme scheme = config_.defaultScheme;
        if (const auto s = body.find("scheme"); s != body.end() && !s->is_null()) {
            const auto parsed = s->is_string() ? parseScheme(s->get<std::string>()) : std::nullopt;
            if (!parsed) throw Error(ErrorCode::InvalidArgument, "unknown scheme " + s->dump());
            scheme = *parsed;
        }

        const auto context = body.find("context");
        if (context == body.end() || !context->is_object()) {
            throw Error(ErrorCode::SchemaViolation, "missing \"context\" object");
        }
        const auto kind = context->find("kind");
        const auto name = context->find("name");
        if (kind == context->end() || !kind->is_string() || name == context->end() ||
            !name->is_string()) {
            throw Error(ErrorCode::SchemaViolation, "context needs string \"kind\" and \"name\"");
        }
        ContextKind contextKind;
        if (*kind == "class") {
            contextKind = ContextKind::Class;
        } else if (*kind == "package") {
            contextKind = ContextKind::Package;
        } else {
            throw Error(ErrorCode::InvalidArgument, "context kind must be class or package");
        }

        const auto k = optionalCount(body, "k", config_.defaultK, false);
        const auto kContexts = optionalCount(body, "kContexts",
                                             body.contains("k") ? k : config_.defaultKContexts, false);
        const auto n = optionalCount(body, "n", config_.defaultN, true);

        const auto list = recommend(active, scheme, contextKind, name->get<std::string>(), k,
                                    kContexts, n);
        return {200, rankedListJson(list)};
    } catch (const Error& e) {
        return errorResult(statusFor(e.code()), toString(e.code()), e.what());
    } catch (const std::exception& e) {
        return errorResult(500, "Internal", e.what());
    }
}

std::string rankedListJson(const RankedList& list) {
    json entries = json::array();
    for (const auto& e : list.entries) entries.push_back({{"item", e.item}, {"score", e.score}});
    return json{{"entries", entries}}.dump();
}

void mountRoutes(httplib::Server& server, const RecommendationService& service) {
    auto reply = [](httplib::Response& res, const HttpResult& result) {
        res.status = result.status;
        res.set_content(result.body, "application/json");
    };
    server.Get("/api/health", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, service.health());
    });
    server.Get("/api/corpus/stats", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, service.corpusStats());
    });
    server.Post("/api/recommendations",
                [&service, reply](const httplib::Request& req, httplib::Response& res) {
                    reply(res, service.recommendations(req.body));
                });
}

}  // namespace memorec
