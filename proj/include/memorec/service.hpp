#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "memorec/cf_engine.hpp"
#include "memorec/corpus.hpp"

namespace httplib {
class Server;
}

namespace memorec {

struct ServiceConfig {
    std::string indexPath;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t defaultK = 5;
    std::size_t defaultKContexts = 5;
    std::size_t defaultN = 10;
    EncodingScheme defaultScheme = EncodingScheme::SEs;
};

/// Parses `host:port`; throws InvalidArgument.
void parseListenAddress(std::string_view address, ServiceConfig& config);

struct HttpResult {
    int status = 200;
    std::string body;  // JSON
};

/// Read-only facade over a loaded corpus index, one engine per indexed scheme.
/// The CLI and the HTTP routes both go through `recommend`.
class RecommendationService {
public:
    RecommendationService(CorpusIndex index, ServiceConfig config);

    const CorpusIndex& index() const { return index_; }
    const ServiceConfig& config() const { return config_; }

    /// InvalidArgument when the scheme is not indexed.
    const Recommender& engine(EncodingScheme scheme) const;

    RankedList recommend(const Metamodel& active, EncodingScheme scheme, ContextKind kind,
                         std::string_view context, std::size_t k, std::size_t kContexts,
                         std::size_t n) const;

    HttpResult health() const;
    HttpResult corpusStats() const;
    HttpResult recommendations(std::string_view requestBody) const;

private:
    CorpusIndex index_;
    ServiceConfig config_;
    std::map<EncodingScheme, std::unique_ptr<Recommender>> engines_;
};

void mountRoutes(httplib::Server& server, const RecommendationService& service);

/// `{"entries":[{"item":..,"score":..}]}`
std::string rankedListJson(const RankedList& list);

}  // namespace memorec
