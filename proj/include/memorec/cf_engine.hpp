#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "memorec/encoder.hpp"
#include "memorec/model.hpp"
#include "memorec/simgraph.hpp"

namespace memorec {

/// Binary context x item presence matrix of one metamodel under one scheme.
/// The set of views over the active metamodel and its neighbours is the
/// context-aware rating tensor; it is never stored as one object.
class RatingView {
public:
    RatingView() = default;
    explicit RatingView(const EncodedMetamodel& encoded);

    const std::string& metamodelId() const { return metamodelId_; }
    const std::vector<std::string>& contexts() const { return contexts_; }
    const std::vector<std::string>& items() const { return items_; }  // first appearance order

    bool hasContext(std::string_view context) const;
    /// 1 iff the pair context#item exists; 0 otherwise, including unknown names.
    int cell(std::string_view context, std::string_view item) const;
    /// Items rated 1 in `context`; empty for unknown contexts.
    const std::set<std::string>& rowItems(std::string_view context) const;

private:
    std::string metamodelId_;
    std::vector<std::string> contexts_;
    std::vector<std::string> items_;
    std::unordered_map<std::string, std::set<std::string>> rows_;
};

enum class ContextKind { Class, Package };

struct RecommendationQuery {
    EncodedMetamodel active;
    std::string activeContext;
    std::size_t k = 5;          // neighbour metamodels
    std::size_t kContexts = 5;  // neighbour contexts
    std::size_t n = 10;         // cut-off
};

/// Encodes `m` and resolves the context. The kind must agree with the scheme
/// (classes for SEs/IEs, packages for SEc/IEc). Under IEc any package of `m`,
/// or the artificial package name, selects the artificial package.
RecommendationQuery makeQuery(const Metamodel& m, EncodingScheme scheme, ContextKind kind,
                              std::string_view context, std::size_t k, std::size_t kContexts,
                              std::size_t n);

struct RankedEntry {
    std::string item;
    double score = 0.0;

    bool operator==(const RankedEntry&) const = default;
};

struct RankedList {
    std::vector<RankedEntry> entries;  // score descending, ties by item name
    bool noNeighbours = false;         // no corpus metamodel had sim1 > 0

    bool operator==(const RankedList&) const = default;
};

struct ScoredMetamodel {
    std::string id;
    double score = 0.0;
};

struct ContextRef {
    std::string metamodelId;
    std::string context;

    auto operator<=>(const ContextRef&) const = default;
};

struct ScoredContext {
    ContextRef ref;
    double score = 0.0;
};

struct CandidateContext {
    ContextRef ref;
    std::set<std::string> items;
};

struct NeighbourView {
    const RatingView* view = nullptr;
    double sim1 = 0.0;
};

/// Drops `activeId` and non-positive scores, sorts by score descending then id,
/// keeps the first k. Scores are compared at 1e-12 resolution so that rounding
/// noise cannot reorder metamodels with equal similarity.
std::vector<ScoredMetamodel> selectTopSimilar(std::vector<ScoredMetamodel> scored,
                                              std::string_view activeId, std::size_t k);

/// Jaccard between the active context and each candidate; keeps sim2 > 0,
/// sorted by sim2 descending then (metamodelId, context), first kContexts.
std::vector<ScoredContext> topSimilarContexts(const std::set<std::string>& activeItems,
                                              std::span<const CandidateContext> candidates,
                                              std::size_t kContexts);

/// sim1-weighted mean over neighbours of r(context, item, n). A neighbour
/// without the context contributes 0. Returns 0 for an empty neighbour list.
double combinedRating(std::string_view context, std::string_view item,
                      std::span<const NeighbourView> neighbours);

/// Intermediate state of one query, exposed for inspection and tests.
struct Neighbourhood {
    std::vector<ScoredMetamodel> metamodels;  // topsim(m)
    std::vector<ScoredContext> contexts;      // topsim(c)
    std::set<std::string> activeItems;        // F(c)
    std::set<std::string> candidateItems;     // union of F(d) over topsim(c), minus F(c)
};

/// Corpus state for one encoding scheme. Immutable after construction; every
/// query method is a const read and safe to call concurrently.
class Recommender {
public:
    explicit Recommender(std::vector<EncodedMetamodel> corpus);

    std::size_t size() const { return corpus_.size(); }
    const SimilarityGraph& graph() const { return graph_; }
    const std::vector<EncodedMetamodel>& corpus() const { return corpus_; }
    const RatingView& view(std::string_view metamodelId) const;

    /// sim1 of an external metamodel against the corpus, top k.
    std::vector<ScoredMetamodel> topSimilarMetamodels(const EncodedMetamodel& active,
                                                      std::size_t k) const;
    /// Same for a corpus member, against the other members.
    std::vector<ScoredMetamodel> topSimilarMetamodels(std::string_view memberId,
                                                      std::size_t k) const;

    Neighbourhood neighbourhood(const RecommendationQuery& q) const;

    /// Predicted rating of `item` for the active context. Falls back to the
    /// active context's mean rating when it has no similar contexts.
    double predictRating(const RecommendationQuery& q, std::string_view item) const;

    RankedList recommend(const RecommendationQuery& q) const;

private:
    std::vector<NeighbourView> neighbourViews(const Neighbourhood& nb) const;
    double score(const Neighbourhood& nb, std::span<const NeighbourView> views,
                 std::string_view item) const;
    void checkQuery(const RecommendationQuery& q) const;

    std::vector<EncodedMetamodel> corpus_;
    SimilarityGraph graph_;
    std::vector<RatingView> views_;
};

}  // namespace memorec
