#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "memorec/encoder.hpp"

namespace memorec {

/// Sparse TF-IDF weights of one metamodel, keyed by item name.
struct FeatureVector {
    std::map<std::string, double> weights;
};

/// Bipartite metamodel -> item graph. Edge weight is the number of pairs of the
/// metamodel carrying that item; document frequency is the number of metamodels
/// adjacent to the item. Stored as CSR rows sorted by item id; item ids are
/// positions in the lexicographically sorted item universe.
class SimilarityGraph {
public:
    struct Row {
        std::span<const std::uint32_t> items;
        std::span<const double> weights;
    };

    struct Similarity {
        std::size_t member;
        double score;
    };

    SimilarityGraph() = default;

    static SimilarityGraph build(std::span<const EncodedMetamodel> corpus);

    std::optional<EncodingScheme> scheme() const { return scheme_; }
    std::size_t metamodelCount() const { return metamodelIds_.size(); }
    const std::vector<std::string>& metamodelIds() const { return metamodelIds_; }
    const std::vector<std::string>& itemNames() const { return itemNames_; }

    std::optional<std::size_t> metamodelIndex(std::string_view id) const;
    std::optional<std::uint32_t> itemId(std::string_view item) const;

    /// 0 when there is no edge.
    int edgeWeight(std::string_view metamodelId, std::string_view item) const;
    /// 0 for items outside the universe.
    int docFreq(std::string_view item) const;

    Row row(std::size_t member) const;

    /// Cosine similarity between `active` and every member, computed as if
    /// `active` were one more node of the graph (|M| and document frequencies
    /// include it). If `replaces` names a member, that member stands for the
    /// active metamodel: it is left out of the counts and of the result.
    std::vector<Similarity> similarities(const std::map<std::string, int>& activeCounts,
                                         std::optional<std::size_t> replaces) const;

    bool operator==(const SimilarityGraph&) const = default;

private:
    std::optional<EncodingScheme> scheme_;
    std::vector<std::string> metamodelIds_;
    std::unordered_map<std::string, std::size_t> memberIndex_;
    std::vector<std::string> itemNames_;
    std::vector<std::size_t> rowOffsets_{0};
    std::vector<std::uint32_t> rowItems_;
    std::vector<double> rowWeights_;
    std::vector<int> docFreq_;
};

inline SimilarityGraph buildGraph(std::span<const EncodedMetamodel> corpus) {
    return SimilarityGraph::build(corpus);
}

/// Item multiplicities of one encoded metamodel.
std::map<std::string, int> itemCounts(const EncodedMetamodel& encoded);

/// weight(f) = edgeWeight(m, f) * log10(|M| / docFreq(f)).
FeatureVector tfidfVector(const SimilarityGraph& g, std::string_view metamodelId);

/// Missing keys count as 0; returns 0 if either norm is 0.
double cosine(const FeatureVector& a, const FeatureVector& b);

/// |a ∩ b| / |a ∪ b|; 0 when both are empty.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

/// Tab separated `metamodelId item weight` lines.
std::string dumpGraph(const SimilarityGraph& g);

}  // namespace memorec
