#include "memorec/simgraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "memorec/error.hpp"
#include "memorec/simd/kernels.hpp"

namespace memorec {

std::map<std::string, int> itemCounts(const EncodedMetamodel& encoded) {
    std::map<std::string, int> counts;
    for (const auto& p : encoded.pairs) ++counts[p.item];
    return counts;
}

SimilarityGraph SimilarityGraph::build(std::span<const EncodedMetamodel> corpus) {
    SimilarityGraph g;
    std::set<std::string> universe;
    for (const auto& e : corpus) {
        if (g.scheme_ && *g.scheme_ != e.scheme) {
            throw Error(ErrorCode::MixedSchemes, "corpus mixes " + std::string(toString(*g.scheme_)) +
                                                     " and " + std::string(toString(e.scheme)));
        }
        g.scheme_ = e.scheme;
        if (!g.memberIndex_.emplace(e.metamodelId, g.metamodelIds_.size()).second) {
            throw Error(ErrorCode::DuplicateMetamodelId, e.metamodelId);
        }
        g.metamodelIds_.push_back(e.metamodelId);
        for (const auto& p : e.pairs) universe.insert(p.item);
    }
    if (universe.size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
        throw Error(ErrorCode::InvalidArgument, "item universe too large");
    }
    g.itemNames_.assign(universe.begin(), universe.end());
    g.docFreq_.assign(g.itemNames_.size(), 0);

    for (const auto& e : corpus) {
        for (const auto& [item, count] : itemCounts(e)) {
            const auto id = *g.itemId(item);
            g.rowItems_.push_back(id);
            g.rowWeights_.push_back(static_cast<double>(count));
            ++g.docFreq_[id];
        }
        g.rowOffsets_.push_back(g.rowItems_.size());
    }
    return g;
}

std::optional<std::size_t> SimilarityGraph::metamodelIndex(std::string_view id) const {
    const auto it = memberIndex_.find(std::string(id));
    if (it == memberIndex_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> SimilarityGraph::itemId(std::string_view item) const {
    const auto it = std::lower_bound(itemNames_.begin(), itemNames_.end(), item);
    if (it == itemNames_.end() || *it != item) return std::nullopt;
    return static_cast<std::uint32_t>(it - itemNames_.begin());
}

SimilarityGraph::Row SimilarityGraph::row(std::size_t member) const {
    const auto begin = rowOffsets_.at(member);
    const auto end = rowOffsets_.at(member + 1);
    return {std::span(rowItems_).subspan(begin, end - begin),
            std::span(rowWeights_).subspan(begin, end - begin)};
}

int SimilarityGraph::edgeWeight(std::string_view metamodelId, std::string_view item) const {
    const auto member = metamodelIndex(metamodelId);
    const auto id = itemId(item);
    if (!member || !id) return 0;
    const auto r = row(*member);
    const auto it = std::lower_bound(r.items.begin(), r.items.end(), *id);
    if (it == r.items.end() || *it != *id) return 0;
    return static_cast<int>(r.weights[static_cast<std::size_t>(it - r.items.begin())]);
}

int SimilarityGraph::docFreq(std::string_view item) const {
    const auto id = itemId(item);
    return id ? docFreq_[*id] : 0;
}

std::vector<SimilarityGraph::Similarity> SimilarityGraph::similarities(
    const std::map<std::string, int>& activeCounts, std::optional<std::size_t> replaces) const {
    const std::size_t universe = itemNames_.size();
    const double members =
        static_cast<double>(metamodelCount() + 1 - (replaces.has_value() ? 1 : 0));

    std::vector<double> df(docFreq_.begin(), docFreq_.end());
    if (replaces) {
        for (auto id : row(*replaces).items) df[id] -= 1.0;
    }

    double activeNormSq = 0.0;
    std::vector<std::pair<std::uint32_t, double>> inUniverse;
    for (const auto& [item, count] : activeCounts) {
        if (const auto id = itemId(item)) {
            df[*id] += 1.0;
            inUniverse.emplace_back(*id, static_cast<double>(count));
        } else {
            // Only the active metamodel has this item: df = 1.
            const double w = count * std::log10(members);
            activeNormSq += w * w;
        }
    }

    std::vector<double> idf(universe, 0.0);
    for (std::size_t i = 0; i < universe; ++i) {
        if (df[i] > 0.0) idf[i] = std::log10(members / df[i]);
    }

    // Dot against member n is sum_f w_n(f) * idf(f) * a(f) * idf(f), so the dense
    // side carries a(f) * idf(f)^2.
    std::vector<double> activeDense(universe, 0.0);
    for (const auto& [id, count] : inUniverse) {
        const double w = count * idf[id];
        activeNormSq += w * w;
        activeDense[id] = w * idf[id];
    }

    const auto& k = simd::kernels();
    std::vector<Similarity> out;
    out.reserve(metamodelCount());
    for (std::size_t member = 0; member < metamodelCount(); ++member) {
        if (replaces && *replaces == member) continue;
        const auto r = row(member);
        const double dot = k.gatherDot(r.items.data(), r.weights.data(), r.items.size(),
                                       activeDense.data());
        const double normSq = k.gatherScaledSquareSum(r.items.data(), r.weights.data(),
                                                      r.items.size(), idf.data());
        double score = 0.0;
        if (dot != 0.0 && normSq > 0.0 && activeNormSq > 0.0) {
            score = dot / (std::sqrt(normSq) * std::sqrt(activeNormSq));
        }
        out.push_back({member, score});
    }
    return out;
}

FeatureVector tfidfVector(const SimilarityGraph& g, std::string_view metamodelId) {
    const auto member = g.metamodelIndex(metamodelId);
    if (!member) throw Error(ErrorCode::UnknownMetamodel, std::string(metamodelId));
    const double total = static_cast<double>(g.metamodelCount());
    FeatureVector v;
    const auto r = g.row(*member);
    for (std::size_t i = 0; i < r.items.size(); ++i) {
        const auto& name = g.itemNames()[r.items[i]];
        v.weights[name] = r.weights[i] * std::log10(total / g.docFreq(name));
    }
    return v;
}

double cosine(const FeatureVector& a, const FeatureVector& b) {
    double dot = 0.0;
    double normA = 0.0;
    double normB = 0.0;
    for (const auto& [key, w] : a.weights) {
        normA += w * w;
        if (const auto it = b.weights.find(key); it != b.weights.end()) dot += w * it->second;
    }
    for (const auto& [key, w] : b.weights) normB += w * w;
    if (normA == 0.0 || normB == 0.0) return 0.0;
    return dot / (std::sqrt(normA) * std::sqrt(normB));
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t common = 0;
    for (const auto& x : a) common += b.count(x);
    const std::size_t unionSize = a.size() + b.size() - common;
    return static_cast<double>(common) / static_cast<double>(unionSize);
}

std::string dumpGraph(const SimilarityGraph& g) {
    std::string out;
    for (std::size_t m = 0; m < g.metamodelCount(); ++m) {
        const auto r = g.row(m);
        for (std::size_t i = 0; i < r.items.size(); ++i) {
            out += g.metamodelIds()[m];
            out += '\t';
            out += g.itemNames()[r.items[i]];
            out += '\t';
            out += std::to_string(static_cast<int>(r.weights[i]));
            out += '\n';
        }
    }
    return out;
}

}  // namespace memorec
