#include "memorec/cf_engine.hpp"

#include <algorithm>
#include <cmath>

#include "memorec/error.hpp"

namespace memorec {

namespace {

const std::set<std::string> kEmptyRow;

long long rankingKey(double score) { return std::llround(score * 1e12); }

}  // namespace

RatingView::RatingView(const EncodedMetamodel& encoded)
    : metamodelId_(encoded.metamodelId), contexts_(encoded.contexts) {
    std::set<std::string_view> seen;
    for (const auto& c : contexts_) rows_[c];
    for (const auto& p : encoded.pairs) {
        rows_[p.context].insert(p.item);
        if (seen.insert(p.item).second) items_.push_back(p.item);
    }
}

bool RatingView::hasContext(std::string_view context) const {
    return rows_.contains(std::string(context));
}

int RatingView::cell(std::string_view context, std::string_view item) const {
    const auto& row = rowItems(context);
    return row.contains(std::string(item)) ? 1 : 0;
}

const std::set<std::string>& RatingView::rowItems(std::string_view context) const {
    const auto it = rows_.find(std::string(context));
    return it == rows_.end() ? kEmptyRow : it->second;
}

RecommendationQuery makeQuery(const Metamodel& m, EncodingScheme scheme, ContextKind kind,
                              std::string_view context, std::size_t k, std::size_t kContexts,
                              std::size_t n) {
    const bool classContext = kind == ContextKind::Class;
    if (classContext != recommendsFeatures(scheme)) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(classContext ? "class" : "package") + " contexts cannot be used with " +
                        std::string(toString(scheme)));
    }
    if (k == 0 || kContexts == 0) {
        throw Error(ErrorCode::InvalidArgument, "k and kContexts must be positive");
    }

    RecommendationQuery q;
    q.active = encode(m, scheme);
    q.k = k;
    q.kContexts = kContexts;
    q.n = n;
    q.activeContext = std::string(context);
    if (scheme == EncodingScheme::IEc && context != kArtificialPackage) {
        const auto packages = allPackages(m);
        const bool known = std::any_of(packages.begin(), packages.end(),
                                       [&](const MetaPackage* p) { return p->name == context; });
        if (!known) throw Error(ErrorCode::UnknownContext, "no package named " + q.activeContext);
        q.activeContext = std::string(kArtificialPackage);
    }
    if (std::find(q.active.contexts.begin(), q.active.contexts.end(), q.activeContext) ==
        q.active.contexts.end()) {
        throw Error(ErrorCode::UnknownContext, "no context named " + q.activeContext);
    }
    return q;
}

std::vector<ScoredMetamodel> selectTopSimilar(std::vector<ScoredMetamodel> scored,
                                              std::string_view activeId, std::size_t k) {
    std::erase_if(scored, [&](const ScoredMetamodel& s) { return s.id == activeId || !(s.score > 0.0); });
    std::sort(scored.begin(), scored.end(), [](const ScoredMetamodel& a, const ScoredMetamodel& b) {
        const auto ka = rankingKey(a.score);
        const auto kb = rankingKey(b.score);
        if (ka != kb) return ka > kb;
        return a.id < b.id;
    });
    if (scored.size() > k) scored.resize(k);
    return scored;
}

std::vector<ScoredContext> topSimilarContexts(const std::set<std::string>& activeItems,
                                              std::span<const CandidateContext> candidates,
                                              std::size_t kContexts) {
    std::vector<ScoredContext> scored;
    for (const auto& c : candidates) {
        const double sim = jaccard(activeItems, c.items);
        if (sim > 0.0) scored.push_back({c.ref, sim});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredContext& a, const ScoredContext& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.ref < b.ref;
    });
    if (scored.size() > kContexts) scored.resize(kContexts);
    return scored;
}

double combinedRating(std::string_view context, std::string_view item,
                      std::span<const NeighbourView> neighbours) {
    double weighted = 0.0;
    double total = 0.0;
    for (const auto& n : neighbours) {
        weighted += n.view->cell(context, item) * n.sim1;
        total += n.sim1;
    }
    return total > 0.0 ? weighted / total : 0.0;
}

Recommender::Recommender(std::vector<EncodedMetamodel> corpus)
    : corpus_(std::move(corpus)), graph_(SimilarityGraph::build(corpus_)) {
    views_.reserve(corpus_.size());
    for (const auto& e : corpus_) views_.emplace_back(e);
}

const RatingView& Recommender::view(std::string_view metamodelId) const {
    const auto member = graph_.metamodelIndex(metamodelId);
    if (!member) throw Error(ErrorCode::UnknownMetamodel, std::string(metamodelId));
    return views_[*member];
}

std::vector<ScoredMetamodel> Recommender::topSimilarMetamodels(const EncodedMetamodel& active,
                                                               std::size_t k) const {
    const auto replaces = graph_.metamodelIndex(active.metamodelId);
    std::vector<ScoredMetamodel> scored;
    for (const auto& s : graph_.similarities(itemCounts(active), replaces)) {
        scored.push_back({graph_.metamodelIds()[s.member], s.score});
    }
    return selectTopSimilar(std::move(scored), active.metamodelId, k);
}

std::vector<ScoredMetamodel> Recommender::topSimilarMetamodels(std::string_view memberId,
                                                               std::size_t k) const {
    const auto member = graph_.metamodelIndex(memberId);
    if (!member) throw Error(ErrorCode::UnknownMetamodel, std::string(memberId));
    return topSimilarMetamodels(corpus_[*member], k);
}

void Recommender::checkQuery(const RecommendationQuery& q) const {
    if (graph_.scheme() && *graph_.scheme() != q.active.scheme) {
        throw Error(ErrorCode::MixedSchemes, "query uses " + std::string(toString(q.active.scheme)) +
                                                 ", corpus uses " +
                                                 std::string(toString(*graph_.scheme())));
    }
    if (q.k == 0 || q.kContexts == 0) {
        throw Error(ErrorCode::InvalidArgument, "k and kContexts must be positive");
    }
    if (std::find(q.active.contexts.begin(), q.active.contexts.end(), q.activeContext) ==
        q.active.contexts.end()) {
        throw Error(ErrorCode::UnknownContext, "no context named " + q.activeContext);
    }
}

Neighbourhood Recommender::neighbourhood(const RecommendationQuery& q) const {
    checkQuery(q);
    Neighbourhood nb;
    const auto items = contextItems(q.active, q.activeContext);
    nb.activeItems.insert(items.begin(), items.end());
    nb.metamodels = topSimilarMetamodels(q.active, q.k);
    if (nb.metamodels.empty()) return nb;

    std::vector<CandidateContext> candidates;
    for (const auto& m : nb.metamodels) {
        const auto& v = view(m.id);
        for (const auto& c : v.contexts()) candidates.push_back({{m.id, c}, v.rowItems(c)});
    }
    nb.contexts = topSimilarContexts(nb.activeItems, candidates, q.kContexts);
    for (const auto& d : nb.contexts) {
        for (const auto& item : view(d.ref.metamodelId).rowItems(d.ref.context)) {
            if (!nb.activeItems.contains(item)) nb.candidateItems.insert(item);
        }
    }
    return nb;
}

std::vector<NeighbourView> Recommender::neighbourViews(const Neighbourhood& nb) const {
    std::vector<NeighbourView> out;
    out.reserve(nb.metamodels.size());
    for (const auto& m : nb.metamodels) out.push_back({&view(m.id), m.score});
    return out;
}

double Recommender::score(const Neighbourhood& nb, std::span<const NeighbourView> views,
                          std::string_view item) const {
    // Ratings are aligned on F(c) ∪ candidates (plus the scored item), so the
    // active and neighbour means share one denominator.
    const std::string key(item);
    const bool extra = !nb.activeItems.contains(key) && !nb.candidateItems.contains(key);
    const double universe =
        static_cast<double>(nb.activeItems.size() + nb.candidateItems.size() + (extra ? 1 : 0));
    if (universe == 0.0) return 0.0;
    const double activeMean = static_cast<double>(nb.activeItems.size()) / universe;
    if (nb.contexts.empty()) return activeMean;

    double weighted = 0.0;
    double total = 0.0;
    for (const auto& d : nb.contexts) {
        const auto& row = view(d.ref.metamodelId).rowItems(d.ref.context);
        const double neighbourMean = static_cast<double>(row.size()) / universe;
        weighted += (combinedRating(d.ref.context, item, views) - neighbourMean) * d.score;
        total += d.score;
    }
    return total > 0.0 ? activeMean + weighted / total : activeMean;
}

double Recommender::predictRating(const RecommendationQuery& q, std::string_view item) const {
    const auto nb = neighbourhood(q);
    const auto views = neighbourViews(nb);
    return score(nb, views, item);
}

RankedList Recommender::recommend(const RecommendationQuery& q) const {
    RankedList out;
    const auto nb = neighbourhood(q);
    out.noNeighbours = nb.metamodels.empty();
    if (q.n == 0) return out;

    const auto views = neighbourViews(nb);
    for (const auto& item : nb.candidateItems) out.entries.push_back({item, score(nb, views, item)});
    std::sort(out.entries.begin(), out.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.item < b.item;
    });
    if (out.entries.size() > q.n) out.entries.resize(q.n);
    return out;
}

}  // namespace memorec
