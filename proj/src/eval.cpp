#include "memorec/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>

#include <json.hpp>

#include "memorec/error.hpp"
#include "memorec/simd/kernels.hpp"

namespace memorec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string hostDescription() {
    std::ifstream in("/proc/cpuinfo");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("model name", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                auto model = line.substr(colon + 1);
                model.erase(0, model.find_first_not_of(' '));
                return model;
            }
        }
    }
    return "unknown";
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

void validate(const EvalConfig& config) {
    if (config.folds < 2) throw Error(ErrorCode::InvalidArgument, "folds must be at least 2");
    if (config.k == 0 || config.kContexts == 0) {
        throw Error(ErrorCode::InvalidArgument, "k and kContexts must be positive");
    }
    if (config.cutoffs.empty()) throw Error(ErrorCode::InvalidArgument, "no cut-off values");
    for (std::size_t i = 0; i < config.cutoffs.size(); ++i) {
        if (config.cutoffs[i] == 0 || (i > 0 && config.cutoffs[i] <= config.cutoffs[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "cut-offs must be positive and strictly increasing");
        }
    }
}

std::vector<FoldSplit> splitFolds(std::span<const std::string> ids, std::size_t folds,
                                  std::uint64_t seed) {
    if (folds < 2) throw Error(ErrorCode::InvalidArgument, "folds must be at least 2");
    if (ids.size() < folds) {
        throw Error(ErrorCode::CorpusTooSmall, std::to_string(ids.size()) + " metamodels for " +
                                                   std::to_string(folds) + " folds");
    }
    std::vector<std::string> order(ids.begin(), ids.end());
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<FoldSplit> out(folds);
    const std::size_t base = order.size() / folds;
    const std::size_t extra = order.size() % folds;
    std::size_t start = 0;
    for (std::size_t f = 0; f < folds; ++f) {
        const std::size_t size = base + (f < extra ? 1 : 0);
        for (std::size_t i = 0; i < order.size(); ++i) {
            auto& target = (i >= start && i < start + size) ? out[f].testing : out[f].training;
            target.push_back(order[i]);
        }
        start += size;
    }
    return out;
}

std::vector<FoldSplit> splitFolds(const CorpusIndex& index, std::size_t folds, std::uint64_t seed) {
    const auto ids = index.ids();
    return splitFolds(ids, folds, seed);
}

std::uint64_t caseSeed(std::uint64_t seed, std::string_view metamodelId) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : metamodelId) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(seed ^ splitmix64(h));
}

std::optional<QueryCase> makeQueryCase(const EncodedMetamodel& encoded, std::uint64_t seed) {
    std::vector<std::pair<std::string, std::vector<std::string>>> eligible;
    for (const auto& c : encoded.contexts) {
        auto items = contextItems(encoded, c);
        if (items.size() >= 2) eligible.emplace_back(c, std::move(items));
    }
    if (eligible.empty()) return std::nullopt;

    std::mt19937_64 rng(caseSeed(seed, encoded.metamodelId));
    const auto pick = std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng);
    auto& [context, items] = eligible[pick];

    QueryCase qc;
    qc.metamodelId = encoded.metamodelId;
    qc.activeContext = context;
    qc.queryItems = {items.front()};
    qc.groundTruth.insert(items.begin() + 1, items.end());
    return qc;
}

std::optional<QueryCase> makeQueryCase(const Metamodel& m, EncodingScheme scheme, std::uint64_t seed) {
    return makeQueryCase(encode(m, scheme), seed);
}

EncodedMetamodel applyQueryCase(const EncodedMetamodel& full, const QueryCase& qc) {
    EncodedMetamodel out = full;
    std::erase_if(out.pairs, [&](const ItemPair& p) {
        return p.context == qc.activeContext && qc.groundTruth.contains(p.item);
    });
    return out;
}

std::size_t truePositives(const std::set<std::string>& groundTruth,
                          std::span<const std::string> ranked, std::size_t n) {
    std::set<std::string_view> hits;
    for (std::size_t i = 0; i < std::min(n, ranked.size()); ++i) {
        if (groundTruth.contains(ranked[i])) hits.insert(ranked[i]);
    }
    return hits.size();
}

double successRateAtN(std::span<const CaseOutcome> cases, std::size_t n) {
    if (cases.empty()) throw Error(ErrorCode::EmptyCaseSet, "no query cases");
    std::size_t hits = 0;
    for (const auto& c : cases) {
        if (truePositives(c.queryCase.groundTruth, c.recommended, n) > 0) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(cases.size());
}

PrecisionRecall precisionRecallF1(const CaseOutcome& outcome, std::size_t n) {
    PrecisionRecall out;
    if (n == 0) return out;
    const auto tp = static_cast<double>(truePositives(outcome.queryCase.groundTruth, outcome.recommended, n));
    out.precision = tp / static_cast<double>(n);
    if (!outcome.queryCase.groundTruth.empty()) {
        out.recall = tp / static_cast<double>(outcome.queryCase.groundTruth.size());
    }
    if (out.precision + out.recall > 0.0) {
        out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
    }
    return out;
}

MetricsReport runEvaluation(const CorpusIndex& index, const EvalConfig& config,
                            const FoldObserver& observer) {
    validate(config);
    const auto& schemeIndex = index.scheme(config.scheme);
    const auto splits = splitFolds(index, config.folds, config.seed);

    std::unordered_map<std::string, const EncodedMetamodel*> byId;
    for (const auto& e : schemeIndex.encoded) byId.emplace(e.metamodelId, &e);

    MetricsReport report;
    report.config = config;
    report.host = hostDescription();
    const std::size_t maxCutoff = config.cutoffs.back();

    for (std::size_t fold = 0; fold < splits.size(); ++fold) {
        const auto& split = splits[fold];
        std::vector<EncodedMetamodel> training;
        training.reserve(split.training.size());
        for (const auto& id : split.training) training.push_back(*byId.at(id));
        const Recommender engine(std::move(training));

        std::vector<CaseOutcome> outcomes;
        for (const auto& id : split.testing) {
            const auto& full = *byId.at(id);
            auto qc = makeQueryCase(full, config.seed);
            if (!qc) {
                ++report.skipped;
                continue;
            }
            RecommendationQuery q{applyQueryCase(full, *qc), qc->activeContext, config.k,
                                  config.kContexts, maxCutoff};
            const auto start = std::chrono::steady_clock::now();
            const auto ranked = engine.recommend(q);
            const auto stop = std::chrono::steady_clock::now();

            CaseOutcome outcome;
            outcome.queryCase = std::move(*qc);
            for (const auto& e : ranked.entries) outcome.recommended.push_back(e.item);
            if (config.measureTime) {
                outcome.millis = std::chrono::duration<double, std::milli>(stop - start).count();
            }
            outcomes.push_back(std::move(outcome));
        }

        double totalMs = 0.0;
        for (const auto& o : outcomes) totalMs += o.millis;
        for (const auto n : config.cutoffs) {
            MetricsRow row;
            row.fold = std::to_string(fold);
            row.n = n;
            row.cases = outcomes.size();
            if (!outcomes.empty()) {
                row.successRate = successRateAtN(outcomes, n);
                for (const auto& o : outcomes) {
                    const auto prf = precisionRecallF1(o, n);
                    row.precision += prf.precision;
                    row.recall += prf.recall;
                    row.f1 += prf.f1;
                }
                const auto count = static_cast<double>(outcomes.size());
                row.precision /= count;
                row.recall /= count;
                row.f1 /= count;
                row.meanQueryMs = totalMs / count;
            }
            report.foldRows.push_back(row);
        }
        if (observer) observer(fold, split, engine, outcomes);
    }

    for (const auto n : config.cutoffs) {
        MetricsRow mean;
        mean.fold = "mean";
        mean.n = n;
        std::size_t contributing = 0;
        for (const auto& r : report.foldRows) {
            if (r.n != n || r.cases == 0) continue;
            ++contributing;
            mean.successRate += r.successRate;
            mean.precision += r.precision;
            mean.recall += r.recall;
            mean.f1 += r.f1;
            mean.meanQueryMs += r.meanQueryMs;
            mean.cases += r.cases;
        }
        if (contributing > 0) {
            const auto c = static_cast<double>(contributing);
            mean.successRate /= c;
            mean.precision /= c;
            mean.recall /= c;
            mean.f1 /= c;
            mean.meanQueryMs /= c;
        }
        report.aggregateRows.push_back(mean);
    }
    return report;
}

std::string MetricsReport::toCsv() const {
    std::string out;
    out += "# memorec evaluation report\n";
    out += "# host: " + host + "; simd: " + std::string(simd::toString(simd::activeLevel())) + "\n";
    out += "# folds: " + std::to_string(config.folds) + "; seed: " + std::to_string(config.seed) +
           "; skipped: " + std::to_string(skipped) + "; timing: " + (config.measureTime ? "on" : "off") +
           "\n";
    out += "fold,scheme,k,kContexts,N,SR,precision,recall,f1,meanQueryMs\n";
    auto emit = [&](const MetricsRow& r) {
        out += r.fold + "," + std::string(toString(config.scheme)) + "," + std::to_string(config.k) + "," +
               std::to_string(config.kContexts) + "," + std::to_string(r.n) + "," +
               fixed(r.successRate, 6) + "," + fixed(r.precision, 6) + "," + fixed(r.recall, 6) + "," +
               fixed(r.f1, 6) + "," + fixed(r.meanQueryMs, 4) + "\n";
    };
    for (const auto& r : foldRows) emit(r);
    for (const auto& r : aggregateRows) emit(r);
    return out;
}

std::string MetricsReport::toJson() const {
    nlohmann::ordered_json doc;
    doc["host"] = host;
    doc["simd"] = simd::toString(simd::activeLevel());
    doc["config"] = {{"folds", config.folds},
                     {"scheme", toString(config.scheme)},
                     {"k", config.k},
                     {"kContexts", config.kContexts},
                     {"cutoffs", config.cutoffs},
                     {"seed", config.seed},
                     {"timing", config.measureTime}};
    doc["skipped"] = skipped;
    auto rows = [](const std::vector<MetricsRow>& in) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : in) {
            arr.push_back({{"fold", r.fold},
                           {"N", r.n},
                           {"SR", r.successRate},
                           {"precision", r.precision},
                           {"recall", r.recall},
                           {"f1", r.f1},
                           {"meanQueryMs", r.meanQueryMs},
                           {"cases", r.cases}});
        }
        return arr;
    };
    doc["folds"] = rows(foldRows);
    doc["aggregate"] = rows(aggregateRows);
    return doc.dump(2) + "\n";
}

}  // namespace memorec
