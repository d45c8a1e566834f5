#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "memorec/cf_engine.hpp"
#include "memorec/corpus.hpp"
#include "memorec/encoder.hpp"

namespace memorec {

struct EvalConfig {
    std::size_t folds = 10;
    EncodingScheme scheme = EncodingScheme::SEs;
    std::size_t k = 5;
    std::size_t kContexts = 5;
    std::vector<std::size_t> cutoffs{1, 5, 10, 15, 20};  // strictly increasing
    std::uint64_t seed = 42;
    // Wall-clock timing is the one non-reproducible column; when off,
    // meanQueryMs is reported as 0 and reports are byte-identical across runs.
    bool measureTime = true;
};

void validate(const EvalConfig& config);

struct FoldSplit {
    std::vector<std::string> training;
    std::vector<std::string> testing;
};

/// Seeded shuffle, then consecutive testing slices whose sizes differ by at
/// most one (the first |ids| mod folds slices get the extra element).
std::vector<FoldSplit> splitFolds(std::span<const std::string> ids, std::size_t folds,
                                  std::uint64_t seed);
std::vector<FoldSplit> splitFolds(const CorpusIndex& index, std::size_t folds, std::uint64_t seed);

struct QueryCase {
    std::string metamodelId;
    std::string activeContext;
    std::vector<std::string> queryItems;
    std::set<std::string> groundTruth;

    bool operator==(const QueryCase&) const = default;
};

/// Per-metamodel seed derived from the run seed and the metamodel id, so a
/// case does not depend on the order in which metamodels are visited.
std::uint64_t caseSeed(std::uint64_t seed, std::string_view metamodelId);

/// Picks a context with at least two distinct items uniformly at random; its
/// first item is the query, the rest the ground truth. nullopt when no context
/// qualifies.
std::optional<QueryCase> makeQueryCase(const EncodedMetamodel& encoded, std::uint64_t seed);
std::optional<QueryCase> makeQueryCase(const Metamodel& m, EncodingScheme scheme, std::uint64_t seed);

/// The encoded metamodel a modeler would hold: every ground-truth pair of the
/// active context removed.
EncodedMetamodel applyQueryCase(const EncodedMetamodel& full, const QueryCase& qc);

struct CaseOutcome {
    QueryCase queryCase;
    std::vector<std::string> recommended;  // ranked
    double millis = 0.0;
};

std::size_t truePositives(const std::set<std::string>& groundTruth,
                          std::span<const std::string> ranked, std::size_t n);

/// Fraction of cases with at least one ground-truth item in the top n.
double successRateAtN(std::span<const CaseOutcome> cases, std::size_t n);

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

PrecisionRecall precisionRecallF1(const CaseOutcome& outcome, std::size_t n);

struct MetricsRow {
    std::string fold;  // fold number, or "mean" for the aggregate
    std::size_t n = 0;
    double successRate = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double meanQueryMs = 0.0;
    std::size_t cases = 0;
};

struct MetricsReport {
    EvalConfig config;
    std::vector<MetricsRow> foldRows;
    std::vector<MetricsRow> aggregateRows;  // means over folds that produced cases
    std::size_t skipped = 0;                // testing metamodels without a usable context
    std::string host;

    std::string toCsv() const;
    std::string toJson() const;
};

/// Observer hook called once per fold with the fold's engine.
using FoldObserver = std::function<void(std::size_t fold, const FoldSplit&, const Recommender&,
                                        std::span<const CaseOutcome>)>;

MetricsReport runEvaluation(const CorpusIndex& index, const EvalConfig& config,
                            const FoldObserver& observer = {});

}  // namespace memorec
