#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "memorec/model.hpp"

namespace memorec {

/// Clustered corpus: each cluster has a prototype metamodel and every member
/// keeps `sharedFraction` of each prototype class's features, filling the rest
/// with features drawn from the whole vocabulary. With `clustered = false` the
/// same vocabulary is sampled uniformly, giving an unclustered corpus of equal
/// size. Category labels only shape the generator; nothing downstream sees them.
struct SyntheticCorpusSpec {
    std::size_t clusters = 5;
    std::size_t perCluster = 20;
    double sharedFraction = 0.7;
    std::size_t packagesPerModel = 2;
    std::size_t classesPerModel = 6;
    std::size_t featuresPerClass = 6;
    double inheritanceProbability = 0.2;
    bool clustered = true;
};

std::vector<Metamodel> generateSyntheticCorpus(const SyntheticCorpusSpec& spec, std::uint64_t seed);

/// Small metamodels over a tiny vocabulary so that names collide often.
struct RandomCorpusSpec {
    std::size_t minMetamodels = 1;
    std::size_t maxMetamodels = 10;
    std::size_t packageVocabulary = 3;
    std::size_t classVocabulary = 8;
    std::size_t featureVocabulary = 10;
    std::size_t maxPackages = 2;
    std::size_t maxClassesPerPackage = 3;
    std::size_t maxFeaturesPerClass = 4;
};

std::vector<Metamodel> generateRandomCorpus(const RandomCorpusSpec& spec, std::uint64_t seed);

}  // namespace memorec
