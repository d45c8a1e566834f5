#include "memorec/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "memorec/hash.hpp"

namespace memorec {

namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

std::vector<std::string> sample(Rng& rng, const std::vector<std::string>& pool, std::size_t count) {
    std::vector<std::string> out;
    std::sample(pool.begin(), pool.end(), std::back_inserter(out), std::min(count, pool.size()), rng);
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

void finish(Metamodel& m, std::string uri) {
    m.sourceUri = std::move(uri);
    m.id = contentHash(toJsonModel(m));
}

StructuralFeature feature(std::string name, Rng& rng) {
    return {std::move(name), chance(rng, 0.5) ? FeatureKind::Attribute : FeatureKind::Reference,
            std::nullopt};
}

// Distributes classes over packages round robin; later classes may extend the
// first class of the metamodel.
Metamodel assemble(const std::vector<std::string>& packages, const std::vector<MetaClass>& classes,
                   double inheritance, Rng& rng) {
    Metamodel m;
    for (const auto& p : packages) m.rootPackages.push_back({p, {}, {}});
    for (std::size_t i = 0; i < classes.size(); ++i) {
        MetaClass c = classes[i];
        if (i > 0 && chance(rng, inheritance)) c.superTypeNames.push_back(classes.front().name);
        m.rootPackages[i % packages.size()].classes.push_back(std::move(c));
    }
    return m;
}

}  // namespace

std::vector<Metamodel> generateSyntheticCorpus(const SyntheticCorpusSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    const auto tag = std::string(spec.clustered ? "clustered" : "unclustered") + "-" + std::to_string(seed);

    std::vector<std::string> packageVocab;
    std::vector<std::string> classVocab;
    std::vector<std::string> featureVocab;
    // prototype[c][j] = feature names of class j in cluster c
    std::vector<std::vector<std::vector<std::string>>> prototype(spec.clusters);
    for (std::size_t c = 0; c < spec.clusters; ++c) {
        for (std::size_t p = 0; p < spec.packagesPerModel; ++p) {
            packageVocab.push_back("pkg" + std::to_string(c) + "_" + std::to_string(p));
        }
        for (std::size_t j = 0; j < spec.classesPerModel; ++j) {
            classVocab.push_back("Class" + std::to_string(c) + "_" + std::to_string(j));
            auto& features = prototype[c].emplace_back();
            for (std::size_t t = 0; t < spec.featuresPerClass; ++t) {
                features.push_back("f" + std::to_string(c) + "_" + std::to_string(j) + "_" +
                                   std::to_string(t));
                featureVocab.push_back(features.back());
            }
        }
    }

    const auto shared = static_cast<std::size_t>(
        std::lround(spec.sharedFraction * static_cast<double>(spec.featuresPerClass)));

    std::vector<Metamodel> out;
    for (std::size_t c = 0; c < spec.clusters; ++c) {
        for (std::size_t i = 0; i < spec.perCluster; ++i) {
            std::vector<std::string> packages;
            std::vector<MetaClass> classes;
            if (spec.clustered) {
                packages.assign(packageVocab.begin() + static_cast<long>(c * spec.packagesPerModel),
                                packageVocab.begin() + static_cast<long>((c + 1) * spec.packagesPerModel));
                for (std::size_t j = 0; j < spec.classesPerModel; ++j) {
                    MetaClass cls{classVocab[c * spec.classesPerModel + j], {}, {}, false};
                    auto names = sample(rng, prototype[c][j], shared);
                    while (names.size() < spec.featuresPerClass) {
                        const auto& extra = featureVocab[uniform(rng, 0, featureVocab.size() - 1)];
                        if (std::find(names.begin(), names.end(), extra) == names.end()) {
                            names.push_back(extra);
                        }
                    }
                    std::shuffle(names.begin(), names.end(), rng);
                    for (auto& n : names) cls.ownedFeatures.push_back(feature(std::move(n), rng));
                    classes.push_back(std::move(cls));
                }
            } else {
                packages = sample(rng, packageVocab, spec.packagesPerModel);
                for (auto& name : sample(rng, classVocab, spec.classesPerModel)) {
                    MetaClass cls{std::move(name), {}, {}, false};
                    for (auto& f : sample(rng, featureVocab, spec.featuresPerClass)) {
                        cls.ownedFeatures.push_back(feature(std::move(f), rng));
                    }
                    classes.push_back(std::move(cls));
                }
            }
            auto m = assemble(packages, classes, spec.inheritanceProbability, rng);
            finish(m, "synthetic/" + tag + "/" + std::to_string(c) + "-" + std::to_string(i) + ".json");
            out.push_back(std::move(m));
        }
    }
    return out;
}

std::vector<Metamodel> generateRandomCorpus(const RandomCorpusSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    auto vocab = [](const char* prefix, std::size_t n) {
        std::vector<std::string> v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
        return v;
    };
    const auto packageVocab = vocab("P", spec.packageVocabulary);
    const auto classVocab = vocab("C", spec.classVocabulary);
    const auto featureVocab = vocab("f", spec.featureVocabulary);

    std::vector<Metamodel> out;
    const auto count = uniform(rng, spec.minMetamodels, spec.maxMetamodels);
    for (std::size_t i = 0; i < count; ++i) {
        Metamodel m;
        const auto packages = sample(rng, packageVocab, uniform(rng, 1, spec.maxPackages));
        std::vector<std::string> classPool = classVocab;
        std::shuffle(classPool.begin(), classPool.end(), rng);
        std::vector<std::string> declared;
        for (const auto& p : packages) {
            MetaPackage pkg{p, {}, {}};
            const auto classCount = uniform(rng, 0, spec.maxClassesPerPackage);
            for (std::size_t j = 0; j < classCount && !classPool.empty(); ++j) {
                MetaClass cls{classPool.back(), {}, {}, false};
                classPool.pop_back();
                const auto featureCount = uniform(rng, 0, spec.maxFeaturesPerClass);
                for (std::size_t f = 0; f < featureCount; ++f) {
                    cls.ownedFeatures.push_back(
                        feature(featureVocab[uniform(rng, 0, featureVocab.size() - 1)], rng));
                }
                if (!declared.empty() && chance(rng, 0.35)) {
                    cls.superTypeNames.push_back(declared[uniform(rng, 0, declared.size() - 1)]);
                    if (declared.size() > 1 && chance(rng, 0.3)) {
                        const auto& second = declared[uniform(rng, 0, declared.size() - 1)];
                        if (second != cls.superTypeNames.front()) cls.superTypeNames.push_back(second);
                    }
                }
                declared.push_back(cls.name);
                pkg.classes.push_back(std::move(cls));
            }
            m.rootPackages.push_back(std::move(pkg));
        }
        finish(m, "random/" + std::to_string(seed) + "/" + std::to_string(i) + ".json");
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace memorec
