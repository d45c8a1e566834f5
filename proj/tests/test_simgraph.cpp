#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures_util.hpp"
#include "memorec/error.hpp"
#include "memorec/simgraph.hpp"
#include "memorec/synthetic.hpp"
#include "oracle/oracle.hpp"

using namespace memorec;

namespace {

EncodedMetamodel manual(std::string id, std::vector<ItemPair> pairs) {
    EncodedMetamodel e{std::move(id), EncodingScheme::SEs, std::move(pairs), {}};
    for (const auto& p : e.pairs) {
        if (std::find(e.contexts.begin(), e.contexts.end(), p.context) == e.contexts.end()) {
            e.contexts.push_back(p.context);
        }
    }
    return e;
}

FeatureVector vec(std::map<std::string, double> w) { return FeatureVector{std::move(w)}; }

// Hand-made weight vectors for Web and two neighbours.
const FeatureVector kWeb = vec({{"media", 0.528}, {"title", 0.528}, {"fields", -0.301},
                                {"entities", -0.301}, {"list", -0.301}});
const FeatureVector kM1 = vec({{"title", 0.528}, {"content", 0.528}});
const FeatureVector kM2 = vec({{"name", 1.204}, {"fields", 0.528}, {"list", 0.528},
                               {"index", 0.602}, {"type", 0.602}});

}  // namespace

TEST(SimGraph, CosineOnWebExampleVectors) {
    EXPECT_NEAR(cosine(kWeb, kM1), 0.41, 0.01);
    EXPECT_NEAR(cosine(kWeb, kM2), -0.21, 0.01);
    EXPECT_NEAR(cosine(kM1, kM2), 0.0, 0.01);
    for (const auto* v : {&kWeb, &kM1, &kM2}) EXPECT_NEAR(cosine(*v, *v), 1.0, 1e-9);
    EXPECT_EQ(cosine(kWeb, FeatureVector{}), 0.0);
}

TEST(SimGraph, CosineSymmetricAndScaleInvariant) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> val(-2, 2);
    std::uniform_int_distribution<int> key(0, 8);
    for (int i = 0; i < 500; ++i) {
        FeatureVector a, b, scaled;
        for (int j = 0; j < 5; ++j) {
            a.weights["k" + std::to_string(key(rng))] = val(rng);
            b.weights["k" + std::to_string(key(rng))] = val(rng);
        }
        const double lambda = std::uniform_real_distribution<double>(0.01, 100)(rng);
        for (const auto& [k, v] : a.weights) scaled.weights[k] = lambda * v;
        EXPECT_DOUBLE_EQ(cosine(a, b), cosine(b, a));
        EXPECT_NEAR(cosine(scaled, b), cosine(a, b), 1e-12);
        EXPECT_LE(std::abs(cosine(a, b)), 1.0 + 1e-12);
    }
}

TEST(SimGraph, Jaccard) {
    const std::set<std::string> s{"title", "meta", "content", "picture"};
    const std::set<std::string> d{"title", "meta", "list", "entity"};
    EXPECT_DOUBLE_EQ(jaccard(s, d), 2.0 / 6.0);
    EXPECT_DOUBLE_EQ(jaccard(s, s), 1.0);
    EXPECT_DOUBLE_EQ(jaccard({"a"}, {"b"}), 0.0);
    EXPECT_DOUBLE_EQ(jaccard({}, {}), 0.0);
    EXPECT_DOUBLE_EQ(jaccard(s, d), jaccard(d, s));
}

TEST(SimGraph, EdgeWeightCountsPairs) {
    const auto web = testutil::webMetamodel();
    const auto e = encode(web, EncodingScheme::SEs);
    const auto g = buildGraph(std::span(&e, 1));
    EXPECT_EQ(g.edgeWeight(web.id, "name"), 2);
    EXPECT_EQ(g.edgeWeight(web.id, "title"), 1);
    EXPECT_EQ(g.edgeWeight(web.id, "css"), 0);
}

TEST(SimGraph, DocFreqAndEmpty) {
    const std::vector<EncodedMetamodel> c{manual("a", {{"P", "title"}}), manual("b", {{"Q", "title"}})};
    const auto g = buildGraph(c);
    EXPECT_EQ(g.docFreq("title"), 2);
    EXPECT_EQ(g.metamodelCount(), 2u);
    EXPECT_EQ(tfidfVector(g, "a").weights.at("title"), 0.0);
    const auto empty = buildGraph({});
    EXPECT_EQ(empty.metamodelCount(), 0u);
    EXPECT_TRUE(empty.itemNames().empty());
}

TEST(SimGraph, TfidfHandExample) {
    std::vector<EncodedMetamodel> c{manual("m0", {{"A", "x"}, {"B", "x"}})};
    for (int i = 1; i < 10; ++i) c.push_back(manual("m" + std::to_string(i), {{"A", "y"}}));
    const auto g = buildGraph(c);
    EXPECT_NEAR(tfidfVector(g, "m0").weights.at("x"), 2.0, 1e-12);
    c.push_back(manual("hollow", {}));
    EXPECT_TRUE(tfidfVector(buildGraph(c), "hollow").weights.empty());
}

TEST(SimGraph, Errors) {
    auto a = manual("a", {{"P", "x"}});
    auto b = manual("a", {{"P", "y"}});
    try {
        buildGraph(std::vector{a, b});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicateMetamodelId);
    }
    b.metamodelId = "b";
    b.scheme = EncodingScheme::IEs;
    try {
        buildGraph(std::vector{a, b});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MixedSchemes);
    }
    try {
        tfidfVector(buildGraph(std::vector{a}), "zzz");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownMetamodel);
    }
}

TEST(SimGraph, TfidfMatchesBruteForce) {
    RandomCorpusSpec spec;
    spec.maxMetamodels = 5;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        for (auto scheme : kAllSchemes) {
            std::vector<EncodedMetamodel> enc;
            std::vector<oracle::Model> models;
            for (const auto& m : generateRandomCorpus(spec, seed)) {
                enc.push_back(encode(m, scheme));
                models.push_back(oracle::fromEncoded(enc.back()));
            }
            const auto g = buildGraph(enc);
            for (const auto& e : enc) {
                const auto got = tfidfVector(g, e.metamodelId).weights;
                const auto want = oracle::tfidf(models, e.metamodelId);
                ASSERT_EQ(got.size(), want.size());
                for (const auto& [item, w] : want) {
                    EXPECT_NEAR(got.at(item), w, 1e-12);
                    EXPECT_GE(got.at(item), 0.0);
                }
            }
        }
    }
}

TEST(SimGraph, SweepMatchesPairwiseCosine) {
    RandomCorpusSpec spec;
    spec.minMetamodels = 3;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::vector<EncodedMetamodel> enc;
        for (const auto& m : generateRandomCorpus(spec, seed)) enc.push_back(encode(m, EncodingScheme::IEs));
        const auto g = buildGraph(enc);
        // With the active metamodel replacing its own node, the sweep is plain
        // pairwise cosine over the corpus graph.
        const auto sims = g.similarities(itemCounts(enc[0]), std::size_t{0});
        for (const auto& s : sims) {
            EXPECT_NE(s.member, 0u);
            EXPECT_NEAR(s.score,
                        cosine(tfidfVector(g, enc[0].metamodelId), tfidfVector(g, enc[s.member].metamodelId)),
                        1e-12);
        }
        EXPECT_EQ(sims.size(), enc.size() - 1);
    }
}

TEST(SimGraph, DumpFormat) {
    const std::vector<EncodedMetamodel> c{manual("a", {{"P", "x"}, {"Q", "x"}}), manual("b", {{"P", "y"}})};
    const auto dump = dumpGraph(buildGraph(c));
    EXPECT_NE(dump.find("a\tx\t2\n"), std::string::npos) << dump;
}
