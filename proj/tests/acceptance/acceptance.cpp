// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures_util.hpp"
#include "memorec/cf_engine.hpp"
#include "memorec/corpus.hpp"
#include "memorec/eval.hpp"
#include "memorec/simd/kernels.hpp"
#include "memorec/simgraph.hpp"
#include "memorec/synthetic.hpp"
#include "oracle/oracle.hpp"

using namespace memorec;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Collects the first few mismatches so a failing line says what went wrong.
class Checker {
public:
    void expect(bool cond, const std::string& what) {
        ++checks_;
        if (!cond) {
            ++failures_;
            if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
        }
    }
    Outcome result(const std::string& summary) const {
        std::ostringstream s;
        s << summary << ", " << checks_ << " checks";
        if (failures_) s << ", " << failures_ << " failed: " << messages_;
        return {failures_ == 0, s.str()};
    }

private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::string messages_;
};

int failed = 0;

void criterion(const char* name, double limitSeconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limitSeconds > 0 && secs >= limitSeconds) {
        out.ok = false;
        out.detail += ", over time limit";
    }
    std::printf("%s %s (%s; %.2fs", out.ok ? "PASS" : "FAIL", name, out.detail.c_str(), secs);
    if (limitSeconds > 0) std::printf(" of %.0fs", limitSeconds);
    std::printf(")\n");
    std::fflush(stdout);
    if (!out.ok) ++failed;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

Outcome similarityExample() {
    const FeatureVector web{{{"media", 0.528}, {"title", 0.528}, {"fields", -0.301}, {"entities", -0.301},
                             {"list", -0.301}}};
    const FeatureVector m1{{{"title", 0.528}, {"content", 0.528}}};
    const FeatureVector m2{{{"name", 1.204}, {"fields", 0.528}, {"list", 0.528}, {"index", 0.602},
                            {"type", 0.602}}};
    const std::vector<const FeatureVector*> v{&web, &m1, &m2};
    const double expected[3][3] = {{1, 0.41, -0.21}, {0.41, 1, 0.0}, {-0.21, 0.0, 1}};
    Checker c;
    std::string cells;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double got = cosine(*v[i], *v[j]);
            c.expect(std::abs(got - expected[i][j]) <= 0.01,
                     "cell " + std::to_string(i) + "," + std::to_string(j) + " = " + fmt(got));
            if (i < j) cells += (cells.empty() ? "" : " ") + fmt(got);
        }
    }
    return c.result("off-diagonal " + cells);
}

Outcome ratingMatrices() {
    const auto m = testutil::webMetamodel();
    Checker c;
    auto check = [&](EncodingScheme scheme, const std::vector<std::string>& cols,
                     const std::vector<std::pair<std::string, std::vector<int>>>& rows) {
        const RatingView view(encode(m, scheme));
        for (const auto& [ctx, cells] : rows) {
            for (std::size_t i = 0; i < cols.size(); ++i) {
                c.expect(view.cell(ctx, cols[i]) == cells[i], ctx + "#" + cols[i]);
            }
        }
        // No rated cell outside the expected matrix.
        std::size_t ones = 0, expectedOnes = 0;
        for (const auto& ctx : view.contexts()) ones += view.rowItems(ctx).size();
        for (const auto& [ctx, cells] : rows) expectedOnes += std::count(cells.begin(), cells.end(), 1);
        c.expect(ones == expectedOnes && view.contexts().size() == rows.size(), "extra cells");
    };
    check(EncodingScheme::SEc, {"Page", "Static", "Dynamic", "Entity", "Field"},
          {{"Web", {1, 1, 1, 0, 0}}, {"Data", {0, 0, 0, 1, 1}}});
    check(EncodingScheme::IEs, {"title", "meta", "content", "picture", "list", "entity", "name", "fields", "isPK"},
          {{"Page", {1, 1, 0, 0, 0, 0, 0, 0, 0}},
           {"Static", {1, 1, 1, 1, 0, 0, 0, 0, 0}},
           {"Dynamic", {1, 1, 0, 0, 1, 1, 0, 0, 0}},
           {"Entity", {0, 0, 0, 0, 0, 0, 1, 1, 0}},
           {"Field", {0, 0, 0, 0, 0, 0, 1, 0, 1}}});
    return c.result("10 package-class cells, 45 class-feature cells");
}

Outcome encodingCounts() {
    const auto m = testutil::webMetamodel();
    Checker c;
    auto rendered = [&](EncodingScheme s) {
        std::multiset<std::string> out;
        for (const auto& p : encode(m, s).pairs) out.insert(p.render());
        return out;
    };
    const auto ses = rendered(EncodingScheme::SEs), ies = rendered(EncodingScheme::IEs);
    const auto sec = rendered(EncodingScheme::SEc), iec = rendered(EncodingScheme::IEc);
    c.expect(ses.size() == 10, "SEs " + std::to_string(ses.size()));
    c.expect(ies.size() == 14, "IEs " + std::to_string(ies.size()));
    c.expect(sec.size() == 5, "SEc " + std::to_string(sec.size()));
    c.expect(iec.size() == 5, "IEc " + std::to_string(iec.size()));
    c.expect(std::includes(ies.begin(), ies.end(), ses.begin(), ses.end()), "SEs not within IEs");
    std::multiset<std::string> inherited;
    std::set_difference(ies.begin(), ies.end(), ses.begin(), ses.end(), std::inserter(inherited, inherited.end()));
    c.expect(inherited == std::multiset<std::string>{"Static#title", "Static#meta", "Dynamic#title", "Dynamic#meta"},
             "inherited pairs");
    c.expect(sec == std::multiset<std::string>{"Web#Page", "Web#Static", "Web#Dynamic", "Data#Entity", "Data#Field"},
             "SEc pairs");
    c.expect(iec == std::multiset<std::string>{"__root#Page", "__root#Static", "__root#Dynamic", "__root#Entity",
                                               "__root#Field"},
             "IEc pairs");
    return c.result("SEs 10, IEs 14, SEc 5, IEc 5");
}

Outcome oracleEquivalence() {
    RandomCorpusSpec spec;
    spec.minMetamodels = 2;
    spec.maxMetamodels = 10;
    const std::size_t corpora = 220;
    const std::array<std::size_t, 3> ks{1, 2, 5};
    Checker c;
    std::size_t queries = 0, scored = 0, nonEmpty = 0;
    for (std::uint64_t seed = 0; seed < corpora; ++seed) {
        const auto models = generateRandomCorpus(spec, 1000 + seed);
        for (auto scheme : kAllSchemes) {
            std::vector<EncodedMetamodel> corpus;
            std::vector<oracle::Model> oracleCorpus;
            for (std::size_t i = 1; i < models.size(); ++i) {
                corpus.push_back(encode(models[i], scheme));
                oracleCorpus.push_back(oracle::fromEncoded(corpus.back()));
            }
            const Recommender engine(corpus);
            // The active metamodel is the first one with part of a context held
            // back, as a modeler would have it.
            auto active = encode(models[0], scheme);
            if (const auto qc = makeQueryCase(active, seed)) active = applyQueryCase(active, *qc);
            const auto oracleActive = oracle::fromEncoded(active);
            for (const auto& ctx : active.contexts) {
                for (auto k : ks) {
                    for (auto kc : ks) {
                        const RecommendationQuery q{active, ctx, k, kc, 1000};
                        const auto got = engine.recommend(q);
                        const auto want = oracle::recommend(oracleCorpus, oracleActive, ctx, k, kc, 1000);
                        ++queries;
                        const std::string where = "seed " + std::to_string(seed) + " " +
                                                  std::string(toString(scheme)) + " " + ctx + " k" +
                                                  std::to_string(k) + " kc" + std::to_string(kc);
                        c.expect(got.entries.size() == want.scores.size(), where + " candidate count");
                        nonEmpty += got.entries.empty() ? 0 : 1;
                        for (std::size_t i = 0; i < got.entries.size(); ++i) {
                            const auto& e = got.entries[i];
                            const auto it = want.scores.find(e.item);
                            c.expect(it != want.scores.end() && std::abs(it->second - e.score) <= 1e-9,
                                     where + " item " + e.item);
                            if (i > 0) c.expect(got.entries[i - 1].score >= e.score, where + " order");
                            ++scored;
                        }
                    }
                }
            }
        }
    }
    return c.result(std::to_string(corpora) + " corpora, " + std::to_string(queries) + " queries (" +
                    std::to_string(nonEmpty) + " non-empty), " + std::to_string(scored) + " scores");
}

Outcome metricArithmetic() {
    std::mt19937_64 rng(2024);
    const std::vector<std::size_t> cutoffs{1, 2, 3, 5, 7, 10, 15, 20, 25, 40};
    Checker c;
    std::vector<CaseOutcome> cases;
    std::size_t equalPR = 0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t vocab = std::uniform_int_distribution<std::size_t>(2, 60)(rng);
        std::vector<std::string> items;
        for (std::size_t v = 0; v < vocab; ++v) items.push_back("f" + std::to_string(v));
        std::shuffle(items.begin(), items.end(), rng);
        const std::size_t recLen = std::uniform_int_distribution<std::size_t>(0, vocab)(rng);
        std::vector<std::string> rec(items.begin(), items.begin() + recLen);
        std::shuffle(items.begin(), items.end(), rng);
        std::size_t gtSize = std::uniform_int_distribution<std::size_t>(1, vocab)(rng);
        // Every fourth case sizes the ground truth to a cut-off so that p = r occurs.
        if (i % 4 == 0) gtSize = std::min(vocab, cutoffs[i % cutoffs.size()]);
        const std::set<std::string> gt(items.begin(), items.begin() + gtSize);
        cases.push_back(CaseOutcome{QueryCase{"m" + std::to_string(i), "C", {"q"}, gt}, rec, 0.0});

        const auto& o = cases.back();
        for (auto n : cutoffs) {
            std::size_t tp = 0;
            for (std::size_t r = 0; r < std::min(n, rec.size()); ++r) tp += gt.count(rec[r]);
            const auto m = precisionRecallF1(o, n);
            const std::string where = "case " + std::to_string(i) + " N" + std::to_string(n);
            c.expect(truePositives(gt, rec, n) == tp, where + " TP");
            c.expect(std::llround(m.precision * n) == static_cast<long long>(tp) &&
                         std::abs(m.precision * n - tp) < 1e-9,
                     where + " precision*N");
            c.expect(m.recall <= 1.0 && m.recall >= 0.0, where + " recall");
            c.expect(tp <= std::min(n, gt.size()), where + " TP bound");
            c.expect((m.f1 == 0.0) == (tp == 0), where + " F1 zero");
            if (m.precision == m.recall) {
                ++equalPR;
                c.expect(std::abs(m.f1 - m.precision) <= 1e-15, where + " F1 fixed point");
            }
        }
    }
    // SR@N over growing prefixes of the case set.
    for (std::size_t size = 1; size <= cases.size(); size += 37) {
        const std::span<const CaseOutcome> subset(cases.data(), size);
        double last = -1.0;
        for (auto n : cutoffs) {
            const double sr = successRateAtN(subset, n);
            c.expect(sr >= last && sr >= 0.0 && sr <= 1.0, "SR monotone at N" + std::to_string(n));
            last = sr;
        }
    }
    return c.result("1000 cases x " + std::to_string(cutoffs.size()) + " cut-offs, " + std::to_string(equalPR) +
                    " with p = r");
}

// Every report produced by the suite is also checked for the cut-off sweep.
Checker monotonicity;
std::size_t monotoneRuns = 0;

void recordMonotonicity(const MetricsReport& report) {
    ++monotoneRuns;
    std::map<std::string, std::map<std::size_t, double>> sr;
    for (const auto& r : report.foldRows) sr[r.fold][r.n] = r.successRate;
    for (const auto& r : report.aggregateRows) sr[r.fold][r.n] = r.successRate;
    for (const auto& [fold, byN] : sr) {
        monotonicity.expect(byN.count(1) && byN.count(10) && byN.count(20), "fold " + fold + " lacks cut-offs");
        if (!byN.count(1) || !byN.count(10) || !byN.count(20)) continue;
        monotonicity.expect(byN.at(1) <= byN.at(10) && byN.at(10) <= byN.at(20),
                            "fold " + fold + ": " + fmt(byN.at(1)) + " " + fmt(byN.at(10)) + " " +
                                fmt(byN.at(20)));
    }
}

Outcome evaluationProtocol() {
    SyntheticCorpusSpec spec;  // 5 clusters x 20
    const auto index = buildIndex(generateSyntheticCorpus(spec, 77), kAllSchemes);
    Checker c;
    c.expect(index.metamodels.size() == 100, "corpus size " + std::to_string(index.metamodels.size()));

    const auto splits = splitFolds(index, 10, 42);
    std::multiset<std::string> tested;
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& f : splits) {
        lo = std::min(lo, f.testing.size());
        hi = std::max(hi, f.testing.size());
        tested.insert(f.testing.begin(), f.testing.end());
        std::set<std::string> fold(f.training.begin(), f.training.end());
        fold.insert(f.testing.begin(), f.testing.end());
        c.expect(fold.size() == index.metamodels.size(), "fold does not cover the corpus");
    }
    const auto ids = index.ids();
    c.expect(tested == std::multiset<std::string>(ids.begin(), ids.end()), "testing sets do not partition");
    c.expect(splits.size() == 10 && hi - lo <= 1, "fold sizes");

    std::string first;
    for (auto scheme : kAllSchemes) {
        EvalConfig config;
        config.scheme = scheme;
        config.seed = 42;
        config.measureTime = false;
        std::size_t leaks = 0, cases = 0;
        const auto report = runEvaluation(index, config, [&](std::size_t, const FoldSplit& split,
                                                             const Recommender& engine,
                                                             std::span<const CaseOutcome> outcomes) {
            for (const auto& id : split.testing) leaks += engine.graph().metamodelIndex(id) ? 1 : 0;
            for (const auto& id : engine.graph().metamodelIds()) {
                leaks += std::count(split.testing.begin(), split.testing.end(), id);
            }
            cases += outcomes.size();
        });
        c.expect(leaks == 0, std::string(toString(scheme)) + " leakage");
        c.expect(cases > 0, std::string(toString(scheme)) + " produced no cases");
        const auto again = runEvaluation(index, config);
        c.expect(report.toCsv() == again.toCsv(), std::string(toString(scheme)) + " CSV differs");
        recordMonotonicity(report);
        if (first.empty()) first = std::string(toString(scheme)) + " SR@10 " + fmt(report.aggregateRows[2].successRate);
    }
    return c.result("100 metamodels, fold sizes " + std::to_string(lo) + ".." + std::to_string(hi) + ", " + first);
}

Outcome clusteredBeatsUnclustered() {
    double clustered = 0.0, unclustered = 0.0;
    const int seeds = 20;
    std::size_t wins = 0;
    for (int s = 0; s < seeds; ++s) {
        double sr[2];
        for (int variant = 0; variant < 2; ++variant) {
            SyntheticCorpusSpec spec;
            spec.clusters = 5;
            spec.perCluster = 20;
            spec.sharedFraction = 0.7;
            spec.clustered = variant == 0;
            const auto index =
                buildIndex(generateSyntheticCorpus(spec, 500 + s), std::array{EncodingScheme::SEs});
            EvalConfig config;
            config.scheme = EncodingScheme::SEs;
            config.k = 5;
            config.kContexts = 5;
            config.seed = static_cast<std::uint64_t>(s);
            config.measureTime = false;
            const auto report = runEvaluation(index, config);
            recordMonotonicity(report);
            sr[variant] = 0.0;
            for (const auto& r : report.aggregateRows) {
                if (r.n == 10) sr[variant] = r.successRate;
            }
        }
        clustered += sr[0];
        unclustered += sr[1];
        wins += sr[0] > sr[1] ? 1 : 0;
    }
    clustered /= seeds;
    unclustered /= seeds;
    Checker c;
    c.expect(clustered > unclustered, "clustered not higher");
    return c.result("mean SR@10 clustered " + fmt(clustered) + " vs unclustered " + fmt(unclustered) + ", " +
                    std::to_string(wins) + "/20 seeds higher");
}

Outcome cutoffMonotonicity() {
    return monotonicity.result(std::to_string(monotoneRuns) + " evaluation runs");
}

Outcome dedup() {
    const auto index = ingestDirectory(MEMOREC_FIXTURES "/dedup", kAllSchemes);
    std::map<SourceStatus, int> counts;
    for (const auto& e : index.sourceLog) counts[e.status]++;
    Checker c;
    c.expect(index.sourceLog.size() == 3, "scanned " + std::to_string(index.sourceLog.size()));
    c.expect(counts[SourceStatus::Accepted] == 2, "accepted " + std::to_string(counts[SourceStatus::Accepted]));
    c.expect(counts[SourceStatus::Duplicate] == 1, "duplicate " + std::to_string(counts[SourceStatus::Duplicate]));
    for (auto s : kAllSchemes) {
        c.expect(index.scheme(s).graph.metamodelCount() == 2, std::string(toString(s)) + " |M|");
    }
    return c.result("accepted " + std::to_string(counts[SourceStatus::Accepted]) + ", duplicate " +
                    std::to_string(counts[SourceStatus::Duplicate]) + ", |M| = 2 in all four graphs");
}

}  // namespace

int main() {
    criterion("similarity-worked-example", 1, similarityExample);
    criterion("rating-matrix-reconstruction", 1, ratingMatrices);
    criterion("encoding-counts", 1, encodingCounts);
    criterion("cf-oracle-equivalence", 60, oracleEquivalence);
    criterion("metric-arithmetic", 10, metricArithmetic);
    criterion("evaluation-protocol", 30, evaluationProtocol);
    criterion("clustered-vs-unclustered", 300, clusteredBeatsUnclustered);
    criterion("cutoff-monotonicity", 0, cutoffMonotonicity);
    criterion("dedup", 0, dedup);
    std::printf("%s: %d of 9 criteria failed (kernels: %s)\n", failed ? "FAILED" : "OK", failed,
                std::string(simd::toString(simd::activeLevel())).c_str());
    return failed ? 1 : 0;
}
