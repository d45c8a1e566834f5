// memorec: ingest metamodel corpora, query recommendations, run offline
// evaluations and serve the HTTP API.
//
// Exit codes: 0 success, 1 I/O / load / corpus failures, 2 bad flags,
// 3 unknown recommendation context.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <pthread.h>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>

#include "memorec/corpus.hpp"
#include "memorec/error.hpp"
#include "memorec/eval.hpp"
#include "memorec/service.hpp"
#include "memorec/simd/kernels.hpp"

namespace {

using namespace memorec;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknownContext = 3;

const std::vector<std::string> kSchemeNames = {"SEs", "IEs", "SEc", "IEc"};

EncodingScheme schemeOf(const std::string& name) { return *parseScheme(name); }

std::string resolveIndexPath(const std::string& flag) {
    if (const char* env = std::getenv("MEMOREC_INDEX"); env != nullptr && *env != '\0') return env;
    return flag;
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content)) throw Error(ErrorCode::IoFailure, "cannot write " + path);
}

int usageError(const CLI::App& app, const std::string& message) {
    std::cerr << "error: " << message << "\n\n" << app.help();
    return kExitUsage;
}

struct IngestArgs {
    std::string in;
    std::string out;
    std::string report;
    std::vector<std::string> schemes = kSchemeNames;
};

struct RecommendArgs {
    std::string index;
    std::string model;
    std::string contextKind = "class";
    std::string context;
    std::string scheme = "SEs";
    std::size_t k = 5;
    std::optional<std::size_t> kContexts;
    std::size_t n = 10;
};

struct EvaluateArgs {
    std::string index;
    std::string scheme = "SEs";
    std::size_t k = 5;
    std::optional<std::size_t> kContexts;
    std::vector<std::size_t> cutoffs{1, 5, 10, 15, 20};
    std::size_t folds = 10;
    std::uint64_t seed = 42;
    std::string out = "report";
    bool noTiming = false;
};

struct ServeArgs {
    std::string index;
    std::string listen = "127.0.0.1:8080";
    std::string scheme = "SEs";
    std::size_t k = 5;
    std::optional<std::size_t> kContexts;
    std::size_t n = 10;
};

struct EncodeArgs {
    std::string model;
    std::string scheme = "SEs";
};

int runIngest(const IngestArgs& args) {
    std::vector<EncodingScheme> schemes;
    for (const auto& s : args.schemes) schemes.push_back(schemeOf(s));
    const auto index = ingestDirectory(args.in, schemes);
    saveIndex(index, args.out);
    const auto reportPath = args.report.empty() ? args.out + ".ingest.csv" : args.report;
    writeFile(reportPath, ingestionReportCsv(index));

    std::size_t counts[3] = {0, 0, 0};
    for (const auto& e : index.sourceLog) ++counts[static_cast<int>(e.status)];
    std::cerr << "accepted " << counts[0] << ", duplicate " << counts[1] << ", unparsable "
              << counts[2] << "; index written to " << args.out << "\n";
    return kExitOk;
}

int runRecommend(const CLI::App& app, const RecommendArgs& args) {
    const auto indexPath = resolveIndexPath(args.index);
    if (indexPath.empty()) return usageError(app, "--index or MEMOREC_INDEX is required");
    const auto kind = args.contextKind == "class" ? ContextKind::Class : ContextKind::Package;

    const RecommendationService service(loadIndex(indexPath), ServiceConfig{});
    const auto active = loadModelFile(args.model);
    const auto list = service.recommend(active, schemeOf(args.scheme), kind, args.context, args.k,
                                        args.kContexts.value_or(args.k), args.n);
    std::size_t rank = 1;
    for (const auto& e : list.entries) std::printf("%zu,%s,%.9f\n", rank++, e.item.c_str(), e.score);
    if (list.noNeighbours) std::cerr << "note: no corpus metamodel is similar to the model\n";
    return kExitOk;
}

int runEvaluate(const CLI::App& app, const EvaluateArgs& args) {
    const auto indexPath = resolveIndexPath(args.index);
    if (indexPath.empty()) return usageError(app, "--index or MEMOREC_INDEX is required");

    EvalConfig config;
    config.folds = args.folds;
    config.scheme = schemeOf(args.scheme);
    config.k = args.k;
    config.kContexts = args.kContexts.value_or(args.k);
    config.cutoffs = args.cutoffs;
    config.seed = args.seed;
    config.measureTime = !args.noTiming;
    validate(config);

    const auto report = runEvaluation(loadIndex(indexPath), config);
    writeFile(args.out + ".csv", report.toCsv());
    writeFile(args.out + ".json", report.toJson());
    std::cout << report.toCsv();
    return kExitOk;
}

int runServe(const CLI::App& app, const ServeArgs& args) {
    ServiceConfig config;
    config.indexPath = resolveIndexPath(args.index);
    if (config.indexPath.empty()) return usageError(app, "--index or MEMOREC_INDEX is required");
    parseListenAddress(args.listen, config);
    config.defaultScheme = schemeOf(args.scheme);
    config.defaultK = args.k;
    config.defaultKContexts = args.kContexts.value_or(args.k);
    config.defaultN = args.n;

    const RecommendationService service(loadIndex(config.indexPath), config);
    httplib::Server server;
    mountRoutes(server, service);

    // Signals are taken synchronously by one thread which then stops the
    // server; in-flight requests finish before listen() returns.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);
    std::thread watcher([&] {
        int received = 0;
        sigwait(&signals, &received);
        server.stop();
    });

    std::cerr << "serving " << service.index().metamodels.size() << " metamodels on "
              << config.host << ":" << config.port << " (simd: "
              << simd::toString(simd::activeLevel()) << ")\n";
    const bool ok = server.listen(config.host, config.port);
    if (!ok) {
        std::cerr << "error: cannot listen on " << config.host << ":" << config.port << "\n";
        pthread_kill(watcher.native_handle(), SIGTERM);
    }
    watcher.join();
    return ok ? kExitOk : kExitFailure;
}

int runEncode(const EncodeArgs& args) {
    std::cout << dumpPairs(encode(loadModelFile(args.model), schemeOf(args.scheme)));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memorec: metamodel completion recommender"};
    app.require_subcommand(1);
    const auto schemeCheck = CLI::IsMember(kSchemeNames);

    IngestArgs ingest;
    auto* ingestCmd = app.add_subcommand("ingest", "Index a directory of .ecore/.json metamodels");
    ingestCmd->add_option("--in", ingest.in, "Input directory")->required();
    ingestCmd->add_option("--out", ingest.out, "Index file to write")->required();
    ingestCmd->add_option("--report", ingest.report, "Ingestion report CSV (default <out>.ingest.csv)");
    ingestCmd->add_option("--schemes", ingest.schemes, "Comma separated encoding schemes")
        ->delimiter(',')
        ->check(schemeCheck);

    RecommendArgs rec;
    auto* recCmd = app.add_subcommand("recommend", "Rank items for a context of a partial model");
    recCmd->add_option("--index", rec.index, "Index file (MEMOREC_INDEX overrides)");
    recCmd->add_option("--model", rec.model, "Partial model (.ecore or .json)")->required();
    recCmd->add_option("--context-kind", rec.contextKind, "class or package")
        ->check(CLI::IsMember({"class", "package"}));
    recCmd->add_option("--context", rec.context, "Active class or package name")->required();
    recCmd->add_option("--scheme", rec.scheme, "Encoding scheme")->check(schemeCheck);
    recCmd->add_option("--k", rec.k, "Neighbour metamodels")->check(CLI::PositiveNumber);
    recCmd->add_option("--kcontexts", rec.kContexts, "Neighbour contexts (default k)")
        ->check(CLI::PositiveNumber);
    recCmd->add_option("--n", rec.n, "Cut-off")->check(CLI::NonNegativeNumber);

    EvaluateArgs ev;
    auto* evCmd = app.add_subcommand("evaluate", "Run the k-fold offline evaluation");
    evCmd->add_option("--index", ev.index, "Index file (MEMOREC_INDEX overrides)");
    evCmd->add_option("--scheme", ev.scheme, "Encoding scheme")->check(schemeCheck);
    evCmd->add_option("--k", ev.k, "Neighbour metamodels")->check(CLI::PositiveNumber);
    evCmd->add_option("--kcontexts", ev.kContexts, "Neighbour contexts (default k)")
        ->check(CLI::PositiveNumber);
    evCmd->add_option("--cutoffs", ev.cutoffs, "Comma separated cut-off values")->delimiter(',');
    evCmd->add_option("--folds", ev.folds, "Number of folds");
    evCmd->add_option("--seed", ev.seed, "Random seed");
    evCmd->add_option("--out", ev.out, "Report path prefix (<out>.csv, <out>.json)");
    evCmd->add_flag("--no-timing", ev.noTiming, "Report meanQueryMs as 0 for reproducible output");

    ServeArgs serve;
    auto* serveCmd = app.add_subcommand("serve", "Serve the HTTP API over an index");
    serveCmd->add_option("--index", serve.index, "Index file (MEMOREC_INDEX overrides)");
    serveCmd->add_option("--listen", serve.listen, "host:port");
    serveCmd->add_option("--scheme", serve.scheme, "Default encoding scheme")->check(schemeCheck);
    serveCmd->add_option("--k", serve.k, "Default neighbour metamodels")->check(CLI::PositiveNumber);
    serveCmd->add_option("--kcontexts", serve.kContexts, "Default neighbour contexts")
        ->check(CLI::PositiveNumber);
    serveCmd->add_option("--n", serve.n, "Default cut-off")->check(CLI::NonNegativeNumber);

    EncodeArgs enc;
    auto* encCmd = app.add_subcommand("encode", "Print the context#item pairs of a model");
    encCmd->add_option("--model", enc.model, "Model file (.ecore or .json)")->required();
    encCmd->add_option("--scheme", enc.scheme, "Encoding scheme")->check(schemeCheck);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const CLI::App* failed = &app;
        for (const auto* sub : app.get_subcommands()) failed = sub;
        return usageError(*failed, e.what());
    }

    try {
        if (*ingestCmd) return runIngest(ingest);
        if (*recCmd) return runRecommend(*recCmd, rec);
        if (*evCmd) return runEvaluate(*evCmd, ev);
        if (*serveCmd) return runServe(*serveCmd, serve);
        if (*encCmd) return runEncode(enc);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::UnknownContext: return kExitUnknownContext;
            case ErrorCode::InvalidArgument: return kExitUsage;
            default: return kExitFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
