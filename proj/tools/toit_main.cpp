// Command-line front end: mine, verify, gen, bench.
//
// Exit codes: 0 success, 1 verification mismatch or unexpected failure,
// 2 invalid input or arguments, 3 database too large for the oracle,
// 4 time limit exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "toit/bench.hpp"
#include "toit/dataset.hpp"
#include "toit/generator.hpp"
#include "toit/oracle.hpp"
#include "toit/search.hpp"

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitValidation = 2;
constexpr int kExitOracleSize = 3;
constexpr int kExitTimeout = 4;

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (!part.empty()) parts.push_back(part);
    }
    return parts;
}

void write_stats(const std::string& path, std::size_t k, const toit::MiningResult& result) {
    nlohmann::ordered_json j;
    j["k"] = k;
    j["patterns"] = result.stats.patterns_emitted;
    j["interutil_num"] = result.interutil.num;
    j["interutil_den"] = result.interutil.den;
    j["candidates"] = result.stats.candidates_evaluated;
    j["projections"] = result.stats.projections_built;
    j["merges"] = result.stats.merges_performed;
    j["max_depth"] = result.stats.max_depth;
    j["elapsed_ms"] = result.stats.elapsed_ms;
    std::ofstream out(path);
    if (!out) throw toit::DatasetError(toit::DatasetErrorKind::Io, "cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Top-k on-shelf high relative utility itemset miner"};
    app.require_subcommand(1);

    std::string input, output, stats_path;
    std::size_t k = 0;
    bool no_merge = false, no_su = false, no_lu = false, parallel = false;
    unsigned threads = 0;
    long timeout_ms = 0;

    auto* mine = app.add_subcommand("mine", "mine the top-k itemsets of a database");
    mine->add_option("-i,--input", input, "database file")->required();
    mine->add_option("-k", k, "number of patterns")->required();
    mine->add_option("-o,--output", output, "pattern output file")->required();
    mine->add_option("--stats", stats_path, "write run statistics as JSON");
    mine->add_flag("--no-merge", no_merge, "disable transaction merging");
    mine->add_flag("--no-su-prune", no_su, "disable subtree-utility pruning");
    mine->add_flag("--no-lu-prune", no_lu, "disable local-utility pruning");
    mine->add_flag("--parallel", parallel, "explore root extensions on several threads");
    mine->add_option("--threads", threads, "worker threads for --parallel (0 = all cores)");
    mine->add_option("--timeout-ms", timeout_ms, "abort after this many milliseconds (0 = none)");

    auto* verify = app.add_subcommand("verify", "compare the miner against brute-force enumeration");
    verify->add_option("-i,--input", input, "database file")->required();
    verify->add_option("-k", k, "number of patterns")->required();

    toit::GeneratorParams gen_params;
    auto* gen = app.add_subcommand("gen", "write a synthetic database");
    gen->add_option("-o,--output", output, "database file")->required();
    gen->add_option("--transactions", gen_params.n_transactions)->required();
    gen->add_option("--items", gen_params.n_items)->required();
    gen->add_option("--periods", gen_params.n_periods)->required();
    gen->add_option("--avg-len", gen_params.avg_transaction_length)->required();
    gen->add_option("--neg-frac", gen_params.negative_item_fraction)->required();
    gen->add_option("--max-qty", gen_params.max_quantity)->required();
    gen->add_option("--max-profit", gen_params.max_profit)->required();
    gen->add_option("--seed", gen_params.seed)->required();

    std::string k_list;
    std::size_t repeats = 1;
    std::uint32_t reperiod_n = 0;
    bool ablation = false;
    auto* bench = app.add_subcommand("bench", "time the miner over datasets and k values, write CSV");
    bench->add_option("-i,--input", input, "comma-separated database files")->required();
    bench->add_option("--k-list", k_list, "comma-separated k values")->required();
    bench->add_option("--repeat", repeats, "repetitions per cell");
    bench->add_option("--reperiod", reperiod_n, "reassign periods round-robin into N periods");
    bench->add_option("--out", output, "CSV output file")->required();
    bench->add_flag("--ablation", ablation, "also run the pruning-off variants");
    bench->add_option("--timeout-ms", timeout_ms, "per-cell time limit (0 = none)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (mine->parsed()) {
            const auto db = toit::load_database(input);
            toit::MineOptions options;
            options.merge = !no_merge;
            options.prune = {!no_su, !no_lu};
            options.parallel = parallel;
            options.threads = threads;
            if (timeout_ms > 0) options.timeout = std::chrono::milliseconds(timeout_ms);
            const auto result = toit::mine_top_k(db, k, options);
            toit::save_patterns(result.patterns, output);
            if (!stats_path.empty()) write_stats(stats_path, k, result);
            return 0;
        }
        if (verify->parsed()) {
            const auto db = toit::load_database(input);
            // oracle first: it refuses oversized inputs before the engine runs
            const auto expected = toit::oracle::oracle_top_k(db, k);
            const auto engine = toit::mine_top_k(db, k).patterns;
            std::size_t rank = 0;
            while (rank < engine.size() && rank < expected.size() && toit::identical(engine[rank], expected[rank])) {
                ++rank;
            }
            if (rank == engine.size() && rank == expected.size()) {
                std::cout << "PASS k=" << k << " patterns=" << engine.size() << '\n';
                return 0;
            }
            std::cout << "FAIL k=" << k << " engine=" << engine.size() << " oracle=" << expected.size()
                      << " first_difference_rank=" << rank + 1 << " engine_line=\""
                      << (rank < engine.size() ? toit::format_pattern(engine[rank]) : "") << "\" oracle_line=\""
                      << (rank < expected.size() ? toit::format_pattern(expected[rank]) : "") << "\"\n";
            return kExitMismatch;
        }
        if (gen->parsed()) {
            const auto text = toit::generate(gen_params);
            std::ofstream out(output, std::ios::binary);
            if (!out) throw toit::DatasetError(toit::DatasetErrorKind::Io, "cannot open " + output);
            out << text;
            return 0;
        }
        if (bench->parsed()) {
            toit::BenchConfig config;
            for (const auto& v : split_commas(k_list)) config.k_list.push_back(std::stoul(v));
            config.repeats = repeats;
            if (reperiod_n > 0) config.reperiod = reperiod_n;
            config.ablation = ablation;
            if (timeout_ms > 0) config.timeout = std::chrono::milliseconds(timeout_ms);
            std::vector<std::filesystem::path> paths;
            for (const auto& p : split_commas(input)) paths.emplace_back(p);
            const auto records = toit::run_bench(paths, config);
            std::ofstream out(output);
            if (!out) throw toit::DatasetError(toit::DatasetErrorKind::Io, "cannot open " + output);
            toit::write_bench_csv(records, out);
            return 0;
        }
    } catch (const toit::DatasetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const toit::InvalidK& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const toit::InfeasibleParams& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const toit::oracle::TooLargeForOracle& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOracleSize;
    } catch (const toit::MiningTimeout& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitTimeout;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMismatch;
    }
    return 0;
}
