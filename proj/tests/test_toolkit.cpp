#include <doctest.h>

#include <map>
#include <sstream>

#include "corpus.hpp"
#include "toit/bench.hpp"
#include "toit/generator.hpp"

using namespace toit;

TEST_CASE("generator is deterministic") {
    GeneratorParams p;
    p.n_transactions = 10;
    p.n_items = 5;
    p.n_periods = 2;
    p.seed = 42;
    const auto first = generate(p);
    CHECK(first == generate(p));
    p.seed = 43;
    CHECK(first != generate(p));
}

TEST_CASE("generated text always validates") {
    std::size_t ok = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        GeneratorParams p;
        p.n_transactions = 50 + seed;
        p.n_items = 20;
        p.n_periods = 1 + seed % 6;
        p.negative_item_fraction = 0.1 * static_cast<double>(seed % 5);
        p.seed = seed;
        try {
            const auto db = parse_database_text(generate(p));
            CHECK(db.transactions().size() == p.n_transactions);
            CHECK(db.periods().size() <= p.n_periods);
            for (const auto total : db.period_totals()) CHECK(total > 0);
            ++ok;
        } catch (const InfeasibleParams&) {
        }
    }
    CHECK(ok > 50);
}

TEST_CASE("zero negative fraction gives only positive utilities") {
    GeneratorParams p;
    p.negative_item_fraction = 0.0;
    p.n_transactions = 200;
    const auto db = generate_database(p);
    for (const auto& t : db.transactions()) {
        for (const auto& e : t.entries) CHECK(e.utility > 0);
    }
}

TEST_CASE("invalid generator parameters") {
    GeneratorParams p;
    p.negative_item_fraction = 1.0;
    CHECK_THROWS_AS(generate(p), InfeasibleParams);
    p = {};
    p.n_items = 0;
    CHECK_THROWS_AS(generate(p), InfeasibleParams);
    p = {};
    p.min_quantity = 4;
    p.max_quantity = 2;
    CHECK_THROWS_AS(generate(p), InfeasibleParams);
    p = {};
    p.min_profit = 0;
    CHECK_THROWS_AS(generate(p), InfeasibleParams);
}

TEST_CASE("bench produces one row per dataset, k and repeat") {
    std::vector<BenchDataset> datasets;
    datasets.push_back({"example", testing::running_example()});
    BenchConfig config;
    config.k_list = {10, 50, 100};
    config.repeats = 3;
    const auto records = run_bench(datasets, config);
    CHECK(records.size() == 9);
    for (const auto& r : records) {
        CHECK(r.dataset == "example");
        CHECK(r.variant == "default");
        CHECK(r.periods == 3);
        CHECK_FALSE(r.timed_out);
        CHECK(r.candidates > 0);
    }
    std::ostringstream csv;
    write_bench_csv(records, csv);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "dataset,variant,k,periods,repeat,elapsed_ms,peak_rss_kb_estimate,candidates,patterns,status");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.ends_with(",ok"));
    }
    CHECK(rows == 9);
}

TEST_CASE("bench ablation and reperiod") {
    GeneratorParams p;
    p.n_transactions = 300;
    p.n_items = 25;
    p.seed = 5;
    std::vector<BenchDataset> datasets{{"gen", generate_database(p)}};
    BenchConfig config;
    config.k_list = {5, 20, 80};
    config.ablation = true;
    config.reperiod = 8;
    const auto records = run_bench(datasets, config);
    REQUIRE(records.size() == 12);
    std::map<std::string, std::vector<std::uint64_t>> by_variant;
    for (const auto& r : records) {
        CHECK(r.periods == 8);
        by_variant[r.variant].push_back(r.candidates);
    }
    CHECK(by_variant.size() == 4);
    for (std::size_t i = 0; i < 3; ++i) {
        for (const auto& variant : {"no-su-prune", "no-lu-prune", "no-prune"}) {
            CHECK(by_variant["default"][i] <= by_variant[variant][i]);
        }
        CHECK(by_variant["no-su-prune"][i] <= by_variant["no-prune"][i]);
        CHECK(by_variant["no-lu-prune"][i] <= by_variant["no-prune"][i]);
    }
}

TEST_CASE("bench marks timed-out cells and keeps going") {
    std::string text;
    for (int t = 0; t < 300; ++t) {
        std::string items;
        std::string utils;
        for (int i = 1; i <= 20; ++i) {
            items += (i > 1 ? " " : "") + std::to_string(i);
            utils += (i > 1 ? " " : "") + std::to_string(1 + (i * t) % 7);
        }
        Money tu = 0;
        for (int i = 1; i <= 20; ++i) tu += 1 + (i * t) % 7;
        text += items + ":" + std::to_string(tu) + ":" + utils + ":" + std::to_string(t % 2) + "\n";
    }
    std::vector<BenchDataset> datasets{{"dense", parse_database_text(text)}, {"small", testing::running_example()}};
    BenchConfig config;
    config.k_list = {1u << 20};
    config.timeout = std::chrono::milliseconds(5);
    const auto records = run_bench(datasets, config);
    REQUIRE(records.size() == 2);
    CHECK(records[0].timed_out);
    CHECK_FALSE(records[1].timed_out);
    std::ostringstream csv;
    write_bench_csv(records, csv);
    CHECK(csv.str().find("dense,default," + std::to_string(1u << 20) + ",2,0,") != std::string::npos);
    CHECK(csv.str().find(",,,timeout\n") != std::string::npos);
}

TEST_CASE("peak memory estimate is available on linux") {
    CHECK(peak_rss_kb() > 0);
}
