// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
// any criterion fails, unless it is listed in kKnownFailures (values that
// cannot hold for the input tables; see README).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bound_chain.hpp"
#include "corpus.hpp"
#include "toit/bench.hpp"
#include "toit/generator.hpp"
#include "toit/oracle.hpp"
#include "toit/preprocess.hpp"
#include "toit/projection.hpp"
#include "toit/search.hpp"

using namespace toit;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned limits.
constexpr double kGoldenSeconds = 1.0;
constexpr double kOracleSeconds = 60.0;
constexpr double kAblationSeconds = 120.0;
constexpr double kChainSeconds = 30.0;
constexpr double kScaleSeconds = 60.0;
constexpr std::size_t kScaleRssKb = 1024 * 1024;
constexpr std::size_t kCorpusSize = 240;
constexpr std::size_t kChainCorpusSize = 120;
constexpr std::size_t kAll = 1u << 20;
const std::vector<std::size_t> kKs{1, 3, 5, 10, kAll};

// Criterion 1 sub-checks whose stated value contradicts the input tables.
const std::set<std::string> kKnownFailures{"TU(T_2)", "TWU(e,2)"};

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool same_patterns(const std::vector<Pattern>& a, const std::vector<Pattern>& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), identical);
}

std::string str(const Rational& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

void report(int id, const std::string& title, const Outcome& o, const std::string& detail) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << title << "): " << detail << '\n';
    for (const auto& n : o.notes) std::cout << "    - " << n << '\n';
    std::cout.flush();
}

// ---------------------------------------------------------------------------

struct Golden {
    std::string name;
    std::int64_t expected;
    std::int64_t actual;
};

bool criterion1(std::vector<std::string>& unexpected) {
    const auto start = Clock::now();
    const auto db = testing::running_example();
    const auto& ts = db.transactions();
    const std::vector<ItemId> ce{3, 5};
    const std::vector<ItemId> be{2, 5};
    const std::vector<ItemId> ae{1, 5};
    const std::vector<ItemId> hand_order{1, 5, 3, 2, 4};  // processing order a e c b d

    const auto all = mine_top_k(db, kAll).patterns;
    auto mined = [&](const std::vector<ItemId>& items) -> const Pattern* {
        const auto it = std::find_if(all.begin(), all.end(), [&](const Pattern& p) { return p.items == items; });
        return it == all.end() ? nullptr : &*it;
    };
    const auto* p_be = mined(be);
    const auto* p_ce = mined(ce);

    const auto twu = compute_period_twu(db);
    auto twu_of = [&](ItemId id, Period h) {
        return twu.value(*db.period_slot(h), static_cast<std::uint32_t>(*db.item_slot(id)));
    };

    // reu({b,e},2) through the engine's subtree bound under a hand-picked order
    const auto order = ItemOrder::from_sequence(db, {0, 4, 2, 1, 3});
    const auto work = build_working_database(db, order, ItemMask{1, 0, 0, 1, 1}, ItemMask{0, 1, 1, 0, 0}, false);
    ProjectedDatabase root;
    ProjectedDatabase pe;
    root.assign_root(work);
    project(root, *work.dense_index(5), pe);
    std::vector<std::uint8_t> after_e(work.item_count(), 0);
    for (auto d = *work.dense_index(5) + 1; d < work.item_count(); ++d) after_e[d] = 1;
    BoundArray su(work.period_count(), work.item_count());
    subtree_utilities(pe, after_e, su);

    std::vector<Golden> golden{
        {"u(a,T_1)", 5, ts[0].entries[0].utility},
        {"u({c,e},T_6)", 18, oracle::utility_in(ts[5], ce).value_or(-1)},
        {"u({c,e}) oracle", 24, oracle::itemset_utility(db, ce)},
        {"u({c,e}) engine", 24, p_ce ? p_ce->utility : -1},
        {"TU(T_2)", 24, transaction_utility(ts[1])},
        {"PTU(T_2)", 36, positive_transaction_utility(ts[1])},
        {"u({c,e},2)", 24, oracle::itemset_period_utility(db, ce, 2)},
        {"to({b,e}) oracle", 154, oracle::itemset_period_total(db, be)},
        {"to({b,e}) engine", 154, p_be ? p_be->period_total : -1},
        {"u({b,e}) oracle", 28, oracle::itemset_utility(db, be)},
        {"u({b,e}) engine", 28, p_be ? p_be->utility : -1},
        {"TWU(c,2)", 66, twu_of(3, 2)},
        {"TWU(c,2) oracle", 66, oracle::itemset_twu(db, std::vector<ItemId>{3}, 2)},
        {"TWU(e,2)", 66, twu_of(5, 2)},
        {"pto(1)", 85, db.period_total(1)},
        {"pre({a,e},1)", 12, oracle::remaining_utility(db, ae, 1, hand_order, true)},
        {"positive-remaining({b,e},2)", 36, oracle::remaining_utility(db, be, 2, hand_order, true)},
        {"reu({b,e},2) oracle", 60,
         oracle::itemset_period_utility(db, be, 2) + oracle::remaining_utility(db, be, 2, hand_order, true)},
        {"reu({b,e},2) engine su", 60, su.value(*db.period_slot(2), *work.dense_index(2))},
    };

    Outcome o;
    for (const auto& g : golden) {
        if (g.expected == g.actual) continue;
        const std::string base = g.name.substr(0, g.name.find(' '));
        std::string note = g.name + ": expected " + std::to_string(g.expected) + ", got " + std::to_string(g.actual);
        if (kKnownFailures.count(base)) {
            note += base == "TU(T_2)" ? " (table entries (b,1)(c,2)(d,12) with profits -3,-2,3 sum to 29)"
                                      : " (e also occurs in T_4 of period 2: PTU 15 + 46 + 20 = 81)";
        } else {
            unexpected.push_back(g.name);
        }
        o.require(false, note);
    }

    auto check = [&](bool ok, const std::string& what) {
        if (ok) return;
        o.require(false, what);
        unexpected.push_back(what);
    };
    check(oracle::itemset_periods(db, be) == std::vector<Period>{1, 2}, "pi({b,e}) != {1,2}");
    check(p_be && p_be->periods == std::vector<Period>{1, 2}, "engine pi({b,e}) != {1,2}");
    check(p_be && same_terms(p_be->relative_utility(), Rational{28, 154}), "engine ru({b,e}) != 28/154");
    check(same_terms(Rational{oracle::itemset_period_utility(db, be, 1), db.period_total(1)}, Rational{4, 85}),
          "ru({b,e},1) != 4/85");

    const double elapsed = seconds_since(start);
    check(elapsed < kGoldenSeconds, "took " + std::to_string(elapsed) + " s");
    report(1, "running-example golden values", o,
           std::to_string(golden.size() + 4) + " values checked in " + std::to_string(elapsed) + " s");
    return o.pass;
}

bool criterion2(const std::vector<testing::CorpusEntry>& corpus) {
    const auto start = Clock::now();
    Outcome o;
    std::size_t comparisons = 0;
    std::size_t with_negatives = 0;
    for (const auto& e : corpus) {
        bool neg = false;
        for (const std::size_t k : kKs) {
            const auto engine = mine_top_k(e.db, k).patterns;
            const auto expected = oracle::oracle_top_k(e.db, k);
            ++comparisons;
            for (const auto& p : engine) {
                neg = neg || std::any_of(p.items.begin(), p.items.end(), [&](ItemId id) {
                          return !e.db.items()[*e.db.item_slot(id)].positive;
                      });
            }
            if (!same_patterns(engine, expected)) {
                o.require(false, e.name + " k=" + std::to_string(k) + ": engine " + std::to_string(engine.size()) +
                                     " patterns, oracle " + std::to_string(expected.size()));
            }
        }
        with_negatives += neg ? 1 : 0;
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed < kOracleSeconds, "took " + std::to_string(elapsed) + " s");
    report(2, "oracle equivalence", o,
           std::to_string(corpus.size()) + " databases x " + std::to_string(kKs.size()) + " k values = " +
               std::to_string(comparisons) + " comparisons, " + std::to_string(with_negatives) +
               " databases with negative items in results, " + std::to_string(elapsed) + " s");
    return o.pass;
}

bool criterion3(const std::vector<testing::CorpusEntry>& corpus) {
    const auto start = Clock::now();
    Outcome o;
    const std::vector<std::pair<std::string, PruneFlags>> variants{
        {"no-su-prune", {false, true}}, {"no-lu-prune", {true, false}}, {"no-prune", {false, false}}};
    std::map<std::string, std::uint64_t> totals;
    for (const auto& e : corpus) {
        for (const std::size_t k : kKs) {
            const auto base = mine_top_k(e.db, k);
            totals["default"] += base.stats.candidates_evaluated;
            for (const auto& [name, flags] : variants) {
                MineOptions options;
                options.prune = flags;
                const auto other = mine_top_k(e.db, k, options);
                totals[name] += other.stats.candidates_evaluated;
                const std::string where = e.name + " k=" + std::to_string(k) + " " + name;
                if (!same_patterns(base.patterns, other.patterns)) o.require(false, where + ": results differ");
                if (base.stats.candidates_evaluated > other.stats.candidates_evaluated) {
                    o.require(false, where + ": default evaluated " + std::to_string(base.stats.candidates_evaluated) +
                                         " > " + std::to_string(other.stats.candidates_evaluated));
                }
            }
        }
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed < kAblationSeconds, "took " + std::to_string(elapsed) + " s");
    std::ostringstream detail;
    detail << "candidates default=" << totals["default"] << " no-su-prune=" << totals["no-su-prune"]
           << " no-lu-prune=" << totals["no-lu-prune"] << " no-prune=" << totals["no-prune"] << ", " << elapsed
           << " s";
    report(3, "pruning ablation", o, detail.str());
    return o.pass;
}

bool criterion4() {
    const auto start = Clock::now();
    Outcome o;
    auto corpus = testing::random_corpus(kChainCorpusSize, 8);
    corpus.push_back({"running_example", testing::running_example()});
    corpus.push_back({"non_monotone", testing::non_monotone_example()});
    std::size_t checks = 0;
    std::size_t prefixes = 0;
    for (const auto& e : corpus) {
        for (const bool merge : {false, true}) {
            const auto r = testing::check_bound_chain(e.db, merge);
            checks += r.checks;
            prefixes += r.prefixes;
            if (r.violations) {
                o.require(false, e.name + (merge ? " (merged)" : "") + ": " + std::to_string(r.violations) +
                                     " violations, first: " + r.first_violation);
            }
        }
    }
    const double elapsed = seconds_since(start);
    o.require(elapsed < kChainSeconds, "took " + std::to_string(elapsed) + " s");
    report(4, "bound chain", o,
           std::to_string(corpus.size()) + " databases (<= 8 items), " + std::to_string(prefixes) + " prefixes, " +
               std::to_string(checks) + " inequalities, " + std::to_string(elapsed) + " s");
    return o.pass;
}

bool criterion5(const std::vector<testing::CorpusEntry>& corpus) {
    Outcome o;
    std::size_t merged_dbs = 0;
    std::uint64_t merges = 0;
    MineOptions off;
    off.merge = false;
    for (const auto& e : corpus) {
        bool any = false;
        for (const std::size_t k : kKs) {
            const auto on = mine_top_k(e.db, k);
            const auto plain = mine_top_k(e.db, k, off);
            std::ostringstream a;
            std::ostringstream b;
            write_patterns(on.patterns, a);
            write_patterns(plain.patterns, b);
            if (a.str() != b.str()) o.require(false, e.name + " k=" + std::to_string(k) + ": output differs");
            if (plain.stats.merges_performed != 0) o.require(false, e.name + ": merges reported with merging off");
            merges += on.stats.merges_performed;
            any = any || on.stats.merges_performed > 0;
        }
        merged_dbs += any ? 1 : 0;
    }
    o.require(merged_dbs > 0, "no corpus database performed a merge");
    report(5, "merging invariance", o,
           std::to_string(merged_dbs) + "/" + std::to_string(corpus.size()) + " databases merged (" +
               std::to_string(merges) + " merges in total)");
    return o.pass;
}

bool criterion6(const std::vector<testing::CorpusEntry>& corpus) {
    Outcome o;
    std::size_t checked = 0;
    std::size_t raised = 0;
    for (const auto& e : corpus) {
        const auto exact = oracle::oracle_top_k(e.db, kAll);
        for (const std::size_t k : {1, 2, 3, 5, 10, 20}) {
            if (exact.size() < k) continue;
            const auto riu = riu_threshold(e.db, k);
            const auto kth = exact[k - 1].relative_utility();
            ++checked;
            raised += riu > Rational{0, 1} ? 1 : 0;
            if (riu > kth) {
                o.require(false, e.name + " k=" + std::to_string(k) + ": threshold " + str(riu) + " > k-th " +
                                     str(kth));
            }
        }
    }
    o.require(raised > 0, "threshold never raised above zero; check is vacuous");
    report(6, "threshold raise soundness", o,
           std::to_string(checked) + " (database, k) cells, " + std::to_string(raised) + " with a positive threshold");
    return o.pass;
}

bool criterion7() {
    Outcome o;
    GeneratorParams p;
    p.n_transactions = 50'000;
    p.n_items = 500;
    p.n_periods = 4;
    p.avg_transaction_length = 8;
    p.negative_item_fraction = 0.2;
    p.seed = 2026;
    const auto db = generate_database(p);

    const auto start = Clock::now();
    const auto result = mine_top_k(db, 500);
    const double elapsed = seconds_since(start);
    const auto rss = peak_rss_kb();
    o.require(result.patterns.size() == 500, "expected 500 patterns, got " + std::to_string(result.patterns.size()));
    o.require(elapsed < kScaleSeconds, "mine k=500 took " + std::to_string(elapsed) + " s");
    o.require(rss > 0 && rss < kScaleRssKb, "peak RSS " + std::to_string(rss) + " KiB");

    // bench shape on a smaller dataset where every ablation finishes
    GeneratorParams q = p;
    q.n_transactions = 3'000;
    q.n_items = 60;
    q.seed = 7;
    std::vector<BenchDataset> datasets{{"bench", generate_database(q)}};
    BenchConfig config;
    config.k_list = {1, 10, 50, 200, 1000};
    config.ablation = true;
    config.timeout = std::chrono::seconds(60);
    const auto records = run_bench(datasets, config);
    std::map<std::string, std::vector<std::uint64_t>> by_variant;
    for (const auto& r : records) {
        if (r.timed_out) o.require(false, r.variant + " k=" + std::to_string(r.k) + " timed out");
        by_variant[r.variant].push_back(r.candidates);
    }
    const auto& base = by_variant["default"];
    for (std::size_t i = 1; i < base.size(); ++i) {
        if (base[i] < base[i - 1]) o.require(false, "default candidates decrease between k values");
    }
    for (const auto& [variant, counts] : by_variant) {
        for (std::size_t i = 0; i < counts.size() && i < base.size(); ++i) {
            if (counts[i] < base[i]) o.require(false, variant + " evaluated fewer candidates than default");
        }
    }
    std::ostringstream detail;
    detail << "50000x500 k=500 in " << elapsed << " s, peak RSS " << rss / 1024 << " MiB, "
           << result.stats.candidates_evaluated << " candidates; bench default candidates by k:";
    for (const auto c : base) detail << ' ' << c;
    detail << ", no-prune:";
    for (const auto c : by_variant["no-prune"]) detail << ' ' << c;
    report(7, "scaling sanity", o, detail.str());
    return o.pass;
}

bool criterion8() {
    Outcome o;
    GeneratorParams p;
    p.n_transactions = 4'000;
    p.n_items = 80;
    p.n_periods = 6;
    p.seed = 88;
    o.require(generate(p) == generate(p), "generator output differs between runs");
    const auto db = generate_database(p);
    std::string reference;
    std::size_t runs = 0;
    for (const std::size_t k : {10, 100}) {
        std::string first;
        for (int rep = 0; rep < 3; ++rep) {
            for (const unsigned threads : {0u, 1u, 2u, 4u, 8u}) {
                MineOptions options;
                options.parallel = threads != 0;
                options.threads = threads;
                std::ostringstream out;
                write_patterns(mine_top_k(db, k, options).patterns, out);
                ++runs;
                if (first.empty()) {
                    first = out.str();
                } else if (out.str() != first) {
                    o.require(false, "k=" + std::to_string(k) + " threads=" + std::to_string(threads) +
                                         " produced different bytes");
                }
            }
        }
        o.require(!first.empty(), "empty output for k=" + std::to_string(k));
    }
    report(8, "determinism", o, std::to_string(runs) + " runs byte-identical per k (sequential and parallel)");
    return o.pass;
}

}  // namespace

int main() {
    const auto corpus = testing::oracle_corpus(kCorpusSize);
    std::vector<std::string> unexpected;
    const bool c1 = criterion1(unexpected);
    const std::vector<bool> others{criterion2(corpus), criterion3(corpus), criterion4(), criterion5(corpus),
                                   criterion6(corpus), criterion7(),       criterion8()};
    const bool all_others = std::all_of(others.begin(), others.end(), [](bool b) { return b; });
    const std::size_t passed = (c1 ? 1 : 0) + static_cast<std::size_t>(std::count(others.begin(), others.end(), true));
    std::cout << passed << "/8 criteria passed";
    if (!c1 && unexpected.empty()) std::cout << " (criterion 1 fails only on the stated values noted above)";
    std::cout << '\n';
    return all_others && (c1 || unexpected.empty()) ? 0 : 1;
}
