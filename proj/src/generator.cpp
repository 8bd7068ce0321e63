#include "toit/generator.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <vector>

namespace toit {

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform integer in [lo, hi] by rejection.
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo + 1;
        if (span == 0) return engine_();
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return lo + draw % span;
    }

private:
    std::mt19937_64 engine_;
};

void check(const GeneratorParams& p) {
    if (p.n_transactions == 0 || p.n_items == 0 || p.n_periods == 0 || p.avg_transaction_length == 0) {
        throw InfeasibleParams("transactions, items, periods and average length must be positive");
    }
    if (!(p.negative_item_fraction >= 0.0 && p.negative_item_fraction < 1.0)) {
        throw InfeasibleParams("negative item fraction must be in [0, 1)");
    }
    if (p.min_quantity == 0 || p.min_quantity > p.max_quantity) throw InfeasibleParams("bad quantity range");
    if (p.min_profit <= 0 || p.min_profit > p.max_profit) throw InfeasibleParams("bad profit range");
}

struct Row {
    std::vector<Entry> entries;
    Money tu = 0;
    Period period = 0;
};

}  // namespace

std::string generate(const GeneratorParams& params) {
    check(params);
    Rng rng(params.seed);
    const auto n = params.n_items;

    auto n_negative = static_cast<std::size_t>(params.negative_item_fraction * static_cast<double>(n));
    if (n_negative >= n) n_negative = n - 1;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform(0, i - 1)]);
    std::vector<Money> profit(n);
    for (std::size_t i = 0; i < n; ++i) {
        profit[i] = static_cast<Money>(
            rng.uniform(static_cast<std::uint64_t>(params.min_profit), static_cast<std::uint64_t>(params.max_profit)));
    }
    for (std::size_t i = 0; i < n_negative; ++i) profit[perm[i]] = -profit[perm[i]];

    std::vector<Row> rows(params.n_transactions);
    std::vector<std::uint8_t> taken(n, 0);
    std::vector<std::size_t> chosen;
    for (auto& row : rows) {
        const auto max_len = std::min<std::uint64_t>(n, 2 * params.avg_transaction_length - 1);
        const auto len = rng.uniform(1, max_len);
        chosen.clear();
        while (chosen.size() < len) {
            // Skewed towards low indices so that some itemsets recur.
            auto idx = rng.uniform(0, n - 1);
            if (rng.uniform(0, 1) == 0) idx = rng.uniform(0, idx);
            if (taken[idx]) continue;
            taken[idx] = 1;
            chosen.push_back(idx);
        }
        std::sort(chosen.begin(), chosen.end());
        for (const auto idx : chosen) {
            taken[idx] = 0;
            const auto q = static_cast<std::uint32_t>(rng.uniform(params.min_quantity, params.max_quantity));
            const Money u = item_utility(profit[idx], q);
            row.entries.push_back({static_cast<ItemId>(idx + 1), u});
            row.tu += u;
        }
    }

    constexpr int kMaxAttempts = 64;
    bool feasible = false;
    for (int attempt = 0; attempt < kMaxAttempts && !feasible; ++attempt) {
        std::map<Period, Money> totals;
        for (auto& row : rows) {
            row.period = static_cast<Period>(rng.uniform(0, params.n_periods - 1));
            totals[row.period] += row.tu;
        }
        feasible = std::all_of(totals.begin(), totals.end(), [](const auto& kv) { return kv.second > 0; });
    }
    if (!feasible) {
        throw InfeasibleParams("could not assign periods with positive totals after " +
                               std::to_string(kMaxAttempts) + " attempts");
    }

    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.entries.size(); ++i) out << (i ? " " : "") << row.entries[i].item;
        out << ':' << row.tu << ':';
        for (std::size_t i = 0; i < row.entries.size(); ++i) out << (i ? " " : "") << row.entries[i].utility;
        out << ':' << row.period << '\n';
    }
    return out.str();
}

OnShelfDatabase generate_database(const GeneratorParams& params) {
    return parse_database_text(generate(params));
}

}  // namespace toit
