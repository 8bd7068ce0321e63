#include "toit/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>

namespace toit::oracle {

namespace {

bool contains(const Transaction& t, ItemId id) {
    return std::any_of(t.entries.begin(), t.entries.end(), [id](const Entry& e) { return e.item == id; });
}

bool contains_all(const Transaction& t, std::span<const ItemId> itemset) {
    return std::all_of(itemset.begin(), itemset.end(), [&](ItemId id) { return contains(t, id); });
}

std::map<Period, Money> totals_by_period(const OnShelfDatabase& db) {
    std::map<Period, Money> totals;
    for (const auto& t : db.transactions()) {
        for (const auto& e : t.entries) totals[t.period] += e.utility;
    }
    return totals;
}

}  // namespace

std::optional<Money> utility_in(const Transaction& t, std::span<const ItemId> itemset) {
    Money sum = 0;
    for (const auto id : itemset) {
        const auto it = std::find_if(t.entries.begin(), t.entries.end(), [id](const Entry& e) { return e.item == id; });
        if (it == t.entries.end()) return std::nullopt;
        sum += it->utility;
    }
    return sum;
}

Money period_total(const OnShelfDatabase& db, Period period) {
    Money sum = 0;
    for (const auto& t : db.transactions()) {
        if (t.period != period) continue;
        for (const auto& e : t.entries) sum += e.utility;
    }
    return sum;
}

Money itemset_utility(const OnShelfDatabase& db, std::span<const ItemId> itemset) {
    Money sum = 0;
    for (const auto& t : db.transactions()) {
        if (const auto u = utility_in(t, itemset)) sum += *u;
    }
    return sum;
}

Money itemset_period_utility(const OnShelfDatabase& db, std::span<const ItemId> itemset, Period period) {
    Money sum = 0;
    for (const auto& t : db.transactions()) {
        if (t.period != period) continue;
        if (const auto u = utility_in(t, itemset)) sum += *u;
    }
    return sum;
}

std::vector<Period> itemset_periods(const OnShelfDatabase& db, std::span<const ItemId> itemset) {
    std::vector<Period> periods;
    for (const auto& t : db.transactions()) {
        if (contains_all(t, itemset)) periods.push_back(t.period);
    }
    std::sort(periods.begin(), periods.end());
    periods.erase(std::unique(periods.begin(), periods.end()), periods.end());
    return periods;
}

Money itemset_period_total(const OnShelfDatabase& db, std::span<const ItemId> itemset) {
    Money sum = 0;
    for (const auto h : itemset_periods(db, itemset)) sum += period_total(db, h);
    return sum;
}

Money itemset_twu(const OnShelfDatabase& db, std::span<const ItemId> itemset, Period period) {
    Money sum = 0;
    for (const auto& t : db.transactions()) {
        if (t.period != period || !contains_all(t, itemset)) continue;
        for (const auto& e : t.entries) {
            if (e.utility > 0) sum += e.utility;
        }
    }
    return sum;
}

Money remaining_utility(const OnShelfDatabase& db, std::span<const ItemId> itemset, Period period,
                        std::span<const ItemId> order, bool positive_only) {
    auto position = [&](ItemId id) {
        const auto it = std::find(order.begin(), order.end(), id);
        if (it == order.end()) throw std::invalid_argument("item " + std::to_string(id) + " missing from order");
        return it - order.begin();
    };
    std::ptrdiff_t last = -1;
    for (const auto id : itemset) last = std::max(last, position(id));
    Money sum = 0;
    for (const auto& t : db.transactions()) {
        if (t.period != period || !contains_all(t, itemset)) continue;
        for (const auto& e : t.entries) {
            if (position(e.item) <= last) continue;
            if (positive_only && e.utility < 0) continue;
            sum += e.utility;
        }
    }
    return sum;
}

std::vector<Pattern> enumerate_all(const OnShelfDatabase& db, const OracleLimits& limits) {
    std::vector<ItemId> ids;
    for (const auto& t : db.transactions()) {
        for (const auto& e : t.entries) ids.push_back(e.item);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() > limits.max_items || ids.size() > 30) {
        throw TooLargeForOracle(std::to_string(ids.size()) + " distinct items exceeds the oracle limit of " +
                                std::to_string(std::min<std::size_t>(limits.max_items, 30)));
    }
    const auto totals = totals_by_period(db);

    // Each transaction as a bitmask over `ids` plus per-bit utilities.
    struct Row {
        std::uint32_t mask = 0;
        Period period = 0;
        std::vector<Money> utility;
    };
    std::vector<Row> rows;
    for (const auto& t : db.transactions()) {
        Row row;
        row.period = t.period;
        row.utility.assign(ids.size(), 0);
        for (const auto& e : t.entries) {
            const auto bit = std::lower_bound(ids.begin(), ids.end(), e.item) - ids.begin();
            row.mask |= std::uint32_t{1} << bit;
            row.utility[static_cast<std::size_t>(bit)] = e.utility;
        }
        rows.push_back(std::move(row));
    }

    std::vector<Pattern> out;
    const std::uint64_t n_sets = std::uint64_t{1} << ids.size();
    for (std::uint64_t set = 1; set < n_sets; ++set) {
        const auto mask = static_cast<std::uint32_t>(set);
        if (static_cast<std::size_t>(std::popcount(mask)) > limits.max_itemset_size) continue;
        Money utility = 0;
        std::map<Period, bool> periods;
        for (const auto& row : rows) {
            if ((row.mask & mask) != mask) continue;
            periods[row.period] = true;
            for (std::size_t b = 0; b < ids.size(); ++b) {
                if (mask & (std::uint32_t{1} << b)) utility += row.utility[b];
            }
        }
        if (periods.empty()) continue;
        Pattern p;
        for (std::size_t b = 0; b < ids.size(); ++b) {
            if (mask & (std::uint32_t{1} << b)) p.items.push_back(ids[b]);
        }
        p.utility = utility;
        for (const auto& [h, _] : periods) {
            p.periods.push_back(h);
            p.period_total += totals.at(h);
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Pattern> oracle_top_k(const OnShelfDatabase& db, std::size_t k, const OracleLimits& limits) {
    if (k == 0) throw InvalidK();
    auto all = enumerate_all(db, limits);
    std::erase_if(all, [](const Pattern& p) { return p.utility < 0; });
    std::sort(all.begin(), all.end(), PatternOrder{});
    if (all.size() > k) all.resize(k);
    return all;
}

}  // namespace toit::oracle
