#include "toit/preprocess.hpp"

#include <algorithm>
#include <numeric>

namespace toit {

BoundArray compute_period_twu(const OnShelfDatabase& db) {
    BoundArray twu(db.periods().size(), db.items().size());
    for (const auto& t : db.transactions()) {
        const auto slot = *db.period_slot(t.period);
        const Money ptu = positive_transaction_utility(t);
        for (const auto& e : t.entries) {
            twu.add(slot, static_cast<std::uint32_t>(*db.item_slot(e.item)), ptu);
        }
    }
    return twu;
}

Rational riu_threshold(const OnShelfDatabase& db, std::size_t k) {
    const auto n_periods = db.periods().size();
    const auto items = db.items();
    std::vector<std::uint8_t> occurs(items.size() * n_periods, 0);
    for (const auto& t : db.transactions()) {
        const auto slot = *db.period_slot(t.period);
        for (const auto& e : t.entries) occurs[*db.item_slot(e.item) * n_periods + slot] = 1;
    }
    std::vector<Rational> values;
    for (std::size_t i = 0; i < items.size(); ++i) {
        Money to = 0;
        for (std::size_t h = 0; h < n_periods; ++h) {
            if (occurs[i * n_periods + h]) to += db.period_totals()[h];
        }
        const Rational ru{items[i].total_utility, to};
        if (ru >= Rational{0, 1}) values.push_back(ru);
    }
    if (k == 0 || values.size() < k) return {0, 1};
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k - 1), values.end(),
                     [](const Rational& a, const Rational& b) { return a > b; });
    return values[k - 1];
}

ItemOrder ItemOrder::from_sequence(const OnShelfDatabase& db, std::vector<std::size_t> sequence) {
    ItemOrder order;
    order.sequence = std::move(sequence);
    order.rank.assign(db.items().size(), 0);
    order.boundary = order.sequence.size();
    for (std::size_t pos = 0; pos < order.sequence.size(); ++pos) {
        const auto slot = order.sequence[pos];
        order.rank[slot] = static_cast<std::uint32_t>(pos);
        if (!db.items()[slot].positive && order.boundary == order.sequence.size()) order.boundary = pos;
    }
    return order;
}

ItemOrder build_item_order(const BoundArray& twu, const OnShelfDatabase& db) {
    const auto items = db.items();
    std::vector<Money> total(items.size(), 0);
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t h = 0; h < twu.periods(); ++h) total[i] += twu.value(h, static_cast<std::uint32_t>(i));
    }
    std::vector<std::size_t> sequence(items.size());
    std::iota(sequence.begin(), sequence.end(), std::size_t{0});
    std::sort(sequence.begin(), sequence.end(), [&](std::size_t a, std::size_t b) {
        if (items[a].positive != items[b].positive) return items[a].positive;
        if (total[a] != total[b]) return total[a] < total[b];
        return items[a].id < items[b].id;
    });
    auto order = ItemOrder::from_sequence(db, std::move(sequence));
    order.twu_by_period = twu;
    return order;
}

ItemMask initial_secondary(const BoundArray& twu, const OnShelfDatabase& db, const Rational& interutil) {
    ItemMask mask(db.items().size(), 0);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (db.items()[i].positive && twu.passes(static_cast<std::uint32_t>(i), db.period_totals(), interutil)) {
            mask[i] = 1;
        }
    }
    return mask;
}

ItemMask negative_kept(const OnShelfDatabase& db, const ItemMask& secondary) {
    ItemMask mask(db.items().size(), 0);
    std::vector<std::size_t> slots;
    for (const auto& t : db.transactions()) {
        bool anchored = false;
        slots.clear();
        for (const auto& e : t.entries) {
            const auto slot = *db.item_slot(e.item);
            slots.push_back(slot);
            if (e.utility > 0 && secondary[slot]) anchored = true;
        }
        if (!anchored) continue;
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (t.entries[i].utility < 0) mask[slots[i]] = 1;
        }
    }
    return mask;
}

std::weak_ordering compare_backward(std::span<const Entry> a, std::span<const Entry> b) noexcept {
    auto ia = a.rbegin();
    auto ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
        if (ia->item != ib->item) return ia->item <=> ib->item;
    }
    return a.size() <=> b.size();
}

std::optional<std::uint32_t> WorkingDatabase::dense_index(ItemId id) const noexcept {
    const auto it = std::find(external_ids_.begin(), external_ids_.end(), id);
    if (it == external_ids_.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - external_ids_.begin());
}

WorkingDatabase build_working_database(const OnShelfDatabase& db, const ItemOrder& order, const ItemMask& secondary,
                                       const ItemMask& negatives, bool merge) {
    WorkingDatabase work;
    const auto items = db.items();
    constexpr std::uint32_t kDropped = ~std::uint32_t{0};

    std::vector<std::uint32_t> dense_of(items.size(), kDropped);
    for (const auto slot : order.sequence) {
        if (!secondary[slot] && !negatives[slot]) continue;
        dense_of[slot] = static_cast<std::uint32_t>(work.external_ids_.size());
        work.external_ids_.push_back(items[slot].id);
        work.positive_.push_back(items[slot].positive ? 1 : 0);
    }

    const auto n_periods = db.periods().size();
    work.period_values_.assign(db.periods().begin(), db.periods().end());
    work.period_totals_.assign(db.period_totals().begin(), db.period_totals().end());

    std::vector<std::vector<std::vector<Entry>>> by_period(n_periods);
    for (const auto& t : db.transactions()) {
        std::vector<Entry> kept;
        bool has_positive = false;
        for (const auto& e : t.entries) {
            const auto dense = dense_of[*db.item_slot(e.item)];
            if (dense == kDropped) continue;
            kept.push_back({dense, e.utility});
            has_positive = has_positive || e.utility > 0;
        }
        if (!has_positive) continue;
        std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) { return a.item < b.item; });
        by_period[*db.period_slot(t.period)].push_back(std::move(kept));
    }

    work.period_begin_.push_back(0);
    for (auto& list : by_period) {
        std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            return compare_backward(a, b) == std::weak_ordering::less;
        });
        for (const auto& entries : list) {
            if (merge && work.transactions_.size() > work.period_begin_.back()) {
                auto& last = work.transactions_.back();
                auto last_entries = std::span(work.pool_).subspan(last.begin, last.size);
                const bool same = last.size == entries.size() &&
                                  std::equal(entries.begin(), entries.end(), last_entries.begin(),
                                             [](const Entry& x, const Entry& y) { return x.item == y.item; });
                if (same) {
                    for (std::size_t i = 0; i < entries.size(); ++i) last_entries[i].utility += entries[i].utility;
                    last.weight += 1;
                    ++work.merges_;
                    continue;
                }
            }
            WorkTransaction wt;
            wt.begin = static_cast<std::uint32_t>(work.pool_.size());
            wt.size = static_cast<std::uint32_t>(entries.size());
            work.pool_.insert(work.pool_.end(), entries.begin(), entries.end());
            work.transactions_.push_back(wt);
        }
        work.period_begin_.push_back(work.transactions_.size());
    }
    return work;
}

}  // namespace toit
