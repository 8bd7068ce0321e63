#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "toit/bounds.hpp"
#include "toit/dataset.hpp"
#include "toit/domain.hpp"

namespace toit {

/// Membership flags indexed by item slot of an OnShelfDatabase.
using ItemMask = std::vector<std::uint8_t>;

/// U[h][i] = TWU(i, h), columns indexed by item slot (db.items() order).
BoundArray compute_period_twu(const OnShelfDatabase& db);

/// k-th largest single-item relative utility among those >= 0, or 0/1 when
/// fewer than k such items exist.
Rational riu_threshold(const OnShelfDatabase& db, std::size_t k);

/// Processing order of items: positive before negative, each class by
/// ascending total TWU, ties by ascending id.
struct ItemOrder {
    std::vector<std::size_t> sequence;  // item slots in processing order
    std::vector<std::uint32_t> rank;    // item slot -> position in sequence
    std::size_t boundary = 0;           // position of the first negative item
    BoundArray twu_by_period;

    /// Uses a caller-supplied sequence verbatim (must list every item slot once).
    static ItemOrder from_sequence(const OnShelfDatabase& db, std::vector<std::size_t> sequence);
};

ItemOrder build_item_order(const BoundArray& twu, const OnShelfDatabase& db);

/// Positive items with TWU(i,h) / pto(h) >= interutil in at least one period.
ItemMask initial_secondary(const BoundArray& twu, const OnShelfDatabase& db, const Rational& interutil);

/// Negative items sharing a transaction with at least one retained positive item.
ItemMask negative_kept(const OnShelfDatabase& db, const ItemMask& secondary);

/// Backward-lexicographic transaction order over dense item indices: the
/// transaction with the larger last differing item is larger; when one runs
/// out first, the longer one is larger.
std::weak_ordering compare_backward(std::span<const Entry> a, std::span<const Entry> b) noexcept;

struct WorkTransaction {
    std::uint32_t begin = 0;  // offset into the entry pool
    std::uint32_t size = 0;
    std::uint32_t weight = 1;
};

/// Trimmed, order-sorted, merged copy of the database used by the search.
///
/// Entry::item holds a dense index; dense indices follow the item order, so
/// entries of every transaction are ascending by item. Within each period
/// transactions are sorted with compare_backward.
class WorkingDatabase {
public:
    std::size_t period_count() const noexcept { return period_values_.size(); }
    std::span<const Period> period_values() const noexcept { return period_values_; }
    /// Frozen pto(h) of the source database, by period slot.
    std::span<const Money> period_totals() const noexcept { return period_totals_; }

    std::span<const WorkTransaction> transactions(std::size_t period_slot) const noexcept {
        return std::span(transactions_).subspan(period_begin_[period_slot],
                                                period_begin_[period_slot + 1] - period_begin_[period_slot]);
    }
    std::span<const Entry> entries(const WorkTransaction& t) const noexcept {
        return std::span(pool_).subspan(t.begin, t.size);
    }
    std::size_t transaction_count() const noexcept { return transactions_.size(); }

    std::size_t item_count() const noexcept { return external_ids_.size(); }
    ItemId external_id(std::uint32_t dense) const noexcept { return external_ids_[dense]; }
    bool is_positive(std::uint32_t dense) const noexcept { return positive_[dense] != 0; }
    std::optional<std::uint32_t> dense_index(ItemId id) const noexcept;

    std::size_t merges_performed() const noexcept { return merges_; }

private:
    friend WorkingDatabase build_working_database(const OnShelfDatabase&, const ItemOrder&, const ItemMask&,
                                                  const ItemMask&, bool);

    std::vector<Period> period_values_;
    std::vector<Money> period_totals_;
    std::vector<WorkTransaction> transactions_;
    std::vector<std::size_t> period_begin_;
    std::vector<Entry> pool_;
    std::vector<ItemId> external_ids_;
    std::vector<std::uint8_t> positive_;
    std::size_t merges_ = 0;
};

/// Keeps items flagged in `secondary` or `negatives`, drops transactions
/// left without a positive item, sorts, and (optionally) merges identical
/// transactions within a period.
WorkingDatabase build_working_database(const OnShelfDatabase& db, const ItemOrder& order, const ItemMask& secondary,
                                       const ItemMask& negatives, bool merge = true);

}  // namespace toit
