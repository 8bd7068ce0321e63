#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "toit/dataset.hpp"
#include "toit/domain.hpp"

namespace toit::oracle {

// Reference implementation by direct definition. Shares only the value
// types, parsing and the result order with the engine.

struct OracleLimits {
    std::size_t max_items = 20;
    std::size_t max_itemset_size = std::numeric_limits<std::size_t>::max();
};

class TooLargeForOracle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One pattern per non-empty itemset contained in at least one transaction,
/// ascending by item bitmask.
std::vector<Pattern> enumerate_all(const OnShelfDatabase& db, const OracleLimits& limits = {});

/// Best k of enumerate_all with ru >= 0, in PatternOrder.
std::vector<Pattern> oracle_top_k(const OnShelfDatabase& db, std::size_t k, const OracleLimits& limits = {});

// Definitional measures; `itemset` need not be sorted.

/// u(X, T), or nullopt when T does not contain X.
std::optional<Money> utility_in(const Transaction& t, std::span<const ItemId> itemset);
Money period_total(const OnShelfDatabase& db, Period period);                       // pto(h)
Money itemset_utility(const OnShelfDatabase& db, std::span<const ItemId> itemset);  // u(X)
Money itemset_period_utility(const OnShelfDatabase& db, std::span<const ItemId> itemset, Period period);
std::vector<Period> itemset_periods(const OnShelfDatabase& db, std::span<const ItemId> itemset);  // pi(X)
Money itemset_period_total(const OnShelfDatabase& db, std::span<const ItemId> itemset);           // to(X)
Money itemset_twu(const OnShelfDatabase& db, std::span<const ItemId> itemset, Period period);     // TWU(X,h)

/// Sum over transactions of `period` containing X of the utility of items
/// ranked after every item of X in `order` (a full list of item ids, first =
/// processed first). With positive_only, negative utilities are skipped.
Money remaining_utility(const OnShelfDatabase& db, std::span<const ItemId> itemset, Period period,
                        std::span<const ItemId> order, bool positive_only);

}  // namespace toit::oracle
