#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "toit/domain.hpp"

namespace toit {

enum class DatasetErrorKind {
    MalformedLine,
    DuplicateItemInTransaction,
    TUChecksumMismatch,
    InconsistentProfitSign,
    NonPositivePeriodTotal,
    EmptyDatabase,
    EmptyTransaction,
    ZeroUtilityItem,
    TooManyItems,
    Io,
};

const char* to_string(DatasetErrorKind kind) noexcept;

class DatasetError : public std::runtime_error {
public:
    DatasetError(DatasetErrorKind kind, const std::string& message, std::size_t line = 0);

    DatasetErrorKind kind() const noexcept { return kind_; }
    /// 1-based input line, 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    DatasetErrorKind kind_;
    std::size_t line_;
};

/// Upper limit on distinct items (keeps dense indices and recursion depth bounded).
inline constexpr std::size_t kMaxDistinctItems = std::size_t{1} << 16;

struct ItemInfo {
    ItemId id = 0;
    bool positive = true;
    Money total_utility = 0;      // u({i})
    std::uint32_t occurrences = 0;
};

/// Validated, immutable on-shelf transaction database.
///
/// Period totals pto(h) are computed once here, from the untrimmed
/// transactions, and every relative utility in the engine divides by them.
class OnShelfDatabase {
public:
    /// Validates and takes ownership. Throws DatasetError.
    static OnShelfDatabase from_transactions(std::vector<Transaction> transactions);

    const std::vector<Transaction>& transactions() const noexcept { return transactions_; }
    /// Ascending by id.
    std::span<const ItemInfo> items() const noexcept { return items_; }
    /// PE, ascending.
    std::span<const Period> periods() const noexcept { return periods_; }
    /// pto(h), parallel to periods().
    std::span<const Money> period_totals() const noexcept { return period_totals_; }

    std::optional<std::size_t> period_slot(Period period) const noexcept;
    std::optional<std::size_t> item_slot(ItemId id) const noexcept;

    /// pto(h); throws std::out_of_range for a period outside PE.
    Money period_total(Period period) const;
    /// TU of the i-th transaction (input order).
    Money tu(std::size_t index) const { return tu_.at(index); }

private:
    OnShelfDatabase() = default;

    std::vector<Transaction> transactions_;
    std::vector<ItemInfo> items_;
    std::vector<Period> periods_;
    std::vector<Money> period_totals_;
    std::vector<Money> tu_;
};

/// Reads `items:TU:utilities:period` lines; `#`, `%` and `@` lines are comments.
OnShelfDatabase parse_database(std::istream& in);
OnShelfDatabase parse_database_text(const std::string& text);
OnShelfDatabase load_database(const std::filesystem::path& path);

void write_database(const OnShelfDatabase& db, std::ostream& out);
std::string format_database(const OnShelfDatabase& db);

/// `ids #UTIL: u #TO: to #RU: num/den`
std::string format_pattern(const Pattern& pattern);
void write_patterns(std::span<const Pattern> patterns, std::ostream& out);
void save_patterns(std::span<const Pattern> patterns, const std::filesystem::path& path);

/// Round-robin period reassignment by transaction index (period = index mod n).
OnShelfDatabase reperiod(const OnShelfDatabase& db, std::uint32_t n_periods);

}  // namespace toit
