#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace toit {

/// Utility in the smallest currency unit. Engine arithmetic is integer-exact.
using Money = std::int64_t;

/// Item identifier as it appears in the input file (positive).
using ItemId = std::uint32_t;

/// Period label as it appears in the input file.
using Period = std::uint32_t;

class InvalidK : public std::invalid_argument {
public:
    InvalidK() : std::invalid_argument("k must be at least 1") {}
};

/// Exact signed ratio with a positive denominator.
///
/// Values are kept unreduced: a relative utility is stored as u(X) over to(X)
/// exactly as computed, which is also how it is written out. Ordering and
/// equality are mathematical (1/2 == 2/4); use `same_terms` for field identity.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {}

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Cross-multiplies in 128-bit; exact for |num| < 2^63 and 0 < den < 2^63.
std::strong_ordering compare_rational(const Rational& a, const Rational& b) noexcept;

inline std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    return compare_rational(a, b);
}
inline bool operator==(const Rational& a, const Rational& b) noexcept {
    return compare_rational(a, b) == std::strong_ordering::equal;
}
inline bool same_terms(const Rational& a, const Rational& b) noexcept {
    return a.num == b.num && a.den == b.den;
}

/// value / total >= threshold, for total > 0.
bool ratio_at_least(Money value, Money total, const Rational& threshold) noexcept;

/// One (item, utility) pair of a transaction. `utility` is u(i,T) = p(i) * q(i,T),
/// so its sign is the sign of the item's external utility.
struct Entry {
    ItemId item = 0;
    Money utility = 0;

    friend bool operator==(const Entry&, const Entry&) = default;
};

struct Transaction {
    std::uint32_t tid = 0;
    Period period = 0;
    std::vector<Entry> entries;
    // Number of source transactions folded into this one. Entry utilities of a
    // merged transaction are already the sums over its members.
    std::uint32_t weight = 1;
};

/// u(i,T) = p(i) * q(i,T).
constexpr Money item_utility(Money profit, std::uint32_t quantity) noexcept {
    return profit * static_cast<Money>(quantity);
}

Money transaction_utility(std::span<const Entry> entries) noexcept;
Money positive_transaction_utility(std::span<const Entry> entries) noexcept;

inline Money transaction_utility(const Transaction& t) noexcept {
    return transaction_utility(t.entries);
}
inline Money positive_transaction_utility(const Transaction& t) noexcept {
    return positive_transaction_utility(t.entries);
}

/// A mined itemset with its on-shelf measures.
struct Pattern {
    std::vector<ItemId> items;    // ascending external ids
    Money utility = 0;            // u(X)
    std::vector<Period> periods;  // pi(X), ascending
    Money period_total = 0;       // to(X) > 0

    Rational relative_utility() const { return {utility, period_total}; }
};

/// Result order: relative utility descending, then fewer items, then
/// lexicographically smaller item list.
bool ranks_before(const Pattern& a, const Pattern& b) noexcept;

struct PatternOrder {
    bool operator()(const Pattern& a, const Pattern& b) const noexcept { return ranks_before(a, b); }
};

/// Field-by-field identity (ratio compared term by term).
bool identical(const Pattern& a, const Pattern& b) noexcept;

}  // namespace toit
