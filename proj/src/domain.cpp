#include "toit/domain.hpp"

#include <algorithm>

namespace toit {

std::strong_ordering compare_rational(const Rational& a, const Rational& b) noexcept {
    const __int128 lhs = static_cast<__int128>(a.num) * b.den;
    const __int128 rhs = static_cast<__int128>(b.num) * a.den;
    return lhs <=> rhs;
}

bool ratio_at_least(Money value, Money total, const Rational& threshold) noexcept {
    return static_cast<__int128>(value) * threshold.den >= static_cast<__int128>(threshold.num) * total;
}

Money transaction_utility(std::span<const Entry> entries) noexcept {
    Money sum = 0;
    for (const auto& e : entries) sum += e.utility;
    return sum;
}

Money positive_transaction_utility(std::span<const Entry> entries) noexcept {
    Money sum = 0;
    for (const auto& e : entries) {
        if (e.utility > 0) sum += e.utility;
    }
    return sum;
}

bool ranks_before(const Pattern& a, const Pattern& b) noexcept {
    const auto by_ratio = compare_rational(a.relative_utility(), b.relative_utility());
    if (by_ratio != 0) return by_ratio > 0;
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return std::lexicographical_compare(a.items.begin(), a.items.end(), b.items.begin(), b.items.end());
}

bool identical(const Pattern& a, const Pattern& b) noexcept {
    return a.items == b.items && a.utility == b.utility && a.periods == b.periods &&
           a.period_total == b.period_total;
}

}  // namespace toit
