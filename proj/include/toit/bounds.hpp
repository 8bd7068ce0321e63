#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "toit/domain.hpp"

namespace toit {

class ProjectedDatabase;

/// Period x item accumulator matrix shared by the TWU, subtree-utility and
/// local-utility passes.
///
/// Besides the sums it records which cells received at least one
/// transaction, because a period where an item occurs with a zero bound
/// still satisfies a zero threshold while a period where it never occurs
/// must not. reset() only revisits touched columns, so reusing one array
/// across a whole search costs time proportional to the work done.
class BoundArray {
public:
    BoundArray() = default;
    BoundArray(std::size_t periods, std::size_t width);

    std::size_t periods() const noexcept { return periods_; }
    std::size_t width() const noexcept { return width_; }

    void reset() noexcept;

    void add(std::size_t period, std::uint32_t item, Money value) noexcept {
        const std::size_t cell = static_cast<std::size_t>(item) * periods_ + period;
        cells_[cell] += value;
        if (!seen_[cell]) {
            seen_[cell] = 1;
            if (!column_touched_[item]) {
                column_touched_[item] = 1;
                touched_.push_back(item);
            }
        }
    }

    Money value(std::size_t period, std::uint32_t item) const noexcept {
        return cells_[static_cast<std::size_t>(item) * periods_ + period];
    }
    bool seen(std::size_t period, std::uint32_t item) const noexcept {
        return seen_[static_cast<std::size_t>(item) * periods_ + period] != 0;
    }
    bool occurs(std::uint32_t item) const noexcept { return column_touched_[item] != 0; }
    /// Columns that received a value since the last reset, in first-touch order.
    std::span<const std::uint32_t> touched() const noexcept { return touched_; }

    /// True when some period h with an occurrence has value(h, item) / pto[h] >= threshold.
    bool passes(std::uint32_t item, std::span<const Money> pto, const Rational& threshold) const noexcept;

private:
    std::size_t periods_ = 0;
    std::size_t width_ = 0;
    std::vector<Money> cells_;          // item-major
    std::vector<std::uint8_t> seen_;
    std::vector<std::uint8_t> column_touched_;
    std::vector<std::uint32_t> touched_;
};

/// su(alpha, z, h) for every candidate z in the remaining ranges of `pd`
/// (the projection on alpha). The remaining-utility term sums only
/// positive-utility candidates after z, and each transaction's contribution
/// is clamped at zero so the value stays an upper bound when the prefix
/// carries negative items.
void subtree_utilities(const ProjectedDatabase& pd, std::span<const std::uint8_t> candidates, BoundArray& out);

/// lu(alpha, z, h): u(alpha,T) plus the positive candidate utility remaining
/// in T, credited to every candidate z present in T.
void local_utilities(const ProjectedDatabase& pd, std::span<const std::uint8_t> candidates, BoundArray& out);

struct PruneFlags {
    bool subtree = true;  // subtree-utility pruning (Primary, NegativeItems)
    bool local = true;    // local-utility pruning (Secondary)
};

struct CandidateSplit {
    std::vector<std::uint32_t> primary;
    std::vector<std::uint32_t> secondary;
};

/// Secondary = candidates whose lu passes in some period, Primary = those of
/// Secondary whose su passes as well. A disabled flag lets every occurring
/// candidate through that test. Order of `candidates` is preserved.
CandidateSplit primary_secondary(const BoundArray& su, const BoundArray& lu, std::span<const std::uint32_t> candidates,
                                 std::span<const Money> pto, const Rational& interutil, PruneFlags flags = {});

/// Negative candidates whose su passes in some period.
std::vector<std::uint32_t> negative_candidates(const BoundArray& su, std::span<const std::uint32_t> candidates,
                                               std::span<const Money> pto, const Rational& interutil,
                                               bool prune = true);

}  // namespace toit
