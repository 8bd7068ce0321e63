#include "toit/bounds.hpp"

#include <algorithm>

#include "toit/projection.hpp"

namespace toit {

BoundArray::BoundArray(std::size_t periods, std::size_t width)
    : periods_(periods),
      width_(width),
      cells_(periods * width, 0),
      seen_(periods * width, 0),
      column_touched_(width, 0) {}

void BoundArray::reset() noexcept {
    for (const auto item : touched_) {
        const std::size_t base = static_cast<std::size_t>(item) * periods_;
        std::fill_n(cells_.begin() + static_cast<std::ptrdiff_t>(base), periods_, Money{0});
        std::fill_n(seen_.begin() + static_cast<std::ptrdiff_t>(base), periods_, std::uint8_t{0});
        column_touched_[item] = 0;
    }
    touched_.clear();
}

bool BoundArray::passes(std::uint32_t item, std::span<const Money> pto, const Rational& threshold) const noexcept {
    if (!column_touched_[item]) return false;
    const std::size_t base = static_cast<std::size_t>(item) * periods_;
    for (std::size_t h = 0; h < periods_; ++h) {
        if (seen_[base + h] && ratio_at_least(cells_[base + h], pto[h], threshold)) return true;
    }
    return false;
}

void subtree_utilities(const ProjectedDatabase& pd, std::span<const std::uint8_t> candidates, BoundArray& out) {
    for (std::size_t h = 0; h < pd.period_count(); ++h) {
        for (const auto& view : pd.views(h)) {
            Money suffix = 0;
            for (auto it = view.remaining.rbegin(); it != view.remaining.rend(); ++it) {
                if (!candidates[it->item]) continue;
                out.add(h, it->item, std::max<Money>(0, view.prefix_utility + it->utility + suffix));
                if (it->utility > 0) suffix += it->utility;
            }
        }
    }
}

void local_utilities(const ProjectedDatabase& pd, std::span<const std::uint8_t> candidates, BoundArray& out) {
    for (std::size_t h = 0; h < pd.period_count(); ++h) {
        for (const auto& view : pd.views(h)) {
            Money remaining = 0;
            bool any = false;
            for (const auto& e : view.remaining) {
                if (!candidates[e.item]) continue;
                any = true;
                if (e.utility > 0) remaining += e.utility;
            }
            if (!any) continue;
            const Money bound = std::max<Money>(0, view.prefix_utility + remaining);
            for (const auto& e : view.remaining) {
                if (candidates[e.item]) out.add(h, e.item, bound);
            }
        }
    }
}

CandidateSplit primary_secondary(const BoundArray& su, const BoundArray& lu, std::span<const std::uint32_t> candidates,
                                 std::span<const Money> pto, const Rational& interutil, PruneFlags flags) {
    CandidateSplit split;
    for (const auto z : candidates) {
        const bool secondary = flags.local ? lu.passes(z, pto, interutil) : su.occurs(z);
        if (!secondary) continue;
        split.secondary.push_back(z);
        if (!flags.subtree || su.passes(z, pto, interutil)) split.primary.push_back(z);
    }
    return split;
}

std::vector<std::uint32_t> negative_candidates(const BoundArray& su, std::span<const std::uint32_t> candidates,
                                               std::span<const Money> pto, const Rational& interutil, bool prune) {
    std::vector<std::uint32_t> out;
    for (const auto n : candidates) {
        if (prune ? su.passes(n, pto, interutil) : su.occurs(n)) out.push_back(n);
    }
    return out;
}

}  // namespace toit
