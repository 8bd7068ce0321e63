#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "toit/domain.hpp"
#include "toit/preprocess.hpp"

namespace toit {

/// Cursor into a transaction of the working database (or into a merged
/// buffer): the entries after the prefix, plus u(prefix, T).
struct View {
    std::span<const Entry> remaining;
    Money prefix_utility = 0;
    std::uint32_t weight = 1;
};

/// Pseudo-projection of the working database on a prefix itemset.
///
/// Only views with a non-empty remaining range are stored; the per-period
/// utility and occurrence of the prefix are accumulated separately, so a
/// period where the prefix occurs with zero utility still counts towards
/// pi(prefix). Views may point into the parent projection's merge buffer, so
/// a parent must outlive its children.
class ProjectedDatabase {
public:
    /// Projection on the empty prefix: one view per working transaction.
    void assign_root(const WorkingDatabase& work);

    std::size_t period_count() const noexcept { return occurs_.size(); }
    std::span<const View> views(std::size_t period_slot) const noexcept {
        return std::span(views_).subspan(period_begin_[period_slot],
                                         period_begin_[period_slot + 1] - period_begin_[period_slot]);
    }
    std::size_t view_count() const noexcept { return views_.size(); }

    /// u(prefix, h) and whether some transaction of period h contains the prefix.
    Money period_utility(std::size_t period_slot) const noexcept { return period_utility_[period_slot]; }
    bool occurs(std::size_t period_slot) const noexcept { return occurs_[period_slot] != 0; }

    /// u(prefix)
    Money utility() const noexcept;
    /// to(prefix): frozen period totals summed over the periods where the prefix occurs.
    Money period_total() const noexcept;
    std::span<const Money> period_totals() const noexcept { return pto_; }

private:
    friend void project(const ProjectedDatabase& parent, std::uint32_t item, ProjectedDatabase& out);
    friend std::size_t merge_projected(ProjectedDatabase& pd);

    void clear(std::size_t n_periods);

    std::vector<View> views_;
    std::vector<std::size_t> period_begin_;
    std::vector<Money> period_utility_;
    std::vector<std::uint8_t> occurs_;
    std::vector<Entry> merged_;
    std::span<const Money> pto_;
};

/// Projects `parent` (on alpha) onto alpha + {item}. `item` must follow every
/// prefix item in the dense order. `out` is overwritten; its buffers are reused.
void project(const ProjectedDatabase& parent, std::uint32_t item, ProjectedDatabase& out);

/// Fuses adjacent views of the same period whose remaining item sequences are
/// identical, summing utilities, prefix utilities and weights. Must be applied
/// to a database fresh from project(); returns the number of views folded away.
std::size_t merge_projected(ProjectedDatabase& pd);

}  // namespace toit
