#include "toit/projection.hpp"

#include <algorithm>

namespace toit {

void ProjectedDatabase::clear(std::size_t n_periods) {
    views_.clear();
    merged_.clear();
    period_begin_.assign(1, 0);
    period_utility_.assign(n_periods, 0);
    occurs_.assign(n_periods, 0);
}

void ProjectedDatabase::assign_root(const WorkingDatabase& work) {
    clear(work.period_count());
    pto_ = work.period_totals();
    for (std::size_t h = 0; h < work.period_count(); ++h) {
        for (const auto& t : work.transactions(h)) {
            views_.push_back({work.entries(t), 0, t.weight});
        }
        period_begin_.push_back(views_.size());
    }
}

Money ProjectedDatabase::utility() const noexcept {
    Money sum = 0;
    for (const auto u : period_utility_) sum += u;
    return sum;
}

Money ProjectedDatabase::period_total() const noexcept {
    Money sum = 0;
    for (std::size_t h = 0; h < occurs_.size(); ++h) {
        if (occurs_[h]) sum += pto_[h];
    }
    return sum;
}

void project(const ProjectedDatabase& parent, std::uint32_t item, ProjectedDatabase& out) {
    const auto n_periods = parent.period_count();
    out.clear(n_periods);
    out.pto_ = parent.pto_;
    for (std::size_t h = 0; h < n_periods; ++h) {
        for (const auto& view : parent.views(h)) {
            const auto it = std::lower_bound(view.remaining.begin(), view.remaining.end(), item,
                                             [](const Entry& e, std::uint32_t value) { return e.item < value; });
            if (it == view.remaining.end() || it->item != item) continue;
            const Money prefix = view.prefix_utility + it->utility;
            out.occurs_[h] = 1;
            out.period_utility_[h] += prefix;
            const auto next = static_cast<std::size_t>(it - view.remaining.begin()) + 1;
            if (next < view.remaining.size()) {
                out.views_.push_back({view.remaining.subspan(next), prefix, view.weight});
            }
        }
        out.period_begin_.push_back(out.views_.size());
    }
}

namespace {

bool same_items(std::span<const Entry> a, std::span<const Entry> b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](const Entry& x, const Entry& y) { return x.item == y.item; });
}

struct PendingMerge {
    std::size_t view;
    std::size_t offset;
    std::size_t size;
};

}  // namespace

std::size_t merge_projected(ProjectedDatabase& pd) {
    if (!pd.merged_.empty()) return 0;
    std::size_t folded = 0;
    std::vector<PendingMerge> pending;
    std::size_t write = 0;
    std::vector<std::size_t> new_begin{0};
    for (std::size_t h = 0; h < pd.period_count(); ++h) {
        const auto end = pd.period_begin_[h + 1];
        std::size_t i = pd.period_begin_[h];
        while (i < end) {
            std::size_t j = i + 1;
            while (j < end && same_items(pd.views_[i].remaining, pd.views_[j].remaining)) ++j;
            if (j - i == 1) {
                pd.views_[write++] = pd.views_[i];
            } else {
                const auto offset = pd.merged_.size();
                const auto& first = pd.views_[i];
                pd.merged_.insert(pd.merged_.end(), first.remaining.begin(), first.remaining.end());
                View fused{{}, first.prefix_utility, first.weight};
                for (std::size_t m = i + 1; m < j; ++m) {
                    const auto& other = pd.views_[m];
                    for (std::size_t e = 0; e < other.remaining.size(); ++e) {
                        pd.merged_[offset + e].utility += other.remaining[e].utility;
                    }
                    fused.prefix_utility += other.prefix_utility;
                    fused.weight += other.weight;
                }
                pending.push_back({write, offset, first.remaining.size()});
                pd.views_[write++] = fused;
                folded += j - i - 1;
            }
            i = j;
        }
        new_begin.push_back(write);
    }
    pd.views_.resize(write);
    pd.period_begin_ = std::move(new_begin);
    const std::span<const Entry> buffer(pd.merged_);
    for (const auto& p : pending) pd.views_[p.view].remaining = buffer.subspan(p.offset, p.size);
    return folded;
}

}  // namespace toit
