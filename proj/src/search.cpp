#include "toit/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iterator>
#include <memory>
#include <mutex>
#include <thread>

#include "toit/preprocess.hpp"
#include "toit/projection.hpp"

namespace toit {

SearchStats& SearchStats::operator+=(const SearchStats& other) {
    candidates_evaluated += other.candidates_evaluated;
    patterns_emitted += other.patterns_emitted;
    projections_built += other.projections_built;
    merges_performed += other.merges_performed;
    max_depth = std::max(max_depth, other.max_depth);
    return *this;
}

TopKCollector::TopKCollector(std::size_t k, Rational initial) : k_(k), interutil_(initial) {
    if (k == 0) throw InvalidK();
    history_.push_back(initial);
}

bool TopKCollector::offer(Pattern pattern) {
    if (!admits(pattern.relative_utility())) return false;
    if (patterns_.size() == k_ && !ranks_before(pattern, *std::prev(patterns_.end()))) return false;
    if (!patterns_.insert(std::move(pattern)).second) return false;
    if (patterns_.size() > k_) patterns_.erase(std::prev(patterns_.end()));
    if (patterns_.size() == k_) {
        const auto kth = std::prev(patterns_.end())->relative_utility();
        if (kth > interutil_) {
            interutil_ = kth;
            history_.push_back(kth);
        }
    }
    return true;
}

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
public:
    explicit Deadline(std::optional<std::chrono::milliseconds> limit) {
        if (limit) at_ = Clock::now() + *limit;
    }
    void check() const {
        if (at_ && Clock::now() >= *at_) throw MiningTimeout();
    }

private:
    std::optional<Clock::time_point> at_;
};

// Depth-first search over one working database. Owns all scratch state
// (projection per depth, two bound arrays, candidate mask), so independent
// miners can run on separate threads against a shared WorkingDatabase.
class Miner {
public:
    Miner(const WorkingDatabase& work, const MineOptions& options, TopKCollector& collector, const Deadline& deadline)
        : work_(work),
          options_(options),
          collector_(collector),
          deadline_(deadline),
          su_(work.period_count(), work.item_count()),
          lu_(work.period_count(), work.item_count()),
          mask_(work.item_count(), 0),
          negative_mask_(work.item_count(), 0) {
        for (std::uint32_t i = 0; i < work.item_count(); ++i) negative_mask_[i] = work.is_positive(i) ? 0 : 1;
    }

    void search(const ProjectedDatabase& pd, std::span<const std::uint32_t> primary,
                std::span<const std::uint32_t> secondary, std::size_t depth) {
        for (const auto item : primary) expand(pd, item, secondary, depth);
    }

    // Handles beta = prefix + {item}: evaluation, negative extensions, then
    // positive extensions over the part of Secondary(prefix) after item.
    void expand(const ProjectedDatabase& parent, std::uint32_t item, std::span<const std::uint32_t> secondary,
                std::size_t depth) {
        auto& lvl = level(depth + 1);
        build_child(parent, item, lvl.pd);
        prefix_.push_back(item);
        evaluate(lvl.pd);

        su_.reset();
        subtree_utilities(lvl.pd, negative_mask_, su_);
        lvl.negatives.assign(su_.touched().begin(), su_.touched().end());
        std::sort(lvl.negatives.begin(), lvl.negatives.end());
        lvl.negatives = negative_candidates(su_, lvl.negatives, work_.period_totals(), collector_.interutil(),
                                            options_.prune.subtree);
        negative_search(lvl.pd, lvl.negatives, depth + 1);

        const auto after = std::upper_bound(secondary.begin(), secondary.end(), item);
        const std::span<const std::uint32_t> tail(after, secondary.end());
        if (!tail.empty()) {
            for (const auto z : tail) mask_[z] = 1;
            su_.reset();
            lu_.reset();
            subtree_utilities(lvl.pd, mask_, su_);
            if (options_.prune.local) local_utilities(lvl.pd, mask_, lu_);
            for (const auto z : tail) mask_[z] = 0;
            auto split = primary_secondary(su_, lu_, tail, work_.period_totals(), collector_.interutil(),
                                           options_.prune);
            lvl.primary = std::move(split.primary);
            lvl.secondary = std::move(split.secondary);
            search(lvl.pd, lvl.primary, lvl.secondary, depth + 1);
        }
        prefix_.pop_back();
    }

    SearchStats stats;

private:
    struct Level {
        ProjectedDatabase pd;
        std::vector<std::uint32_t> primary;
        std::vector<std::uint32_t> secondary;
        std::vector<std::uint32_t> negatives;
    };

    Level& level(std::size_t depth) {
        while (levels_.size() <= depth) levels_.push_back(std::make_unique<Level>());
        return *levels_[depth];
    }

    void build_child(const ProjectedDatabase& parent, std::uint32_t item, ProjectedDatabase& out) {
        project(parent, item, out);
        ++stats.projections_built;
        if (options_.merge) stats.merges_performed += merge_projected(out);
    }

    void negative_search(const ProjectedDatabase& pd, std::span<const std::uint32_t> negatives, std::size_t depth) {
        for (std::size_t idx = 0; idx < negatives.size(); ++idx) {
            auto& lvl = level(depth + 1);
            build_child(pd, negatives[idx], lvl.pd);
            prefix_.push_back(negatives[idx]);
            evaluate(lvl.pd);
            const auto tail = negatives.subspan(idx + 1);
            if (!tail.empty()) {
                for (const auto z : tail) mask_[z] = 1;
                su_.reset();
                subtree_utilities(lvl.pd, mask_, su_);
                for (const auto z : tail) mask_[z] = 0;
                lvl.negatives = negative_candidates(su_, tail, work_.period_totals(), collector_.interutil(),
                                                    options_.prune.subtree);
                negative_search(lvl.pd, lvl.negatives, depth + 1);
            }
            prefix_.pop_back();
        }
    }

    void evaluate(const ProjectedDatabase& pd) {
        ++stats.candidates_evaluated;
        stats.max_depth = std::max(stats.max_depth, prefix_.size());
        if ((stats.candidates_evaluated & 1023) == 0) deadline_.check();
        const Money total = pd.period_total();
        if (total <= 0) return;
        const Rational ru{pd.utility(), total};
        if (!collector_.admits(ru)) return;

        Pattern p;
        p.items.reserve(prefix_.size());
        for (const auto dense : prefix_) p.items.push_back(work_.external_id(dense));
        std::sort(p.items.begin(), p.items.end());
        p.utility = ru.num;
        p.period_total = total;
        for (std::size_t h = 0; h < pd.period_count(); ++h) {
            if (pd.occurs(h)) p.periods.push_back(work_.period_values()[h]);
        }
        collector_.offer(std::move(p));
    }

    const WorkingDatabase& work_;
    const MineOptions& options_;
    TopKCollector& collector_;
    const Deadline& deadline_;
    BoundArray su_;
    BoundArray lu_;
    std::vector<std::uint8_t> mask_;
    std::vector<std::uint8_t> negative_mask_;
    std::vector<std::uint32_t> prefix_;
    std::vector<std::unique_ptr<Level>> levels_;
};

}  // namespace

MiningResult mine_top_k(const OnShelfDatabase& db, std::size_t k, const MineOptions& options) {
    if (k == 0) throw InvalidK();
    const auto started = Clock::now();
    const Deadline deadline(options.timeout);

    const Rational initial = riu_threshold(db, k);
    const auto twu = compute_period_twu(db);
    ItemMask secondary_mask;
    if (options.prune.local) {
        secondary_mask = initial_secondary(twu, db, initial);
    } else {
        secondary_mask.assign(db.items().size(), 0);
        for (std::size_t i = 0; i < secondary_mask.size(); ++i) secondary_mask[i] = db.items()[i].positive ? 1 : 0;
    }
    const auto order = build_item_order(twu, db);
    const auto negatives = negative_kept(db, secondary_mask);
    const auto work = build_working_database(db, order, secondary_mask, negatives, options.merge);

    ProjectedDatabase root;
    root.assign_root(work);

    // Root: lu(empty, i, h) is the TWU already applied above, so only the
    // subtree-utility split remains.
    std::vector<std::uint32_t> positives;
    for (std::uint32_t i = 0; i < work.item_count(); ++i) {
        if (work.is_positive(i)) positives.push_back(i);
    }
    std::vector<std::uint8_t> mask(work.item_count(), 0);
    for (const auto i : positives) mask[i] = 1;
    BoundArray su(work.period_count(), work.item_count());
    BoundArray unused(work.period_count(), work.item_count());
    subtree_utilities(root, mask, su);
    const auto split = primary_secondary(su, unused, positives, work.period_totals(), initial,
                                         PruneFlags{options.prune.subtree, false});

    MiningResult result;
    result.initial_threshold = initial;
    result.stats.merges_performed = work.merges_performed();

    if (!options.parallel) {
        TopKCollector collector(k, initial);
        Miner miner(work, options, collector, deadline);
        miner.search(root, split.primary, split.secondary, 0);
        result.stats += miner.stats;
        result.patterns = collector.patterns();
        result.interutil = collector.interutil();
        result.threshold_history.assign(collector.threshold_history().begin(), collector.threshold_history().end());
    } else {
        unsigned n_threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
        n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(split.primary.size())));
        std::atomic<std::size_t> next{0};
        std::mutex mutex;
        std::exception_ptr failure;
        TopKCollector merged(k, initial);
        auto worker = [&] {
            try {
                TopKCollector local(k, initial);
                Miner miner(work, options, local, deadline);
                for (std::size_t i = next++; i < split.primary.size(); i = next++) {
                    miner.expand(root, split.primary[i], split.secondary, 0);
                }
                std::lock_guard lock(mutex);
                result.stats += miner.stats;
                for (auto& p : local.patterns()) merged.offer(std::move(p));
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
        result.patterns = merged.patterns();
        result.interutil = merged.interutil();
        result.threshold_history.assign(merged.threshold_history().begin(), merged.threshold_history().end());
    }
    result.stats.patterns_emitted = result.patterns.size();
    result.stats.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    return result;
}

}  // namespace toit
