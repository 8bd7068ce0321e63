#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "toit/bounds.hpp"
#include "toit/dataset.hpp"
#include "toit/domain.hpp"

namespace toit {

class MiningTimeout : public std::runtime_error {
public:
    MiningTimeout() : std::runtime_error("mining exceeded its time limit") {}
};

struct MineOptions {
    bool merge = true;
    PruneFlags prune{};
    /// Explore root-level extensions on worker threads; output is identical.
    bool parallel = false;
    unsigned threads = 0;  // 0 = hardware concurrency
    std::optional<std::chrono::milliseconds> timeout;
};

struct SearchStats {
    std::uint64_t candidates_evaluated = 0;
    std::uint64_t patterns_emitted = 0;
    std::uint64_t projections_built = 0;
    std::uint64_t merges_performed = 0;
    std::size_t max_depth = 0;
    double elapsed_ms = 0.0;

    SearchStats& operator+=(const SearchStats& other);
};

/// Bounded best-k set of patterns under PatternOrder, plus the running
/// threshold. Once full, the threshold is the k-th relative utility held;
/// it never decreases.
class TopKCollector {
public:
    explicit TopKCollector(std::size_t k, Rational initial = {0, 1});

    /// Inserts when ru >= threshold and the pattern beats the current k-th
    /// entry (when full). Returns whether it was kept.
    bool offer(Pattern pattern);

    bool admits(const Rational& ru) const noexcept { return ru >= interutil_; }
    const Rational& interutil() const noexcept { return interutil_; }
    std::size_t capacity() const noexcept { return k_; }
    std::size_t size() const noexcept { return patterns_.size(); }
    /// Best first.
    std::vector<Pattern> patterns() const { return {patterns_.begin(), patterns_.end()}; }
    /// Every threshold value taken, starting with the initial one.
    std::span<const Rational> threshold_history() const noexcept { return history_; }

private:
    std::size_t k_;
    std::set<Pattern, PatternOrder> patterns_;
    Rational interutil_;
    std::vector<Rational> history_;
};

struct MiningResult {
    std::vector<Pattern> patterns;  // best first
    SearchStats stats;
    Rational initial_threshold;     // after the single-item raise
    Rational interutil;             // final threshold
    std::vector<Rational> threshold_history;
};

/// Top-k on-shelf relative-utility itemsets of `db`. Throws InvalidK for
/// k == 0 and MiningTimeout when options.timeout elapses.
MiningResult mine_top_k(const OnShelfDatabase& db, std::size_t k, const MineOptions& options = {});

}  // namespace toit
