#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toit/dataset.hpp"
#include "toit/search.hpp"

namespace toit {

struct BenchRecord {
    std::string dataset;
    std::string variant;  // default | no-su-prune | no-lu-prune | no-prune
    std::size_t k = 0;
    std::size_t periods = 0;
    std::size_t repeat = 0;
    double elapsed_ms = 0.0;  // mining only, parsing excluded
    std::size_t peak_rss_kb = 0;
    std::uint64_t candidates = 0;
    std::uint64_t patterns = 0;
    bool timed_out = false;
};

struct BenchDataset {
    std::string name;
    OnShelfDatabase db;
};

struct BenchConfig {
    std::vector<std::size_t> k_list;
    std::size_t repeats = 1;
    std::optional<std::uint32_t> reperiod;
    /// Also run the three pruning-off variants for every cell.
    bool ablation = false;
    std::optional<std::chrono::milliseconds> timeout;
};

/// Process peak resident set (VmHWM) in KiB; an OS high-water estimate,
/// 0 where unavailable.
std::size_t peak_rss_kb();

/// One record per (dataset, variant, k, repeat). A cell that exceeds the
/// timeout is recorded as timed out and the matrix continues.
std::vector<BenchRecord> run_bench(std::span<const BenchDataset> datasets, const BenchConfig& config);

std::vector<BenchRecord> run_bench(std::span<const std::filesystem::path> paths, const BenchConfig& config);

void write_bench_csv(std::span<const BenchRecord> records, std::ostream& out);

}  // namespace toit
