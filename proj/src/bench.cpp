#include "toit/bench.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace toit {

std::size_t peak_rss_kb() {
    std::ifstream status("/proc/self/status");
    std::string line;
    while (std::getline(status, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::istringstream fields(line.substr(6));
            std::size_t kb = 0;
            fields >> kb;
            return kb;
        }
    }
    return 0;
}

std::vector<BenchRecord> run_bench(std::span<const BenchDataset> datasets, const BenchConfig& config) {
    struct Variant {
        const char* name;
        PruneFlags prune;
    };
    std::vector<Variant> variants{{"default", {true, true}}};
    if (config.ablation) {
        variants.push_back({"no-su-prune", {false, true}});
        variants.push_back({"no-lu-prune", {true, false}});
        variants.push_back({"no-prune", {false, false}});
    }

    std::vector<BenchRecord> records;
    for (const auto& dataset : datasets) {
        const OnShelfDatabase db = config.reperiod ? reperiod(dataset.db, *config.reperiod) : dataset.db;
        for (const auto& variant : variants) {
            for (const auto k : config.k_list) {
                for (std::size_t r = 0; r < config.repeats; ++r) {
                    BenchRecord rec;
                    rec.dataset = dataset.name;
                    rec.variant = variant.name;
                    rec.k = k;
                    rec.periods = db.periods().size();
                    rec.repeat = r;
                    MineOptions options;
                    options.prune = variant.prune;
                    options.timeout = config.timeout;
                    const auto started = std::chrono::steady_clock::now();
                    try {
                        const auto result = mine_top_k(db, k, options);
                        rec.elapsed_ms = result.stats.elapsed_ms;
                        rec.candidates = result.stats.candidates_evaluated;
                        rec.patterns = result.stats.patterns_emitted;
                    } catch (const MiningTimeout&) {
                        rec.timed_out = true;
                        rec.elapsed_ms = std::chrono::duration<double, std::milli>(
                                             std::chrono::steady_clock::now() - started)
                                             .count();
                    }
                    rec.peak_rss_kb = peak_rss_kb();
                    records.push_back(std::move(rec));
                }
            }
        }
    }
    return records;
}

std::vector<BenchRecord> run_bench(std::span<const std::filesystem::path> paths, const BenchConfig& config) {
    std::vector<BenchDataset> datasets;
    datasets.reserve(paths.size());
    for (const auto& path : paths) datasets.push_back({path.filename().string(), load_database(path)});
    return run_bench(datasets, config);
}

void write_bench_csv(std::span<const BenchRecord> records, std::ostream& out) {
    out << "dataset,variant,k,periods,repeat,elapsed_ms,peak_rss_kb_estimate,candidates,patterns,status\n";
    for (const auto& r : records) {
        out << r.dataset << ',' << r.variant << ',' << r.k << ',' << r.periods << ',' << r.repeat << ',';
        if (r.timed_out) {
            out << r.elapsed_ms << ',' << r.peak_rss_kb << ",,,timeout\n";
        } else {
            out << r.elapsed_ms << ',' << r.peak_rss_kb << ',' << r.candidates << ',' << r.patterns << ",ok\n";
        }
    }
}

}  // namespace toit
