#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <sstream>

#include "toit/dataset.hpp"
#include "toit/generator.hpp"
#include "toit/oracle.hpp"
#include "toit/preprocess.hpp"
#include "toit/search.hpp"

namespace py = pybind11;
using namespace toit;

namespace {

py::tuple as_tuple(const Rational& r) { return py::make_tuple(r.num, r.den); }

py::dict stats_dict(const MiningResult& r) {
    py::dict d;
    d["candidates"] = r.stats.candidates_evaluated;
    d["patterns"] = r.stats.patterns_emitted;
    d["projections"] = r.stats.projections_built;
    d["merges"] = r.stats.merges_performed;
    d["max_depth"] = r.stats.max_depth;
    d["elapsed_ms"] = r.stats.elapsed_ms;
    d["initial_threshold"] = as_tuple(r.initial_threshold);
    d["interutil"] = as_tuple(r.interutil);
    return d;
}

}  // namespace

PYBIND11_MODULE(toit, m) {
    m.doc() = "Top-k on-shelf high relative-utility itemset mining with negative profits";

    py::register_exception<DatasetError>(m, "DatasetError", PyExc_ValueError);
    py::register_exception<oracle::TooLargeForOracle>(m, "TooLargeForOracle", PyExc_ValueError);
    py::register_exception<MiningTimeout>(m, "MiningTimeout", PyExc_TimeoutError);
    py::register_exception<InvalidK>(m, "InvalidK", PyExc_ValueError);
    py::register_exception<InfeasibleParams>(m, "InfeasibleParams", PyExc_ValueError);

    py::class_<Pattern>(m, "Pattern")
        .def_readonly("items", &Pattern::items)
        .def_readonly("utility", &Pattern::utility)
        .def_readonly("periods", &Pattern::periods)
        .def_readonly("period_total", &Pattern::period_total)
        .def_property_readonly("ru", [](const Pattern& p) { return as_tuple(p.relative_utility()); })
        .def_property_readonly("ru_float", [](const Pattern& p) { return p.relative_utility().to_double(); })
        .def("__str__", &format_pattern)
        .def("__repr__", [](const Pattern& p) { return "<Pattern " + format_pattern(p) + ">"; })
        .def("__eq__", [](const Pattern& a, const Pattern& b) { return identical(a, b); });

    py::class_<OnShelfDatabase>(m, "Database")
        .def_property_readonly("transaction_count", [](const OnShelfDatabase& db) { return db.transactions().size(); })
        .def_property_readonly("periods",
                               [](const OnShelfDatabase& db) {
                                   return std::vector<Period>(db.periods().begin(), db.periods().end());
                               })
        .def_property_readonly("items",
                               [](const OnShelfDatabase& db) {
                                   std::vector<ItemId> ids;
                                   for (const auto& i : db.items()) ids.push_back(i.id);
                                   return ids;
                               })
        .def("period_total", &OnShelfDatabase::period_total, py::arg("period"))
        .def("to_text", &format_database)
        .def("reperiod", &reperiod, py::arg("n_periods"));

    m.def("parse", &parse_database_text, py::arg("text"), "Parse database text (items:TU:utilities:period lines).");
    m.def("load", &load_database, py::arg("path"));

    m.def(
        "mine",
        [](const OnShelfDatabase& db, std::size_t k, bool merge, bool su_prune, bool lu_prune, bool parallel,
           unsigned threads, std::optional<long long> timeout_ms) {
            MineOptions options;
            options.merge = merge;
            options.prune = {su_prune, lu_prune};
            options.parallel = parallel;
            options.threads = threads;
            if (timeout_ms) options.timeout = std::chrono::milliseconds(*timeout_ms);
            MiningResult r;
            {
                py::gil_scoped_release release;
                r = mine_top_k(db, k, options);
            }
            return py::make_tuple(r.patterns, stats_dict(r));
        },
        py::arg("db"), py::arg("k"), py::kw_only(), py::arg("merge") = true, py::arg("su_prune") = true,
        py::arg("lu_prune") = true, py::arg("parallel") = false, py::arg("threads") = 0u,
        py::arg("timeout_ms") = py::none(), "Top-k patterns and run statistics.");

    m.def(
        "oracle_top_k",
        [](const OnShelfDatabase& db, std::size_t k, std::size_t max_items) {
            return oracle::oracle_top_k(db, k, oracle::OracleLimits{max_items});
        },
        py::arg("db"), py::arg("k"), py::arg("max_items") = 20, "Brute-force top-k by enumeration.");

    m.def(
        "riu_threshold", [](const OnShelfDatabase& db, std::size_t k) { return as_tuple(riu_threshold(db, k)); },
        py::arg("db"), py::arg("k"));

    m.def(
        "generate",
        [](std::size_t transactions, std::size_t items, std::size_t periods, std::size_t avg_len, double neg_frac,
           std::uint32_t max_qty, Money max_profit, std::uint64_t seed) {
            GeneratorParams p;
            p.n_transactions = transactions;
            p.n_items = items;
            p.n_periods = periods;
            p.avg_transaction_length = avg_len;
            p.negative_item_fraction = neg_frac;
            p.max_quantity = max_qty;
            p.max_profit = max_profit;
            p.seed = seed;
            return generate(p);
        },
        py::arg("transactions"), py::arg("items"), py::arg("periods"), py::kw_only(), py::arg("avg_len") = 5,
        py::arg("neg_frac") = 0.2, py::arg("max_qty") = 5, py::arg("max_profit") = 10, py::arg("seed") = 1);

    m.def("format_pattern", &format_pattern, py::arg("pattern"));
    m.def(
        "format_patterns",
        [](const std::vector<Pattern>& ps) {
            std::ostringstream out;
            write_patterns(ps, out);
            return out.str();
        },
        py::arg("patterns"));
    m.def(
        "save_patterns", [](const std::vector<Pattern>& ps, const std::filesystem::path& path) { save_patterns(ps, path); },
        py::arg("patterns"), py::arg("path"));
}
