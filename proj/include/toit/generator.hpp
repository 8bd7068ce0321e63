#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "toit/dataset.hpp"

namespace toit {

/// Synthetic on-shelf database parameters.
struct GeneratorParams {
    std::size_t n_transactions = 1000;
    std::size_t n_items = 50;
    std::size_t n_periods = 4;
    std::size_t avg_transaction_length = 5;
    double negative_item_fraction = 0.2;  // in [0, 1)
    std::uint32_t min_quantity = 1;
    std::uint32_t max_quantity = 5;
    Money min_profit = 1;  // bounds on |p(i)|
    Money max_profit = 10;
    std::uint64_t seed = 1;
};

class InfeasibleParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Database text in the `items:TU:utilities:period` format. Byte-identical
/// for equal parameters; uses only the mt19937_64 bit stream (no standard
/// distributions), so output does not depend on the standard library.
/// Period assignments are redrawn until every period total is positive.
std::string generate(const GeneratorParams& params);

OnShelfDatabase generate_database(const GeneratorParams& params);

}  // namespace toit
