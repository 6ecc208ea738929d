#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "enclose/search.hpp"

namespace enclose {

enum class Suite { n50, fast };

Suite parse_suite(std::string_view text);

struct SuiteRow {
    std::string function;
    std::size_t n = 0;
    std::size_t dims_per_iter = 0;
    std::uint64_t expected_iterations = 0;
    std::size_t expected_regions = 1;
};

// Iterations needed when every cycle over the n dimensions shrinks all
// widths by s: ceil(n/p) * C, C the smallest c with width / s^c < tol.
std::uint64_t cycle_law_iterations(double width, std::size_t n, std::size_t p, std::size_t s, double tol);

std::vector<SuiteRow> suite_rows(Suite suite);

// Default configuration for one row.
SolverConfig suite_config(const SuiteRow& row);

struct SuiteOutcome {
    SuiteRow row;
    SearchResult result;
    bool contains_minimizer = false;
    bool minimum_enclosed = false;
    bool passed = false;
};

// Output regions contain the known minimizer and [glb, gub] contains f(x*).
SuiteOutcome evaluate_row(const SuiteRow& row, const SolverConfig& config, const SearchResult& result);

} // namespace enclose
