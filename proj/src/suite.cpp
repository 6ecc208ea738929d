#include "enclose/suite.hpp"

#include <algorithm>
#include <stdexcept>

namespace enclose {

namespace {

struct ReferenceCount {
    std::string_view function;
    std::uint64_t iterations;
};

// Iteration counts for n = 50, p = 10, s = 4, m = 10, tol = 1e-4; one output region each.
constexpr ReferenceCount reference_n50[] = {
    {"ackley", 50}, {"belegundu", 45}, {"breiman", 40}, {"fu", 45},        {"griewank", 55},
    {"levy", 45},   {"rastrigin", 45}, {"salomon", 55}, {"styblinski", 45}, {"zabinsky", 40},
};

} // namespace

Suite parse_suite(std::string_view text)
{
    if (text == "n50") {
        return Suite::n50;
    }
    if (text == "fast") {
        return Suite::fast;
    }
    throw std::invalid_argument("unknown suite: " + std::string(text));
}

std::uint64_t cycle_law_iterations(double width, std::size_t n, std::size_t p, std::size_t s, double tol)
{
    if (n == 0 || p == 0 || s < 2 || !(tol > 0.0)) {
        throw std::invalid_argument("invalid cycle-law arguments");
    }
    std::uint64_t cycles = 0;
    for (double w = width; !(w < tol); w /= static_cast<double>(s)) {
        ++cycles;
    }
    const std::size_t pe = std::min(p, n);
    return cycles * ((n + pe - 1) / pe);
}

std::vector<SuiteRow> suite_rows(Suite suite)
{
    std::vector<SuiteRow> rows;
    if (suite == Suite::n50) {
        for (const auto& p : reference_n50) {
            rows.push_back({std::string(p.function), 50, 10, p.iterations, 1});
        }
        return rows;
    }
    const SolverConfig defaults;
    for (const std::string_view name : objective_names) {
        const auto obj = make_objective(name, 10);
        const std::uint64_t expected = cycle_law_iterations(obj->domain().max_width(), 10, 5,
                                                            defaults.scheme.subintervals,
                                                            defaults.width_tolerance);
        rows.push_back({std::string(name), 10, 5, expected, 1});
    }
    return rows;
}

SolverConfig suite_config(const SuiteRow& row)
{
    SolverConfig config;
    config.objective = row.function;
    config.n = row.n;
    config.scheme.dims_per_iter = row.dims_per_iter;
    return config;
}

SuiteOutcome evaluate_row(const SuiteRow& row, const SolverConfig& config, const SearchResult& result)
{
    SuiteOutcome out{row, result};
    const auto obj = make_objective(config.objective, config.n);
    const Box& x_star = obj->spec().minimizer;
    out.contains_minimizer = std::any_of(result.regions.begin(), result.regions.end(),
                                         [&](const OutputRegion& r) { return r.box.intersects(x_star); });
    const Interval f_star = obj->spec().known_minimum;
    out.minimum_enclosed = result.glb <= f_star.lo() && f_star.hi() <= result.gub;
    out.passed = result.stop == StopReason::tolerance && result.iterations == row.expected_iterations &&
                 result.regions.size() == row.expected_regions && out.contains_minimizer &&
                 out.minimum_enclosed && result.soundness != SoundnessStatus::violated;
    return out;
}

} // namespace enclose
