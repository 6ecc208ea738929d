#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "enclose/report.hpp"
#include "enclose/search.hpp"
#include "enclose/suite.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_budget = 2;
constexpr int exit_failed = 3;

int exit_code(const enclose::SearchResult& r)
{
    if (r.soundness == enclose::SoundnessStatus::violated) {
        return exit_failed;
    }
    switch (r.stop) {
    case enclose::StopReason::tolerance:
        return exit_ok;
    case enclose::StopReason::max_iterations:
    case enclose::StopReason::time_limit:
        return exit_budget;
    case enclose::StopReason::list_exhausted:
        return exit_failed;
    }
    return exit_failed;
}

std::vector<std::string> function_names()
{
    return {enclose::objective_names.begin(), enclose::objective_names.end()};
}

struct RunFlags {
    enclose::SolverConfig config;
    std::string derivative_test = "on";
    std::string sampling = "selected";
    std::string rounding = "optimal";
    std::string output;
    std::string format = "json";
};

void add_solver_flags(CLI::App& cmd, RunFlags& f)
{
    cmd.add_option("--dims-per-iter,-p", f.config.scheme.dims_per_iter, "dimensions partitioned per iteration")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--subintervals,-s", f.config.scheme.subintervals, "pieces per partitioned dimension")
        ->check(CLI::Range(2, 1 << 20));
    cmd.add_option("--samples,-m", f.config.samples, "diagonal samples per region")->check(CLI::PositiveNumber);
    cmd.add_option("--tolerance", f.config.width_tolerance, "region width tolerance")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--max-iterations", f.config.max_iterations, "iteration budget");
    cmd.add_option("--time-limit", f.config.time_limit_s, "wall-clock budget in seconds (0 = none)")
        ->check(CLI::NonNegativeNumber);
    cmd.add_option("--threads", f.config.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd.add_option("--derivative-test", f.derivative_test, "first-order pruning")
        ->check(CLI::IsMember({"on", "off"}));
    cmd.add_flag("--full-gradient", f.config.full_gradient, "derivative test over every dimension");
    cmd.add_option("--sampling", f.sampling, "diagonal sampling scope")
        ->check(CLI::IsMember({"selected", "per-subregion"}));
    cmd.add_option("--rounding", f.rounding, "optimal | slack-ulps(M)");
    cmd.add_flag("--debug-soundness", f.config.debug_soundness, "track the known minimizer and flag any loss");
}

void finish_config(RunFlags& f)
{
    f.config.derivative_test = f.derivative_test == "on";
    f.config.sampling = enclose::parse_sampling_scope(f.sampling);
    f.config.rounding = enclose::RoundingPolicy::parse(f.rounding);
    f.config.validate();
}

int run_command(RunFlags& f)
{
    finish_config(f);
    const auto format = enclose::parse_report_format(f.format);
    enclose::Solver solver(f.config);
    const enclose::SearchResult result = solver.run();

    if (f.output.empty() || f.output == "-") {
        enclose::write_report(std::cout, format, f.config, result);
    } else {
        std::ofstream out(f.output);
        if (!out) {
            throw std::runtime_error("cannot open output file " + f.output);
        }
        enclose::write_report(out, format, f.config, result);
    }
    return exit_code(result);
}

int reproduce_command(const std::string& suite_name, RunFlags& f)
{
    finish_config(f);
    const auto rows = enclose::suite_rows(enclose::parse_suite(suite_name));
    bool all = true;
    std::cout << std::left << std::setw(12) << "function" << std::right << std::setw(5) << "n" << std::setw(4)
              << "p" << std::setw(10) << "iter_exp" << std::setw(10) << "iter_obs" << std::setw(9) << "reg_exp"
              << std::setw(9) << "reg_obs" << std::setw(8) << "x*" << std::setw(10) << "time_s" << "  status\n";
    for (const auto& row : rows) {
        enclose::SolverConfig config = f.config;
        config.objective = row.function;
        config.n = row.n;
        config.scheme.dims_per_iter = row.dims_per_iter;
        enclose::Solver solver(config);
        const auto outcome = enclose::evaluate_row(row, config, solver.run());
        all = all && outcome.passed;
        std::ostringstream time;
        time << std::fixed << std::setprecision(2) << outcome.result.wall_time_s;
        std::cout << std::left << std::setw(12) << row.function << std::right << std::setw(5) << row.n
                  << std::setw(4) << row.dims_per_iter << std::setw(10) << row.expected_iterations << std::setw(10)
                  << outcome.result.iterations << std::setw(9) << row.expected_regions << std::setw(9)
                  << outcome.result.regions.size() << std::setw(8) << (outcome.contains_minimizer ? "yes" : "no")
                  << std::setw(10) << time.str() << "  " << (outcome.passed ? "pass" : "FAIL") << std::endl;
    }
    return all ? exit_ok : exit_failed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rigorous interval branch-and-bound global minimizer"};
    app.require_subcommand(1);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "minimize one benchmark function and write a report");
    run->add_option("--function,-f", run_flags.config.objective, "benchmark name")
        ->required()
        ->transform(CLI::IsMember(function_names(), CLI::ignore_case));
    run->add_option("--n", run_flags.config.n, "dimension")->check(CLI::PositiveNumber);
    add_solver_flags(*run, run_flags);
    run->add_option("--output,-o", run_flags.output, "report path (stdout when omitted)");
    run->add_option("--format", run_flags.format, "report format")->check(CLI::IsMember({"json", "csv"}));

    RunFlags suite_flags;
    std::string suite = "n50";
    auto* reproduce = app.add_subcommand("reproduce", "run a benchmark suite and compare with expected counts");
    reproduce->add_option("--suite", suite, "n50 or fast")->check(CLI::IsMember({"n50", "fast"}));
    reproduce->add_option("--threads", suite_flags.config.threads, "worker threads")->check(CLI::PositiveNumber);
    reproduce->add_option("--sampling", suite_flags.sampling, "diagonal sampling scope")
        ->check(CLI::IsMember({"selected", "per-subregion"}));
    reproduce->add_flag("--debug-soundness", suite_flags.config.debug_soundness,
                        "track the known minimizer and flag any loss");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*run) {
            return run_command(run_flags);
        }
        return reproduce_command(suite, suite_flags);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
}
